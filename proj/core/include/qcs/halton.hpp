#pragma once

#include "qcs/types.hpp"

namespace qcs {

// Deterministic low-discrepancy point sets; the verification sweeps need
// reproducible "random" samples with no RNG state anywhere.
inline double radical_inverse(unsigned long long i, unsigned base) {
  double f = 1.0, r = 0.0;
  while (i > 0) {
    f /= base;
    r += f * static_cast<double>(i % base);
    i /= base;
  }
  return r;
}

inline Complex halton_point(unsigned long long i, const Rect& w) {
  double u = radical_inverse(i + 1, 2);
  double v = radical_inverse(i + 1, 3);
  return {w.x0 + u * w.width(), w.y0 + v * w.height()};
}

}  // namespace qcs
