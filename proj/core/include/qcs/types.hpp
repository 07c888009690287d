#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace qcs {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;
inline const double kSqrt2 = std::sqrt(2.0);

// Value of the model map in (log-modulus, argument) form.  Along a strip at
// height y the modulus grows like exp(pi*y/2), which overflows doubles near
// y ~ 465, so conversion to a plain complex is an explicit, checked step.
struct LogPolar {
  double log_mod = 0.0;  // -inf encodes an exact zero
  double arg = 0.0;      // radians, winding not normalized

  static LogPolar zero() {
    return {-std::numeric_limits<double>::infinity(), 0.0};
  }
  static LogPolar from_complex(Complex w) {
    if (w == Complex(0.0, 0.0)) return zero();
    return {std::log(std::abs(w)), std::arg(w)};
  }
  bool is_zero() const { return std::isinf(log_mod) && log_mod < 0; }
  double modulus() const { return is_zero() ? 0.0 : std::exp(log_mod); }

  // Safe well below the double overflow threshold (log DBL_MAX ~ 709.78).
  static constexpr double kOverflowLogMod = 700.0;
  bool representable() const { return is_zero() || log_mod < kOverflowLogMod; }
  Complex to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    if (!representable())
      throw std::overflow_error("LogPolar::to_complex: log-modulus " +
                                std::to_string(log_mod) + " exceeds range");
    return std::polar(std::exp(log_mod), arg);
  }
};

// Distance in the log-polar metric: |d log r| + |d arg| with the argument
// difference wrapped to (-pi, pi].  Zero values compare by modulus only.
inline double logpolar_dist(const LogPolar& a, const LogPolar& b) {
  if (a.is_zero() || b.is_zero()) return std::abs(a.modulus() - b.modulus());
  double da = std::remainder(a.arg - b.arg, kTwoPi);
  return std::abs(a.log_mod - b.log_mod) + std::abs(da);
}

inline double chordal_distance(Complex a, Complex b) {
  return 2.0 * std::abs(a - b) /
         std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

struct Rect {
  double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  bool contains(Complex z) const {
    return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
  }
};

}  // namespace qcs
