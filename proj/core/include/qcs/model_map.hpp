#pragma once

#include <span>
#include <vector>

#include "qcs/tiling.hpp"
#include "qcs/types.hpp"

namespace qcs {

// Quasiregular model map F: square map on the disk, degree-d_n radial/angular
// covering on each diamond, sigma/tau composed with the strip charts on the
// half strips, mirrored across the real axis.

struct OutsideModelError : std::domain_error {
  explicit OutsideModelError(Complex z)
      : std::domain_error("point (" + std::to_string(z.real()) + ", " +
                          std::to_string(z.imag()) +
                          ") lies outside the truncated model") {}
};

// Diamond boundary data: R_n(theta) from the center, boundary angle map
// xi_n(theta) = (pi/sqrt2) * arclength from the right vertex, counterclockwise.
struct BoundaryAngle {
  double R = 0, xi = 0;
  double R_prime = 0, xi_prime = 0;  // one-sided at the vertex angles
};
BoundaryAngle boundary_angle(const Tiling& t, int n, double theta);

LogPolar eval_F(const Tiling& t, Complex z);

// Chart of strip j onto S = (-1,1) x (0,inf); right corner to +1, left to -1.
Complex strip_chart(const Tiling& t, int j, Complex z);

struct CriticalPoint {
  Complex point;
  int local_degree = 0;
  Complex image;
};
struct CriticalPointList {
  std::vector<CriticalPoint> centers;   // one per diamond, degree d_n, image 0
  std::vector<CriticalPoint> vertices;  // N+1 real vertices, degree 2, image 1
};
CriticalPointList critical_points(const Tiling& t);

// Max log-polar gap over pairs straddling every internal boundary at offset
// delta along the normal.
struct ContinuityReport {
  double max_gap = 0;
  Complex worst_point;
  long pairs = 0;
};
ContinuityReport continuity_check(const Tiling& t, int sample_count,
                                  double delta = 1e-7);

// Total argument increase of F - about along the sampled closed curve over
// 2 pi.  Subdivides chords when the argument step is too coarse; throws
// std::runtime_error on continuation failure instead of rounding.
double winding_degree(const Tiling& t, std::span<const Complex> curve,
                      Complex about);

// Explicit in-model bound: sup |F| over |z| <= r is at most B(r).
double bound_on_disk(const Tiling& t, double r);

inline LogPolar sigma_log(Complex w) {
  return LogPolar{kPi * w.imag() / 2.0, kPi * (1.0 - w.real()) / 2.0};
}
inline LogPolar tau_log(Complex w) {
  LogPolar v = sigma_log(w);
  v.arg += kPi;
  return v;
}

}  // namespace qcs
