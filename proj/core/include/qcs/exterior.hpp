#pragma once

#include <span>
#include <vector>

#include "qcs/types.hpp"

namespace qcs {

// Conformal map of the exterior of the unit circle onto the exterior of a
// Jordan curve star-shaped about 0, fixing infinity, normalized so that the
// boundary point at angle 0 is the curve point on the positive direction of
// the input's angle origin (for curves through 1, eta(1) = 1).  Computed by
// the conjugate-function (Theodorsen) iteration on uniform boundary samples.
struct BoundaryCorrespondence {
  int n = 0;
  std::vector<double> phi;     // phi(theta_k), theta_k = 2 pi k / n
  std::vector<Complex> point;  // eta(e^{i theta_k})
  std::vector<Complex> c;      // Laurent coefficients of log(Phi(w)/w)
  int iterations = 0;
  double final_delta = 0;

  Complex boundary(double theta) const;   // periodic linear interpolation
  Complex exterior(Complex w) const;      // |w| >= 1, truncated Laurent series
  double symmetry_defect() const;         // sup |conj eta(conj) - eta|
};

// curve: ordered CCW samples (>= 256), star-shaped about 0; throws
// std::invalid_argument with the measured eccentricity when the angular
// parametrization is not monotone, std::runtime_error on divergence.
BoundaryCorrespondence exterior_map(std::span<const Complex> curve, int n_out = 1024,
                                    int max_iter = 200, double tol = 1e-13);

}  // namespace qcs
