#pragma once

#include <functional>
#include <span>
#include <vector>

#include "qcs/types.hpp"

namespace qcs {

// Hyperbolic geometry of the thrice-punctured sphere X = C \ {0,1} in the
// curvature -1 normalization: density through the modular lambda function
// (AGM inversion of the covering, q-series for the derivative), lengths by
// adaptive quadrature, and holomorphic-pullback contraction witnesses.

// complete elliptic integrals with complex parameter m (principal AGM branch)
Complex elliptic_K(Complex m);
Complex elliptic_E(Complex m);

// lambda(tau) by q-series, q = e^{i pi tau}
Complex modular_lambda(Complex tau);

// inverse: tau with lambda(tau) = z (upper half plane), z not in {0,1}
Complex modular_lambda_inverse(Complex z);

// density; method A (q-series derivative) is the default
double density_X(Complex z);
double density_X_qseries(Complex z);
double density_X_kderiv(Complex z);  // independent derivative route

double hyp_length(std::span<const Complex> polyline, double rel_tol = 1e-6);

// One continuation step of a chosen inverse branch: given the previous
// preimage (with f(prev) = previous target) and a nearby target, return the
// preimage of the target on the same branch.
using InverseBranchStep = std::function<Complex(Complex prev, Complex target)>;

struct ContractionWitness {
  std::vector<Complex> curve;
  double euclid_diam = 0;
  double hyp_len = 0;
  int n = 0;
};

// Pulls the segment [-L, -1] back n times along the branch chain anchored by
// `seed` (maps the stage index and the first target to the initial preimage
// guess); throws std::runtime_error with the last valid stage on failure.
ContractionWitness contraction_witness(
    const InverseBranchStep& step,
    const std::function<Complex(int stage, Complex target)>& seed, double L,
    int n, int samples = 257);

}  // namespace qcs
