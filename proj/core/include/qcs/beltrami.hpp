#pragma once

#include <string>

#include "qcs/grid.hpp"
#include "qcs/types.hpp"

namespace qcs {

// Spectral solution of the Beltrami equation psi_zbar = mu psi_z on a
// periodic window: the coefficient is smoothly tapered to zero near the
// window edge (the principal approximation; errors concentrate in the
// collar), the derivative perturbation is found by the contraction
// h <- S[mu (1 + h)] with S the Fourier-side Beurling transform, and psi is
// reconstructed by the Cauchy antiderivative plus identity.

struct SolverConfig {
  Rect window{-8, 8, -8, 8};
  int nx = 512, ny = 512;
  int max_iter = 240;
  double tol = 1e-11;         // sup-norm gap between iterates
  double taper_frac = 0.08;   // taper band as a fraction of each span
  enum class Norm { FixPM1, Fix01 } norm = Norm::FixPM1;
};

struct QcSolution {
  SolverConfig config;
  ComplexGrid psi;       // psi values at grid nodes (normalized)
  ComplexGrid psi_z;     // spectral derivative grids of the unnormalized map,
  ComplexGrid psi_zbar;  // scaled by the same affine factor
  double residual_sup = 0;    // sup |psi_zbar - mu psi_z| over the grid
  double mu_sup = 0;
  int iterations = 0;
  double final_delta = 0;
  Complex affine_a{1, 0}, affine_b{0, 0};  // psi = a * psi_raw + b

  Complex eval(Complex z) const { return psi.interp(z); }
  Complex deriv_z(Complex z) const { return psi_z.interp(z); }
  Complex deriv_zbar(Complex z) const { return psi_zbar.interp(z); }
  double jacobian(Complex z) const {
    return std::norm(deriv_z(z)) - std::norm(deriv_zbar(z));
  }

  // Newton inversion on the interpolated map; throws on stagnation or when
  // w falls outside the image of the window interior.
  Complex invert(Complex w) const;
};

// Fourier-side Beurling transform: multiplier (kx - i ky)^2 / |k|^2, zero at
// k = 0.  In-place on the grid values; mask ignored.
void singular_transform(ComplexGrid& g);

// Solves with the given coefficient grid (values outside taper are cut).
// Pre: sup |mu| <= 0.95.
QcSolution solve_mrmt(const ComplexGrid& mu, const SolverConfig& cfg);

// Smooth taper factor for node (ix, iy); cosine ramp over the taper band.
double taper_factor(const SolverConfig& cfg, int ix, int iy);

}  // namespace qcs
