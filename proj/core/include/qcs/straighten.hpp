#pragma once

#include "qcs/beltrami.hpp"
#include "qcs/model_map.hpp"

namespace qcs {

// Composition E = F o psi^{-1}: approximately holomorphic where the solve
// converged (exact holomorphy is cut off by the coefficient taper).
LogPolar eval_E(const Tiling& t, const QcSolution& sol, Complex z);

struct DbarStats {
  double median_dbar_E = 0;
  double median_dbar_F = 0;
  double improvement = 0;  // median |dbar F| / median |dbar E|
  long samples = 0;
};

// Central finite-difference Wirtinger dbar of E and of F over the window
// interior; points whose stencil leaves the model or the solved window are
// skipped.
DbarStats dbar_improvement(const Tiling& t, const QcSolution& sol,
                           const Rect& window, int nx, int ny);

}  // namespace qcs
