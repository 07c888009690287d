#pragma once

#include <array>
#include <string>

#include "qcs/grid.hpp"
#include "qcs/model_map.hpp"
#include "qcs/tiling.hpp"

namespace qcs {

// Beltrami coefficient mu_F = dbar F / d F, computed in the natural chart of
// each tile piece and transported back; zero on the disk, |mu| < 1 with a
// diameter-independent bound elsewhere.

struct MuValue {
  Complex mu;
  std::uint8_t clazz = gridmask::kOutside;
  bool on_boundary = false;  // one-sided value returned
};

MuValue mu_analytic(const Tiling& t, Complex z);

// Central-difference Wirtinger oracle; throws if the stencil crosses a tile
// piece boundary.
Complex finite_difference_mu(const Tiling& t, Complex z, double step);

ComplexGrid mu_grid(const Tiling& t, const Rect& window, int nx, int ny);

struct DilatationStats {
  double max_abs = 0;
  double K = 1;
  // indexed by gridmask class (disk..special)
  std::array<double, 5> class_max{};
  long samples = 0;
  std::string to_json() const;
};

DilatationStats dilatation_stats(const ComplexGrid& mu);
DilatationStats dilatation_stats(const Tiling& t, const Rect& window, int nx, int ny);

// closed-form diamond-class maximum: attained in the vertex direction
double diamond_mu_max();

}  // namespace qcs
