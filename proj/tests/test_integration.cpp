// End-to-end chain: model map -> Beltrami solve -> exterior map of the
// straightened circle -> induced boundary circle map -> itinerary conjugacy
// -> renormalized assembly.

#include <cmath>
#include <vector>

#include "doctest.h"
#include "qcs/circle_renorm.hpp"
#include "qcs/dilatation.hpp"
#include "qcs/exterior.hpp"
#include "qcs/planner.hpp"
#include "qcs/straighten.hpp"

using namespace qcs;

TEST_CASE("straightened boundary map renormalizes") {
  Tiling t = Tiling::build(DiameterSequence::checked({2, 4}));
  SolverConfig cfg;
  cfg.nx = cfg.ny = 512;
  cfg.window = {-12, 6, -9, 9};
  ComplexGrid mu = mu_grid(t, cfg.window, cfg.nx, cfg.ny);
  QcSolution sol = solve_mrmt(mu, cfg);

  // straightened circle and its exterior Riemann map
  std::vector<Complex> curve;
  const int m = 4096;
  for (int k = 0; k < m; ++k) curve.push_back(sol.eval(std::polar(1.0, kTwoPi * k / m)));
  BoundaryCorrespondence eta = exterior_map(curve);
  CHECK(std::abs(eta.boundary(0.0) - Complex(1, 0)) < 1e-3);  // eta(1) = 1
  CHECK(eta.symmetry_defect() < 1e-6);

  // induced circle map G = E o eta on the unit circle: sample its angle lift
  const int n = 1024;
  std::vector<double> lift(n + 1);
  double prev = 0;
  for (int k = 0; k <= n; ++k) {
    double th = kTwoPi * k / n;
    Complex w = eta.boundary(th);
    LogPolar v = eval_E(t, sol, w);
    // the value lies on the unit circle up to solver error
    CHECK(std::abs(v.log_mod) < 0.05);
    double a = v.arg;
    while (a < prev - kPi) a += kTwoPi;
    while (a > prev + kPi) a -= kTwoPi;
    lift[k] = a;
    prev = a;
  }
  double offset = lift[0];
  for (double& a : lift) a -= offset;
  CHECK(std::abs(lift[n] - 2 * kTwoPi) < 1e-3);  // degree 2

  CircleMapModel model;
  model.lift = [lift, n](double th) {
    double p = th / kTwoPi * n;
    double wrap = std::floor(p / n);
    p -= wrap * n;
    int k = std::min(static_cast<int>(p), n - 1);
    double u = p - k;
    return (1 - u) * lift[k] + u * lift[k + 1] + wrap * 2 * kTwoPi;
  };
  // fix theta = 0 exactly (the sampled lift already vanishes there)
  CHECK(model.lift(0.0) == 0.0);
  // expanding: sampled minimal slope of the lift
  double min_slope = 1e300, max_slope = 0;
  for (int k = 0; k < n; ++k) {
    double s = (lift[k + 1] - lift[k]) / (kTwoPi / n);
    min_slope = std::min(min_slope, s);
    max_slope = std::max(max_slope, s);
  }
  CHECK(min_slope > 1.0);
  // the recorded multiplier at the boundary fixed point
  double lambda = 0.5 * ((lift[1] - lift[0]) + (lift[n] - lift[n - 1])) / (kTwoPi / n);
  CHECK(lambda > 1.0);
  MESSAGE("multiplier at 1: ", lambda, ", lift slope range [", min_slope, ", ",
          max_slope, "]");

  // conjugacy to the squaring map; the boundary data carries solver noise,
  // so the residual tolerance here is structural rather than spectral
  ConjugacyTable tbl = circle_conjugacy(model, 16, 512);
  CHECK(tbl.residual < 2e-2);
  for (int k = 0; k + 1 < tbl.n; ++k) CHECK(tbl.h[k] <= tbl.h[k + 1] + 1e-12);

  // renormalized assembly: exterior from the chain, interior through the
  // extension of the boundary data
  DiskExtension H([&tbl](double th) { return tbl.eval(th); },
                  [lambda](double x) { return real_axis_grid(lambda, x); });
  GhatAssembly G;
  G.H = &H;
  G.G_exterior = [&](Complex z) -> Complex {
    return eval_E(t, sol, eta.exterior(z)).to_complex();
  };
  // continuity across the circle at a few angles
  for (double th : {0.9, 2.2, 4.0}) {
    Complex zin = std::polar(1.0 - 1e-4, th);
    Complex zout = std::polar(1.0 + 1e-4, th);
    CHECK(std::abs(G.eval(zin) - G.eval(zout)) < 0.25);
  }
  // interior fixed point of the assembly
  CHECK(std::abs(G.eval({0, 0})) < 1e-6);
}
