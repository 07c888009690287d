#include <cmath>

#include "doctest.h"
#include "qcs/beltrami.hpp"
#include "qcs/exterior.hpp"
#include "qcs/straighten.hpp"

using namespace qcs;

TEST_CASE("beurling transform basics") {
  Rect w{-4, 4, -4, 4};
  const int n = 128;
  SUBCASE("zero maps to zero") {
    ComplexGrid g = ComplexGrid::make(w, n, n);
    singular_transform(g);
    for (const Complex& c : g.v) CHECK(std::abs(c) == 0.0);
  }
  SUBCASE("single mode is scaled by its unit-modulus multiplier") {
    ComplexGrid g = ComplexGrid::make(w, n, n);
    // mode (k1, k2) = (3, 2): multiplier ((k1 - i k2)/(k1 + i k2)) ... unit
    const double kx = kTwoPi * 3 / w.width(), ky = kTwoPi * 2 / w.height();
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        Complex z = g.node(ix, iy);
        g.at(ix, iy) = std::exp(Complex(0, kx * z.real() + ky * z.imag()));
      }
    singular_transform(g);
    Complex mult = Complex(kx, -ky) * Complex(kx, -ky) / (kx * kx + ky * ky);
    CHECK(std::abs(std::abs(mult) - 1.0) < 1e-14);
    for (int iy = 0; iy < n; iy += 13)
      for (int ix = 0; ix < n; ix += 7) {
        Complex z = g.node(ix, iy);
        Complex expect = mult * std::exp(Complex(0, kx * z.real() + ky * z.imag()));
        CHECK(std::abs(g.at(ix, iy) - expect) < 1e-10);
      }
  }
  SUBCASE("isometric on mean-zero grids") {
    ComplexGrid g = ComplexGrid::make(w, n, n);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        Complex z = g.node(ix, iy);
        g.at(ix, iy) = std::exp(-std::norm(z)) * Complex(z.real(), -0.3 * z.imag());
      }
    // remove the mean
    Complex mean{0, 0};
    for (const Complex& c : g.v) mean += c;
    mean /= double(g.v.size());
    for (Complex& c : g.v) c -= mean;
    double n2_before = 0;
    for (const Complex& c : g.v) n2_before += std::norm(c);
    singular_transform(g);
    double n2_after = 0;
    for (const Complex& c : g.v) n2_after += std::norm(c);
    CHECK(std::sqrt(n2_after) == doctest::Approx(std::sqrt(n2_before)).epsilon(1e-10));
  }
}

TEST_CASE("identity coefficient gives the identity map") {
  SolverConfig cfg;
  cfg.nx = cfg.ny = 128;
  cfg.window = {-4, 4, -4, 4};
  ComplexGrid mu = ComplexGrid::make(cfg.window, cfg.nx, cfg.ny);
  QcSolution sol = solve_mrmt(mu, cfg);
  CHECK(sol.residual_sup == 0.0);
  CHECK(sol.iterations <= 2);
  for (int iy = 8; iy < 120; iy += 11)
    for (int ix = 8; ix < 120; ix += 13) {
      Complex z = sol.psi.node(ix, iy);
      CHECK(std::abs(sol.psi.at(ix, iy) - z) < 1e-12);
    }
  CHECK(std::abs(sol.invert({0.25, 0.5}) - Complex(0.25, 0.5)) < 1e-8);
}

TEST_CASE("constant coefficient recovers the affine stretch") {
  SolverConfig cfg;
  cfg.nx = cfg.ny = 1024;
  cfg.window = {-8, 8, -8, 8};
  ComplexGrid mu = ComplexGrid::make(cfg.window, cfg.nx, cfg.ny);
  for (Complex& c : mu.v) c = {0.3, 0.0};
  QcSolution sol = solve_mrmt(mu, cfg);
  // exact normalized solution: (z + 0.3 conj z)/1.3
  double worst = 0;
  for (int iy = 0; iy < cfg.ny; iy += 5)
    for (int ix = 0; ix < cfg.nx; ix += 5) {
      Complex z = sol.psi.node(ix, iy);
      if (std::abs(z.real()) > 4.0 || std::abs(z.imag()) > 4.0) continue;  // half window
      Complex exact = (z + 0.3 * std::conj(z)) / 1.3;
      worst = std::max(worst, std::abs(sol.psi.at(ix, iy) - exact) /
                                  std::max(1.0, std::abs(exact)));
    }
  CHECK(worst <= 1e-2);
  // normalization is exact at the anchors
  CHECK(std::abs(sol.eval({1, 0}) - Complex(1, 0)) < 1e-13);
  CHECK(std::abs(sol.eval({-1, 0}) - Complex(-1, 0)) < 1e-13);
  // residual of the discrete fixed point
  CHECK(sol.residual_sup < cfg.tol * 10);
  // positive Jacobian on interior cells
  for (int iy = 64; iy < 960; iy += 37)
    for (int ix = 64; ix < 960; ix += 41)
      CHECK(sol.jacobian(sol.psi.node(ix, iy)) > 0.0);
  // inversion round trip on the interpolated map
  for (Complex z0 : {Complex{0.4, 0.7}, Complex{-1.7, 2.1}, Complex{2.5, -1.2}}) {
    Complex w = sol.eval(z0);
    CHECK(std::abs(sol.invert(w) - z0) < 1e-6);
  }
}

TEST_CASE("radial stretch z|z|") {
  SolverConfig cfg;
  cfg.nx = cfg.ny = 1024;
  cfg.window = {-6, 6, -6, 6};
  ComplexGrid mu = ComplexGrid::make(cfg.window, cfg.nx, cfg.ny);
  for (int iy = 0; iy < cfg.ny; ++iy)
    for (int ix = 0; ix < cfg.nx; ++ix) {
      Complex z = mu.node(ix, iy);
      mu.at(ix, iy) = z == Complex(0, 0) ? Complex(0, 0)
                                         : Complex(1.0 / 3.0, 0) * z / std::conj(z);
    }
  QcSolution sol = solve_mrmt(mu, cfg);
  // z|z| already fixes -1 and 1
  double worst = 0;
  for (int iy = 0; iy < cfg.ny; iy += 7)
    for (int ix = 0; ix < cfg.nx; ix += 7) {
      Complex z = sol.psi.node(ix, iy);
      if (std::abs(z) > 2.0 || std::abs(z) < 0.2) continue;
      Complex exact = z * std::abs(z);
      worst = std::max(worst,
                       std::abs(sol.psi.at(ix, iy) - exact) / std::abs(exact));
    }
  CHECK(worst <= 3e-2);
}

TEST_CASE("solver guards") {
  SolverConfig cfg;
  cfg.nx = cfg.ny = 64;
  ComplexGrid mu = ComplexGrid::make(cfg.window, cfg.nx, cfg.ny);
  for (Complex& c : mu.v) c = {0.97, 0.0};
  CHECK_THROWS_AS(solve_mrmt(mu, cfg), std::invalid_argument);
  ComplexGrid bad = ComplexGrid::make(cfg.window, 32, 32);
  CHECK_THROWS_AS(solve_mrmt(bad, cfg), std::invalid_argument);
}

TEST_CASE("exterior map: circle and ellipse") {
  SUBCASE("unit circle gives the identity correspondence") {
    std::vector<Complex> curve;
    for (int k = 0; k < 1024; ++k) curve.push_back(std::polar(1.0, kTwoPi * k / 1024));
    BoundaryCorrespondence bc = exterior_map(curve);
    for (int k = 0; k < bc.n; k += 17) {
      Complex expect = std::polar(1.0, kTwoPi * k / bc.n);
      CHECK(std::abs(bc.point[k] - expect) < 1e-10);
    }
  }
  SUBCASE("ellipse matches the Joukowski correspondence") {
    // semi-axes 1.05, 0.95: exterior map w + 0.05/w
    std::vector<Complex> curve;
    const int m = 8192;
    for (int k = 0; k < m; ++k) {
      double t = kTwoPi * k / m;
      curve.push_back({1.05 * std::cos(t), 0.95 * std::sin(t)});
    }
    BoundaryCorrespondence bc = exterior_map(curve);
    double worst = 0;
    for (int k = 0; k < bc.n; ++k) {
      double th = kTwoPi * k / bc.n;
      Complex w = std::polar(1.0, th);
      Complex expect = w + 0.05 / w;
      worst = std::max(worst, std::abs(bc.point[k] - expect));
    }
    CHECK(worst <= 1e-4);
    CHECK(bc.symmetry_defect() <= 1e-8);
    // exterior evaluation matches off the circle as well
    Complex w2 = bc.exterior({1.7, 0.4});
    Complex expect2 = Complex(1.7, 0.4) + 0.05 / Complex(1.7, 0.4);
    CHECK(std::abs(w2 - expect2) < 1e-3);
  }
  SUBCASE("non star-shaped input is rejected") {
    std::vector<Complex> curve;
    for (int k = 0; k < 512; ++k) {
      double t = kTwoPi * k / 512;
      // limacon with an inner loop: not star-shaped about 0
      double r = 0.3 + std::cos(t);
      curve.push_back(std::polar(r, t));
    }
    CHECK_THROWS_AS(exterior_map(curve), std::invalid_argument);
  }
}

TEST_CASE("straightening control case: zero coefficient leaves F unchanged") {
  Tiling t = Tiling::build(DiameterSequence::checked({2}));
  SolverConfig cfg;
  cfg.nx = cfg.ny = 256;
  cfg.window = {-8, 6, -7, 7};
  ComplexGrid mu = ComplexGrid::make(cfg.window, cfg.nx, cfg.ny);
  QcSolution sol = solve_mrmt(mu, cfg);
  for (Complex z : {Complex{0.3, 0.2}, Complex{-2.0, 0.4}, Complex{1.5, 0.8}}) {
    LogPolar e = eval_E(t, sol, z);
    LogPolar f = eval_F(t, z);
    CHECK(logpolar_dist(e, f) < 1e-7);
  }
}
