#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "qcs/circle_renorm.hpp"

using namespace qcs;

TEST_CASE("squaring model conjugacy is the identity") {
  ConjugacyTable tbl = circle_conjugacy(squaring_model(), 24, 512);
  for (int k = 0; k < tbl.n; ++k)
    CHECK(std::abs(tbl.h[k] - tbl.theta[k]) < 1e-10);
  CHECK(tbl.residual < 1e-10);
}

TEST_CASE("perturbed test map: residual and quasi-symmetry") {
  CircleMapModel m = perturbed_model();
  ConjugacyTable tbl = circle_conjugacy(m, 24, 2048);
  CHECK(tbl.residual <= 1e-6);
  // monotone
  for (int k = 0; k + 1 < tbl.n; ++k) CHECK(tbl.h[k] < tbl.h[k + 1] + 1e-15);
  // symmetric about the real axis: h(2pi - t) = 2pi - h(t)
  for (int k = 1; k < tbl.n / 2; k += 17) {
    double a = tbl.h[k], b = tbl.h[tbl.n - k];
    CHECK(std::abs((kTwoPi - b) - a) < 1e-6);
  }
  CHECK(tbl.qs_M > 1.0);
  CHECK(tbl.qs_M < 50.0);
  // residual decreases with depth; M stable within 5 percent
  ConjugacyTable deeper = circle_conjugacy(m, 28, 2048);
  CHECK(deeper.residual <= tbl.residual + 1e-12);
  CHECK(std::abs(deeper.qs_M - tbl.qs_M) / tbl.qs_M < 0.05);
}

TEST_CASE("real-axis grid of the extension lemma") {
  // lambda = 4: h(0.75) = 0.5, h(0.9375) = 0.75
  CHECK(real_axis_grid(4.0, 0.75) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(real_axis_grid(4.0, 0.9375) == doctest::Approx(0.75).epsilon(1e-15));
  // oddness
  CHECK(real_axis_grid(4.0, -0.75) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(real_axis_grid(4.0, 0.0) == 0.0);
  // lambda = 2: identity on the grid points
  for (int k = 1; k <= 8; ++k) {
    double x = 1.0 - std::pow(2.0, -k);
    CHECK(real_axis_grid(2.0, x) == doctest::Approx(x).epsilon(1e-14));
  }
  CHECK(real_axis_grid(2.0, 1.0) == 1.0);
  CHECK_THROWS_AS(real_axis_grid(0.5, 0.1), std::invalid_argument);
}

TEST_CASE("half-disk Riemann map normalization") {
  CHECK(std::abs(halfdisk_map({0, 0}) - Complex(0, -1)) < 1e-15);
  CHECK(std::abs(halfdisk_map({-1, 0}) - Complex(-1, 0)) < 1e-15);
  CHECK(std::abs(halfdisk_map({1, 0}) - Complex(1, 0)) < 1e-15);
  // conformal into the disk
  for (Complex z : {Complex{0, 0.5}, Complex{0.3, 0.4}, Complex{-0.5, 0.2}}) {
    Complex w = halfdisk_map(z);
    CHECK(std::abs(w) < 1.0);
    CHECK(std::abs(halfdisk_map_inverse(w) - z) < 1e-12);
  }
  // boundary goes to boundary
  CHECK(std::abs(std::abs(halfdisk_map({0.5, 0.0})) - 1.0) < 1e-13);
  CHECK(std::abs(std::abs(halfdisk_map(std::polar(1.0, 0.7))) - 1.0) < 1e-13);
}

TEST_CASE("identity boundary extends to the identity") {
  DiskExtension H([](double th) { return th; }, [](double x) { return x; });
  CHECK(std::abs(H.eval({0, 0})) < 1e-9);
  for (Complex z : {Complex{0.3, 0.4}, Complex{-0.2, 0.6}, Complex{0.5, -0.5},
                    Complex{0.0, 0.9}, Complex{0.7, 0.0}}) {
    CHECK(std::abs(H.eval(z) - z) < 1e-9);
  }
}

TEST_CASE("lambda-grid boundary extension is a homeomorphism") {
  DiskExtension H([](double th) { return th; },
                  [](double x) { return real_axis_grid(4.0, x); });
  // H(0) = 0 exactly by the Mobius correction
  CHECK(std::abs(H.eval({0, 0})) < 1e-12);
  // symmetric
  Complex a = H.eval({0.3, 0.4});
  Complex b = H.eval({0.3, -0.4});
  CHECK(std::abs(a - std::conj(b)) < 1e-12);
  // positive Jacobian on a 100 x 100 polar mesh
  const double hstep = 1e-5;
  long bad = 0, tested = 0;
  for (int ir = 1; ir <= 100; ++ir)
    for (int ia = 0; ia < 100; ++ia) {
      Complex z = std::polar(ir / 102.0, kTwoPi * ia / 100);
      if (std::abs(z.imag()) < 3 * hstep) continue;  // stencil must not cross the axis
      Complex fx = (H.eval(z + hstep) - H.eval(z - hstep)) / (2 * hstep);
      Complex fy = (H.eval(z + Complex(0, hstep)) - H.eval(z - Complex(0, hstep))) / (2 * hstep);
      Complex fz = (fx - Complex(0, 1) * fy) / 2.0;
      Complex fzb = (fx + Complex(0, 1) * fy) / 2.0;
      ++tested;
      if (std::norm(fz) - std::norm(fzb) <= 0) ++bad;
    }
  CHECK(tested > 9000);
  CHECK(bad == 0);
  // boundary values match the inputs
  CHECK(std::abs(H.eval({0.75, 0.0}).real() - 0.5) < 1e-9);
  CHECK(std::abs(H.eval(std::polar(1.0, 1.1)) - std::polar(1.0, 1.1)) < 1e-9);
}

TEST_CASE("renormalized assembly with the square-map double") {
  DiskExtension H([](double th) { return th; }, [](double x) { return x; });
  GhatAssembly G;
  G.G_exterior = [](Complex z) { return z * z; };
  G.H = &H;
  CHECK(std::abs(G.eval({0, 0})) < 1e-9);
  for (Complex z : {Complex{0.5, 0.2}, Complex{1.5, 0.3}, Complex{-0.4, 0.3}}) {
    CHECK(std::abs(G.eval(z) - z * z) < 1e-7);
  }
  // two-sided continuity across the circle
  for (int k = 1; k < 8; ++k) {
    double th = 0.7 * k;
    Complex zin = std::polar(1.0 - 1e-6, th);
    Complex zout = std::polar(1.0 + 1e-6, th);
    CHECK(std::abs(G.eval(zin) - G.eval(zout)) < 1e-4);
  }
}

TEST_CASE("conjugacy table serializes to csv") {
  ConjugacyTable tbl = circle_conjugacy(squaring_model(), 12, 64);
  std::string csv = tbl.to_csv();
  CHECK(csv.rfind("theta,h\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 65);
}
