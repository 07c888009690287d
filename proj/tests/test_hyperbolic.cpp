#include <cmath>

#include "doctest.h"
#include "qcs/halton.hpp"
#include "qcs/hyperbolic.hpp"

using namespace qcs;

TEST_CASE("elliptic integrals against classical values") {
  // K(0) = pi/2, K(1/2) = Gamma(1/4)^2 / (4 sqrt(pi))
  CHECK(std::abs(elliptic_K({0, 0}) - Complex(kPi / 2, 0)) < 1e-14);
  double K_half = 1.8540746773013719;  // lemniscatic value
  CHECK(std::abs(elliptic_K({0.5, 0}) - Complex(K_half, 0)) < 1e-12);
  // E(0) = pi/2, E(1) = 1
  CHECK(std::abs(elliptic_E({0, 0}) - Complex(kPi / 2, 0)) < 1e-14);
  // Legendre relation at m = 1/2:  E K' + E' K - K K' = pi/2 with m' = 1/2
  Complex K = elliptic_K({0.5, 0}), E = elliptic_E({0.5, 0});
  CHECK(std::abs(2.0 * E * K - K * K - Complex(kPi / 2, 0)) < 1e-12);
}

TEST_CASE("modular lambda inversion") {
  // lambda(i) = 1/2
  Complex tau = modular_lambda_inverse({0.5, 0});
  CHECK(std::abs(tau - Complex(0, 1)) < 1e-12);
  CHECK(std::abs(modular_lambda(tau) - Complex(0.5, 0)) < 1e-12);
  // round trip on a spread of points (inside the reduced region)
  for (Complex z : {Complex{0.3, 0.1}, Complex{0.2, -0.3}, Complex{-0.4, 0.2},
                    Complex{0.45, 0.0}}) {
    Complex t2 = modular_lambda_inverse(z);
    CHECK(t2.imag() > 0);
    CHECK(std::abs(modular_lambda(t2) - z) < 1e-10);
  }
}

TEST_CASE("density invariances and two-method agreement") {
  // z -> 1-z and z -> 1/z induce isometries permuting the punctures; the
  // density transforms with the derivative of the move: rho(w(z))|w'(z)| =
  // rho(z).  For the anharmonic triple {2, -1, 1/2} this gives
  // rho(2) = rho(-1) and rho(1/2) = 4 rho(2).
  double r2 = density_X({2, 0});
  CHECK(density_X({-1, 0}) == doctest::Approx(r2).epsilon(1e-8));
  CHECK(density_X({0.5, 0}) == doctest::Approx(4.0 * r2).epsilon(1e-8));
  // general pullback identity on scattered points
  for (Complex z : {Complex{2.3, 0.7}, Complex{-1.4, 0.5}, Complex{0.3, 0.25}}) {
    Complex w = 1.0 / z;
    CHECK(density_X(w) / std::norm(z) == doctest::Approx(density_X(z)).epsilon(1e-8));
    CHECK(density_X(1.0 - z) == doctest::Approx(density_X(z)).epsilon(1e-8));
  }
  // reflection
  Complex z0{0.7, 0.4};
  CHECK(density_X(std::conj(z0)) == doctest::Approx(density_X(z0)).epsilon(1e-10));
  // two independent derivative routes agree on 100 points
  int agreed = 0;
  for (int k = 0; k < 140 && agreed < 100; ++k) {
    Complex z = halton_point(k, Rect{-2.5, 3.0, -2.0, 2.0});
    if (std::abs(z) < 0.05 || std::abs(z - Complex(1, 0)) < 0.05) continue;
    double a = density_X_qseries(z);
    double b = density_X_kderiv(z);
    CHECK(a == doctest::Approx(b).epsilon(1e-8));
    ++agreed;
  }
  CHECK(agreed >= 100);
  // puncture guard
  CHECK_THROWS_AS(density_X({1e-14, 0}), std::domain_error);
}

TEST_CASE("far-field asymptotics bracket") {
  // cusp asymptotics: rho ~ 1/(|z| log |z|), the product drifts up to 1
  for (double tt : {1e3, 1e6}) {
    double v = density_X({-tt, 0}) * tt * std::log(tt);
    CHECK(v > 0.6);
    CHECK(v < 1.05);
  }
}

TEST_CASE("hyperbolic length: stability and monotonicity") {
  Complex seg1[2] = {{-2, 0}, {-1.0 - 1e-9, 0}};
  double l1 = hyp_length(std::span<const Complex>(seg1, 2));
  CHECK(l1 > 0);
  // refinement stability: evaluating with an inserted midpoint changes
  // nothing beyond the quadrature tolerance
  Complex seg1b[3] = {{-2, 0}, {-1.5, 0}, {-1.0 - 1e-9, 0}};
  double l1b = hyp_length(std::span<const Complex>(seg1b, 3));
  CHECK(l1b == doctest::Approx(l1).epsilon(2e-6));
  Complex seg2[2] = {{-4, 0}, {-1.0 - 1e-9, 0}};
  double l2 = hyp_length(std::span<const Complex>(seg2, 2));
  CHECK(l2 > l1);
  // reflected curve has the same length
  Complex seg3[2] = {{-2, 0.5}, {-1.2, 0.8}};
  Complex seg3c[2] = {{-2, -0.5}, {-1.2, -0.8}};
  CHECK(hyp_length(std::span<const Complex>(seg3, 2)) ==
        doctest::Approx(hyp_length(std::span<const Complex>(seg3c, 2))).epsilon(1e-9));
  CHECK_THROWS_AS(hyp_length(std::span<const Complex>(seg3, 1)), std::invalid_argument);
}

namespace {
// inverse-branch machinery for the square-map double
Complex sqrt_branch_near(Complex prev, Complex target) {
  Complex r = std::sqrt(target);
  return std::abs(r - prev) <= std::abs(-r - prev) ? r : -r;
}
Complex sqrt_seed(int, Complex target) {
  Complex r = std::sqrt(target);
  return r.imag() >= 0 ? r : -r;  // branch attached in the upper half plane
}
}  // namespace

TEST_CASE("contraction witness for the square-map double") {
  // n = 0 is the segment itself
  ContractionWitness w0 = contraction_witness(sqrt_branch_near, sqrt_seed, 4.0, 0);
  CHECK(w0.euclid_diam == doctest::Approx(3.0).epsilon(1e-12));
  double base_len = w0.hyp_len;

  // pullbacks contract the hyperbolic length (Schwarz-Pick) and the diameter
  double prev_len = base_len;
  double first_small = 0;
  for (int n = 1; n <= 4; ++n) {
    ContractionWitness w = contraction_witness(sqrt_branch_near, sqrt_seed, 4.0, n);
    CHECK(w.hyp_len <= prev_len + 1e-5);
    CHECK(w.hyp_len <= base_len + 1e-5);
    prev_len = w.hyp_len;
    if (first_small == 0 && w.euclid_diam < 1.0) first_small = n;
    // the stage-n curve is attached to the circle at e^{i pi / 2^n}
    Complex anchor = std::polar(1.0, kPi / std::pow(2.0, n));
    CHECK(std::abs(w.curve.back() - anchor) < 1e-9);
  }
  // frozen regression: first n with diam < 1 for L = 4 is n = 2
  CHECK(first_small == 2);
  ContractionWitness w1 = contraction_witness(sqrt_branch_near, sqrt_seed, 4.0, 1);
  CHECK(w1.euclid_diam == doctest::Approx(1.0).epsilon(1e-6));  // i[1,2]
  ContractionWitness w2 = contraction_witness(sqrt_branch_near, sqrt_seed, 4.0, 2);
  CHECK(w2.euclid_diam < 1.0);
  CHECK(w2.euclid_diam == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-3));
}
