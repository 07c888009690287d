#include "qcs/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcs {

namespace {

// AGM with the principal ("right") square-root branch choice.
void agm_sequences(Complex a, Complex b, std::vector<Complex>& as,
                   std::vector<Complex>& bs) {
  as = {a};
  bs = {b};
  for (int it = 0; it < 64; ++it) {
    Complex an = 0.5 * (a + b);
    Complex bn = std::sqrt(a * b);
    if (std::abs(an - bn) > std::abs(an + bn)) bn = -bn;
    a = an;
    b = bn;
    as.push_back(a);
    bs.push_back(b);
    if (std::abs(a - b) < 1e-17 * std::abs(a)) break;
  }
}

Complex agm(Complex a, Complex b) {
  std::vector<Complex> as, bs;
  agm_sequences(a, b, as, bs);
  return as.back();
}

}  // namespace

Complex elliptic_K(Complex m) {
  // K(m) = pi / (2 agm(1, sqrt(1-m)))
  return kPi / (2.0 * agm(Complex(1, 0), std::sqrt(Complex(1, 0) - m)));
}

Complex elliptic_E(Complex m) {
  // E = K (1 - sum 2^{n-1} c_n^2), c_n = (a_{n-1}-b_{n-1})/2 ... c_0 = sqrt(m)
  std::vector<Complex> as, bs;
  agm_sequences(Complex(1, 0), std::sqrt(Complex(1, 0) - m), as, bs);
  Complex K = kPi / (2.0 * as.back());
  Complex sum = 0.5 * m;  // 2^{-1} c_0^2 with c_0^2 = m
  double p = 1.0;
  for (std::size_t i = 1; i < as.size(); ++i) {
    Complex c = 0.5 * (as[i - 1] - bs[i - 1]);
    sum += p * c * c;
    p *= 2.0;
  }
  return K * (Complex(1, 0) - sum);
}

Complex modular_lambda(Complex tau) {
  if (tau.imag() <= 0) throw std::domain_error("modular_lambda: Im tau > 0");
  Complex q = std::exp(Complex(0, kPi) * tau);
  // lambda = 16 q prod ((1 + q^{2n}) / (1 + q^{2n-1}))^8
  Complex prod{1, 0};
  Complex qp = q;  // q^n
  for (int n = 1; n <= 64; ++n) {
    Complex q2n = qp * qp;            // q^{2n} when qp = q^n
    Complex q2n1 = q2n / q;           // q^{2n-1}
    Complex f = (1.0 + q2n) / (1.0 + q2n1);
    Complex f2 = f * f, f4 = f2 * f2;
    prod *= f4 * f4;
    qp *= q;
    if (std::abs(q2n) < 1e-40) break;
  }
  return 16.0 * q * prod;
}

Complex modular_lambda_inverse(Complex z) {
  // tau = i K(1-z) / K(z)
  Complex tau = Complex(0, 1) * elliptic_K(Complex(1, 0) - z) / elliptic_K(z);
  if (tau.imag() <= 0)
    throw std::runtime_error("modular_lambda_inverse: inversion left the half plane");
  return tau;
}

namespace {

// derivative of lambda at tau by the q-series of the logarithmic derivative
Complex lambda_deriv_q(Complex tau) {
  Complex q = std::exp(Complex(0, kPi) * tau);
  Complex lam = modular_lambda(tau);
  // d log lambda / d q = 1/q + 8 sum [ 2n q^{2n-1}/(1+q^{2n})
  //                                    - (2n-1) q^{2n-2}/(1+q^{2n-1}) ]
  Complex dlog = 1.0 / q;
  Complex qp{1, 0};  // q^{n-1}
  for (int n = 1; n <= 64; ++n) {
    Complex qn = qp * q;                 // q^n
    Complex q2n = qn * qn;               // q^{2n}
    Complex q2nm1 = q2n / q;             // q^{2n-1}
    Complex q2nm2 = q2nm1 / q;           // q^{2n-2}
    dlog += 8.0 * (2.0 * n * q2nm1 / (1.0 + q2n) -
                   (2.0 * n - 1.0) * q2nm2 / (1.0 + q2nm1));
    qp = qn;
    if (std::abs(q2n) < 1e-40) break;
  }
  // dq/dtau = i pi q
  return lam * dlog * Complex(0, kPi) * q;
}

// derivative through the elliptic-integral inverse: 1 / (dtau/dlambda)
Complex lambda_deriv_K(Complex z) {
  auto dK = [](Complex m) {
    return (elliptic_E(m) - (Complex(1, 0) - m) * elliptic_K(m)) /
           (2.0 * m * (Complex(1, 0) - m));
  };
  Complex Kz = elliptic_K(z), K1z = elliptic_K(Complex(1, 0) - z);
  Complex dtau = Complex(0, 1) * (-dK(Complex(1, 0) - z) * Kz - K1z * dK(z)) / (Kz * Kz);
  return 1.0 / dtau;
}

// Mobius reduction: among the six-element anharmonic orbit pick the value of
// smallest modulus together with the derivative of the move.
void reduce(Complex z, Complex& w, Complex& dwdz) {
  struct Cand {
    Complex w, d;
  };
  Complex one{1, 0};
  Cand cands[6] = {
      {z, one},
      {one - z, -one},
      {one / z, -one / (z * z)},
      {one / (one - z), one / ((one - z) * (one - z))},
      {z / (z - one), -one / ((z - one) * (z - one))},
      {(z - one) / z, one / (z * z)},
  };
  int best = 0;
  for (int k = 1; k < 6; ++k)
    if (std::abs(cands[k].w) < std::abs(cands[best].w)) best = k;
  w = cands[best].w;
  dwdz = cands[best].d;
}

double puncture_guard(Complex z) {
  return std::min(std::abs(z), std::abs(z - Complex(1, 0)));
}

}  // namespace

double density_X_qseries(Complex z) {
  if (puncture_guard(z) < 1e-12)
    throw std::domain_error("density_X: point within 1e-12 of a puncture");
  Complex w, dw;
  reduce(z, w, dw);
  Complex tau = modular_lambda_inverse(w);
  Complex lp = lambda_deriv_q(tau);
  double rho_w = 1.0 / (tau.imag() * std::abs(lp));
  return rho_w * std::abs(dw);
}

double density_X_kderiv(Complex z) {
  if (puncture_guard(z) < 1e-12)
    throw std::domain_error("density_X: point within 1e-12 of a puncture");
  Complex w, dw;
  reduce(z, w, dw);
  Complex tau = modular_lambda_inverse(w);
  Complex lp = lambda_deriv_K(w);
  double rho_w = 1.0 / (tau.imag() * std::abs(lp));
  return rho_w * std::abs(dw);
}

double density_X(Complex z) { return density_X_qseries(z); }

// ---------------------------------------------------------------------------

namespace {

// 16-node Gauss-Legendre on [0,1]
const double kGlT[16] = {
    0.0052995325041750, 0.0277124884633837, 0.0671843988060841,
    0.1222977958224985, 0.1910618777986781, 0.2709916111713863,
    0.3591982246103705, 0.4524937450811813, 0.5475062549188187,
    0.6408017753896295, 0.7290083888286137, 0.8089381222013219,
    0.8777022041775015, 0.9328156011939159, 0.9722875115366163,
    0.9947004674958250};
const double kGlW[16] = {
    0.0135762297058770, 0.0311267619693239, 0.0475792558412464,
    0.0623144856277669, 0.0747979944082884, 0.0845782596975013,
    0.0913017075224618, 0.0947253052275343, 0.0947253052275343,
    0.0913017075224618, 0.0845782596975013, 0.0747979944082884,
    0.0623144856277669, 0.0475792558412464, 0.0311267619693239,
    0.0135762297058770};

double segment_length(Complex a, Complex b) {
  double s = 0;
  for (int k = 0; k < 16; ++k) {
    Complex z = a + kGlT[k] * (b - a);
    s += kGlW[k] * density_X(z);
  }
  return s * std::abs(b - a);
}

double segment_length_adaptive(Complex a, Complex b, double rel_tol, int depth) {
  double whole = segment_length(a, b);
  Complex mid = 0.5 * (a + b);
  double split = segment_length(a, mid) + segment_length(mid, b);
  if (std::abs(split - whole) <= rel_tol * std::abs(split) || depth >= 12)
    return split;
  return segment_length_adaptive(a, mid, rel_tol, depth + 1) +
         segment_length_adaptive(mid, b, rel_tol, depth + 1);
}

}  // namespace

double hyp_length(std::span<const Complex> polyline, double rel_tol) {
  if (polyline.size() < 2) throw std::invalid_argument("hyp_length: need >= 2 points");
  double total = 0;
  for (std::size_t k = 0; k + 1 < polyline.size(); ++k) {
    if (polyline[k] == polyline[k + 1])
      throw std::invalid_argument("hyp_length: repeated consecutive points");
    total += segment_length_adaptive(polyline[k], polyline[k + 1], rel_tol, 0);
  }
  return total;
}

ContractionWitness contraction_witness(
    const InverseBranchStep& step,
    const std::function<Complex(int, Complex)>& seed, double L, int n,
    int samples) {
  if (L <= 1.0) throw std::invalid_argument("contraction_witness: L > 1");
  std::vector<Complex> cur(samples);
  for (int k = 0; k < samples; ++k)
    cur[k] = Complex(-L + (L - 1.0) * k / (samples - 1), 0.0);

  for (int stage = 1; stage <= n; ++stage) {
    std::vector<Complex> next(samples);
    Complex prev = seed(stage, cur[0]);
    next[0] = prev;
    for (int k = 1; k < samples; ++k) {
      Complex target = cur[k];
      Complex guess = step(prev, target);
      // step control: refine along the target chord if the preimage jumps
      if (std::abs(guess - prev) > 0.5) {
        int sub = 16;
        Complex p = prev;
        for (int s2 = 1; s2 <= sub; ++s2) {
          Complex tt = cur[k - 1] + (target - cur[k - 1]) * (double(s2) / sub);
          p = step(p, tt);
        }
        guess = p;
        if (std::abs(guess - prev) > 1.0)
          throw std::runtime_error("contraction_witness: branch continuation failed at stage " +
                                   std::to_string(stage));
      }
      next[k] = guess;
      prev = guess;
    }
    cur.swap(next);
  }

  ContractionWitness w;
  w.n = n;
  w.curve = cur;
  for (int i = 0; i < samples; ++i)
    for (int j = i + 1; j < samples; ++j)
      w.euclid_diam = std::max(w.euclid_diam, std::abs(cur[i] - cur[j]));
  // hyperbolic length: trim exact endpoint duplicates first
  std::vector<Complex> poly;
  for (const Complex& p : cur)
    if (poly.empty() || p != poly.back()) poly.push_back(p);
  w.hyp_len = hyp_length(poly);
  return w;
}

}  // namespace qcs
