#include "qcs/exterior.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace qcs {

namespace {

std::mutex g_fftw_mutex2;

// Conjugation for boundary values of a function analytic OUTSIDE the circle:
// if u + iv extends to Sum c_m w^{-m} then v = -H_int[u].  Returns v with
// mean 0; u is any real periodic sample vector.
std::vector<double> exterior_conjugate(const std::vector<double>& u) {
  const int n = static_cast<int>(u.size());
  fftw_complex* buf;
  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex2);
    buf = fftw_alloc_complex(n);
    fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  for (int k = 0; k < n; ++k) {
    buf[k][0] = u[k];
    buf[k][1] = 0;
  }
  fftw_execute(fwd);
  // multiply mode m by +i sgn(m) (so that v = -H_int[u])
  for (int k = 0; k < n; ++k) {
    int m = k <= n / 2 ? k : k - n;
    double s = m > 0 ? 1.0 : (m < 0 ? -1.0 : 0.0);
    double re = buf[k][0], im = buf[k][1];
    buf[k][0] = -s * im;
    buf[k][1] = s * re;
  }
  fftw_execute(bwd);
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[k] = buf[k][0] / n;
  {
    std::lock_guard<std::mutex> lock(g_fftw_mutex2);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  return v;
}

}  // namespace

BoundaryCorrespondence exterior_map(std::span<const Complex> curve, int n_out,
                                    int max_iter, double tol) {
  if (curve.size() < 256)
    throw std::invalid_argument("exterior_map: need >= 256 boundary samples");

  // radial parametrization rho(phi): requires a star-shaped curve
  const int m = static_cast<int>(curve.size());
  std::vector<double> ang(m), rad(m);
  double rmin = 1e300, rmax = 0;
  for (int k = 0; k < m; ++k) {
    rad[k] = std::abs(curve[k]);
    if (rad[k] == 0) throw std::invalid_argument("exterior_map: curve through 0");
    ang[k] = std::atan2(curve[k].imag(), curve[k].real());
    rmin = std::min(rmin, rad[k]);
    rmax = std::max(rmax, rad[k]);
  }
  // unwrap and check monotone
  double offset = ang[0];
  std::vector<double> aw(m);
  aw[0] = 0;
  for (int k = 1; k < m; ++k) {
    double d = std::remainder(ang[k] - ang[k - 1], kTwoPi);
    if (d <= 0)
      throw std::invalid_argument(
          "exterior_map: boundary not star-shaped about 0 (eccentricity " +
          std::to_string(rmax / rmin) + ")");
    aw[k] = aw[k - 1] + d;
  }
  if (std::abs(aw[m - 1] + std::remainder(ang[0] - ang[m - 1], kTwoPi) - kTwoPi) > 1e-6)
    throw std::invalid_argument("exterior_map: curve does not wind once about 0");

  // log rho as a periodic PL function of phi (phi measured from the first
  // sample's angle)
  auto log_rho = [&](double phi) {
    double p = std::fmod(phi, kTwoPi);
    if (p < 0) p += kTwoPi;
    // binary search in aw
    int lo = 0, hi = m;  // aw[m] == 2pi implied
    while (hi - lo > 1) {
      int mid = (lo + hi) / 2;
      if (aw[mid] <= p) lo = mid;
      else hi = mid;
    }
    double a0 = aw[lo], a1 = lo + 1 < m ? aw[lo + 1] : kTwoPi;
    double r0 = rad[lo], r1 = rad[(lo + 1) % m];
    double u = (p - a0) / (a1 - a0);
    return (1 - u) * std::log(r0) + u * std::log(r1);
  };

  const int n = n_out;
  BoundaryCorrespondence bc;
  bc.n = n;
  bc.phi.assign(n, 0.0);
  for (int k = 0; k < n; ++k) bc.phi[k] = kTwoPi * k / n;  // start at identity

  std::vector<double> u(n), v(n);
  double delta = 0;
  int it = 0;
  for (it = 1; it <= max_iter; ++it) {
    for (int k = 0; k < n; ++k) u[k] = log_rho(bc.phi[k]);
    v = exterior_conjugate(u);
    delta = 0;
    for (int k = 0; k < n; ++k) {
      double nphi = kTwoPi * k / n + v[k];
      delta = std::max(delta, std::abs(nphi - bc.phi[k]));
      bc.phi[k] = nphi;
    }
    if (delta < tol) break;
  }
  bc.iterations = std::min(it, max_iter);
  bc.final_delta = delta;
  if (delta >= tol)
    throw std::runtime_error("exterior_map: Theodorsen iteration did not converge "
                             "(eccentricity " + std::to_string(rmax / rmin) + ")");

  // boundary points (in the original frame: phi is measured from ang[0])
  bc.point.assign(n, Complex{});
  for (int k = 0; k < n; ++k) {
    double lr = log_rho(bc.phi[k]);
    bc.point[k] = std::polar(std::exp(lr), bc.phi[k] + offset);
  }

  // Laurent coefficients of log(Phi(w)/w) = sum_{j>=0} c_j w^{-j} from the
  // boundary values u + iv
  {
    fftw_complex* buf;
    fftw_plan fwd;
    {
      std::lock_guard<std::mutex> lock(g_fftw_mutex2);
      buf = fftw_alloc_complex(n);
      fwd = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    for (int k = 0; k < n; ++k) {
      u[k] = log_rho(bc.phi[k]);
      buf[k][0] = u[k];
      buf[k][1] = bc.phi[k] - kTwoPi * k / n;
    }
    fftw_execute(fwd);
    int nc = n / 2;
    bc.c.assign(nc, Complex{});
    // boundary value f(theta) = sum_j c_j e^{-i j theta}; with the forward
    // transform X[k] = sum_m f(theta_m) e^{-i 2 pi k m / n} this means
    // c_j = X[(n - j) mod n] / n
    for (int j = 0; j < nc; ++j) {
      int k = (n - j) % n;
      bc.c[j] = Complex{buf[k][0], buf[k][1]} / double(n);
    }
    bc.c[0] = Complex(bc.c[0].real(), 0.0);  // capacity is real
    {
      std::lock_guard<std::mutex> lock(g_fftw_mutex2);
      fftw_destroy_plan(fwd);
      fftw_free(buf);
    }
  }
  // rotate so that theta = 0 maps to the first input sample direction
  // (symmetric inputs already satisfy phi(0) = 0)
  return bc;
}

Complex BoundaryCorrespondence::boundary(double theta) const {
  double p = std::fmod(theta, kTwoPi);
  if (p < 0) p += kTwoPi;
  double f = p / kTwoPi * n;
  int k = static_cast<int>(f) % n;
  double t = f - std::floor(f);
  Complex a = point[k], b = point[(k + 1) % n];
  return (1 - t) * a + t * b;
}

Complex BoundaryCorrespondence::exterior(Complex w) const {
  double aw = std::abs(w);
  if (aw < 1.0 - 1e-12)
    throw std::domain_error("BoundaryCorrespondence::exterior: |w| < 1");
  Complex s{0, 0};
  Complex invw = 1.0 / w;
  Complex p{1, 0};
  for (const Complex& ck : c) {
    s += ck * p;
    p *= invw;
  }
  // frame rotation: boundary() already includes the offset; reproduce it here
  double offset = std::arg(point[0]) - phi[0];
  return std::polar(1.0, offset) * w * std::exp(s);
}

double BoundaryCorrespondence::symmetry_defect() const {
  double d = 0;
  for (int k = 1; k < n / 2; ++k) {
    Complex a = point[k];
    Complex b = point[n - k];
    d = std::max(d, std::abs(std::conj(b) - a));
  }
  return d;
}

}  // namespace qcs
