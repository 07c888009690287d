#include "qcs/beltrami.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace qcs {

namespace {

// FFTW plans are created with FFTW_ESTIMATE only: plan selection is then
// deterministic, so repeated runs are bit-identical.
std::mutex g_fftw_mutex;

struct Fft2 {
  int nx, ny;
  fftw_complex* buf;
  fftw_plan fwd, bwd;

  Fft2(int nx_, int ny_) : nx(nx_), ny(ny_) {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    buf = fftw_alloc_complex(static_cast<std::size_t>(nx) * ny);
    // row-major iy*nx+ix means ny rows of nx: FFTW dims (n0=ny, n1=nx)
    fwd = fftw_plan_dft_2d(ny, nx, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_2d(ny, nx, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft2() {
    std::lock_guard<std::mutex> lock(g_fftw_mutex);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  Fft2(const Fft2&) = delete;
  Fft2& operator=(const Fft2&) = delete;

  void load(const std::vector<Complex>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      buf[i][0] = v[i].real();
      buf[i][1] = v[i].imag();
    }
  }
  void store(std::vector<Complex>& v) const {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = {buf[i][0], buf[i][1]};
  }

  double freq_x(int ix, double Lx) const {
    int f = ix <= nx / 2 ? ix : ix - nx;
    return kTwoPi * f / Lx;
  }
  double freq_y(int iy, double Ly) const {
    int f = iy <= ny / 2 ? iy : iy - ny;
    return kTwoPi * f / Ly;
  }
};

void apply_multiplier(Fft2& fft, const Rect& w,
                      const std::function<Complex(double, double)>& mult) {
  fftw_execute(fft.fwd);
  const double scale = 1.0 / (static_cast<double>(fft.nx) * fft.ny);
  for (int iy = 0; iy < fft.ny; ++iy) {
    double ky = fft.freq_y(iy, w.height());
    for (int ix = 0; ix < fft.nx; ++ix) {
      double kx = fft.freq_x(ix, w.width());
      Complex m = mult(kx, ky) * scale;
      std::size_t i = static_cast<std::size_t>(iy) * fft.nx + ix;
      Complex c{fft.buf[i][0], fft.buf[i][1]};
      c *= m;
      fft.buf[i][0] = c.real();
      fft.buf[i][1] = c.imag();
    }
  }
  fftw_execute(fft.bwd);
}

Complex beurling_mult(double kx, double ky) {
  double n2 = kx * kx + ky * ky;
  if (n2 == 0.0) return {0, 0};
  Complex kc{kx, -ky};
  return kc * kc / n2;
}

Complex cauchy_mult(double kx, double ky) {
  double n2 = kx * kx + ky * ky;
  if (n2 == 0.0) return {0, 0};
  // T-hat = -2i / (kx + i ky)
  return Complex(0, -2.0) * Complex(kx, -ky) / n2;
}

}  // namespace

double taper_factor(const SolverConfig& cfg, int ix, int iy) {
  auto ramp = [](double d, double band) {
    if (d >= band) return 1.0;
    if (d <= 0) return 0.0;
    return 0.5 * (1.0 - std::cos(kPi * d / band));
  };
  const double bx = std::max(cfg.taper_frac * cfg.window.width(),
                             2.0 * cfg.window.width() / cfg.nx);
  const double by = std::max(cfg.taper_frac * cfg.window.height(),
                             2.0 * cfg.window.height() / cfg.ny);
  double x = cfg.window.x0 + ix * cfg.window.width() / cfg.nx;
  double y = cfg.window.y0 + iy * cfg.window.height() / cfg.ny;
  double dx = std::min(x - cfg.window.x0, cfg.window.x1 - x);
  double dy = std::min(y - cfg.window.y0, cfg.window.y1 - y);
  return ramp(dx, bx) * ramp(dy, by);
}

void singular_transform(ComplexGrid& g) {
  Fft2 fft(g.nx, g.ny);
  fft.load(g.v);
  apply_multiplier(fft, g.window, beurling_mult);
  fft.store(g.v);
}

QcSolution solve_mrmt(const ComplexGrid& mu_in, const SolverConfig& cfg) {
  if (mu_in.nx != cfg.nx || mu_in.ny != cfg.ny)
    throw std::invalid_argument("solve_mrmt: coefficient grid does not match config");
  const std::size_t n = mu_in.v.size();

  // taper the coefficient
  std::vector<Complex> mu(n);
  double mu_sup = 0;
  for (int iy = 0; iy < cfg.ny; ++iy)
    for (int ix = 0; ix < cfg.nx; ++ix) {
      std::size_t i = static_cast<std::size_t>(iy) * cfg.nx + ix;
      mu[i] = mu_in.v[i] * taper_factor(cfg, ix, iy);
      mu_sup = std::max(mu_sup, std::abs(mu[i]));
    }
  if (mu_sup > 0.95)
    throw std::invalid_argument("solve_mrmt: sup|mu| = " + std::to_string(mu_sup) +
                                " exceeds the 0.95 solver radius guard");

  QcSolution sol;
  sol.config = cfg;
  sol.mu_sup = mu_sup;

  Fft2 fft(cfg.nx, cfg.ny);
  std::vector<Complex> h(n, Complex{0, 0}), hn(n), g(n);
  int it = 0;
  double delta = 0;
  for (it = 1; it <= cfg.max_iter; ++it) {
    for (std::size_t i = 0; i < n; ++i) g[i] = mu[i] * (1.0 + h[i]);
    fft.load(g);
    apply_multiplier(fft, cfg.window, beurling_mult);
    fft.store(hn);
    delta = 0;
    for (std::size_t i = 0; i < n; ++i)
      delta = std::max(delta, std::abs(hn[i] - h[i]));
    h.swap(hn);
    if (delta < cfg.tol) break;
  }
  sol.iterations = std::min(it, cfg.max_iter);
  sol.final_delta = delta;
  if (delta >= cfg.tol && mu_sup > 0) {
    // report the contraction estimate rather than silently continuing
    throw std::runtime_error(
        "solve_mrmt: no convergence within cap (sup|mu| = " + std::to_string(mu_sup) +
        ", last gap " + std::to_string(delta) + ")");
  }

  // Commit to psi_zbar = g and psi = z + T[g]; then psi_z = 1 + S[g], and the
  // residual psi_zbar - mu psi_z = g - mu (1 + S[g]) is computable exactly.
  for (std::size_t i = 0; i < n; ++i) g[i] = mu[i] * (1.0 + h[i]);
  std::vector<Complex> sg(n);
  fft.load(g);
  apply_multiplier(fft, cfg.window, beurling_mult);
  fft.store(sg);
  sol.psi_z = ComplexGrid::make(cfg.window, cfg.nx, cfg.ny);
  sol.psi_zbar = ComplexGrid::make(cfg.window, cfg.nx, cfg.ny);
  sol.residual_sup = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sol.psi_z.v[i] = 1.0 + sg[i];
    sol.psi_zbar.v[i] = g[i];
    sol.residual_sup =
        std::max(sol.residual_sup, std::abs(g[i] - mu[i] * (1.0 + sg[i])));
  }

  // psi = z + mean(g) conj(z) + T[g - mean(g)]: the Fourier antiderivative
  // only exists for the mean-zero part, the mean rides on an affine term.
  Complex gmean{0, 0};
  for (const Complex& c : g) gmean += c;
  gmean /= static_cast<double>(n);
  sol.psi = ComplexGrid::make(cfg.window, cfg.nx, cfg.ny);
  fft.load(g);
  apply_multiplier(fft, cfg.window, cauchy_mult);
  fft.store(sol.psi.v);
  for (int iy = 0; iy < cfg.ny; ++iy)
    for (int ix = 0; ix < cfg.nx; ++ix) {
      Complex z = sol.psi.node(ix, iy);
      sol.psi.at(ix, iy) += z + gmean * std::conj(z);
    }

  // affine normalization (exact at the interpolated anchor values)
  Complex z0 = cfg.norm == SolverConfig::Norm::FixPM1 ? Complex(-1, 0) : Complex(0, 0);
  Complex z1{1, 0};
  Complex p0 = sol.psi.interp(z0), p1 = sol.psi.interp(z1);
  Complex a = (z1 - z0) / (p1 - p0);
  Complex b = z0 - a * p0;
  sol.affine_a = a;
  sol.affine_b = b;
  for (auto& c : sol.psi.v) c = a * c + b;
  for (auto& c : sol.psi_z.v) c *= a;
  for (auto& c : sol.psi_zbar.v) c *= a;
  return sol;
}

Complex QcSolution::invert(Complex w) const {
  // initial guess: undo the large-scale affine behaviour
  Complex z = (w - affine_b) / affine_a;
  if (!config.window.contains(z)) z = w;
  const double scale = std::max(config.window.width(), config.window.height());
  const double tol = 1e-8 * scale;
  for (int it = 0; it < 80; ++it) {
    if (!config.window.contains(z)) {
      // clamp back; Newton may overshoot near the collar
      z = {std::clamp(z.real(), config.window.x0, config.window.x1),
           std::clamp(z.imag(), config.window.y0, config.window.y1)};
    }
    Complex r = psi.interp(z) - w;
    if (std::abs(r) < tol) return z;
    Complex fz = psi_z.interp(z), fzb = psi_zbar.interp(z);
    double jac = std::norm(fz) - std::norm(fzb);
    if (jac <= 0) break;
    Complex step = (std::conj(fz) * r - fzb * std::conj(r)) / jac;
    z -= step;
  }
  Complex r = psi.interp(z) - w;
  if (std::abs(r) < 1e-6 * scale) return z;
  throw std::runtime_error("QcSolution::invert: Newton stagnation or target outside image");
}

}  // namespace qcs
