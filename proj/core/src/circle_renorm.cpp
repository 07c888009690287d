#include "qcs/circle_renorm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcs {

double CircleMapModel::invert_lift(double target, double lo, double hi) const {
  double flo = lift(lo) - target;
  double fhi = lift(hi) - target;
  if (flo > 0 || fhi < 0)
    throw std::domain_error("invert_lift: target not bracketed");
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    double f = lift(mid) - target;
    if (f <= 0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

void CircleMapModel::validate(int samples) const {
  if (std::abs(lift(0.0)) > 1e-12)
    throw std::invalid_argument("circle model must fix theta = 0");
  if (std::abs(lift(kTwoPi) - lift(0.0) - 2 * kTwoPi) > 1e-9)
    throw std::invalid_argument("circle model lift must have degree 2");
  double h = kTwoPi / samples;
  for (int k = 0; k < samples; ++k) {
    double t = k * h;
    double d = (lift(t + 1e-6) - lift(t)) / 1e-6;
    if (d <= 1.0)
      throw std::invalid_argument("circle model not expanding at theta = " +
                                  std::to_string(t));
  }
}

CircleMapModel squaring_model() {
  CircleMapModel m;
  m.lift = [](double t) { return 2.0 * t; };
  m.sampled_min_derivative = 2.0;
  return m;
}

CircleMapModel perturbed_model() {
  CircleMapModel m;
  m.lift = [](double t) { return 2.0 * t + 0.2 * std::sin(t); };
  m.sampled_min_derivative = 1.8;
  return m;
}

ConjugacyTable circle_conjugacy(const CircleMapModel& model, int depth,
                                int n_samples) {
  model.validate();
  if (depth < 1 || depth > 48) throw std::invalid_argument("conjugacy depth 1..48");

  // partition endpoint: the non-fixed preimage of 0
  const double theta_star = model.invert_lift(kTwoPi, 1e-9, kTwoPi - 1e-9);
  const double kAmbig = 1e-12;

  ConjugacyTable tbl;
  tbl.depth = depth;
  tbl.n = n_samples;
  tbl.theta.resize(n_samples);
  tbl.h.resize(n_samples);

  auto h_of = [&](double th, long& ambig) {
    // itinerary bits
    double t = th;
    std::vector<int> bits(depth);
    for (int k = 0; k < depth; ++k) {
      if (std::abs(t - theta_star) < kAmbig || t < kAmbig || t > kTwoPi - kAmbig)
        ++ambig;  // right-closed convention applies below
      bits[k] = (t < theta_star) ? 0 : 1;
      t = model.map(t);
    }
    // cylinder of theta: pull [0, 2pi] back along the branch chain
    double lo = 0, hi = kTwoPi;
    for (int k = depth - 1; k >= 0; --k) {
      if (bits[k] == 0) {
        lo = model.invert_lift(lo, 0.0, theta_star);
        hi = model.invert_lift(hi, 0.0, theta_star);
      } else {
        lo = model.invert_lift(lo + kTwoPi, theta_star, kTwoPi);
        hi = model.invert_lift(hi + kTwoPi, theta_star, kTwoPi);
      }
    }
    double pos = hi > lo ? std::clamp((th - lo) / (hi - lo), 0.0, 1.0) : 0.5;
    double addr = 0;
    for (int k = 0; k < depth; ++k) addr = 2 * addr + bits[k];
    return kTwoPi * (addr + pos) / std::ldexp(1.0, depth);
  };

  long ambig = 0;
  for (int k = 0; k < n_samples; ++k) {
    tbl.theta[k] = kTwoPi * k / n_samples;
    tbl.h[k] = h_of(tbl.theta[k], ambig);
  }
  tbl.ambiguous_points = ambig;

  // conjugation residual on an offset sample set
  double res = 0;
  for (int k = 0; k < n_samples; ++k) {
    double th = kTwoPi * (k + 0.37) / n_samples;
    long dummy = 0;
    double lhs = h_of(model.map(th), dummy);
    double rhs = 2.0 * h_of(th, dummy);
    res = std::max(res, std::abs(std::remainder(lhs - rhs, kTwoPi)));
  }
  tbl.residual = res;

  // quasi-symmetry estimate M over symmetric triples
  double M = 1.0;
  for (int k = 0; k < 256; ++k) {
    double th = kTwoPi * (k + 0.5) / 256;
    for (double t : {0.01, 0.05, 0.2}) {
      long dummy = 0;
      double hp = h_of(std::fmod(th + t + kTwoPi, kTwoPi), dummy);
      double h0 = h_of(th, dummy);
      double hm = h_of(std::fmod(th - t + kTwoPi, kTwoPi), dummy);
      double num = std::abs(std::remainder(hp - h0, kTwoPi));
      double den = std::abs(std::remainder(h0 - hm, kTwoPi));
      if (den > 1e-14) M = std::max(M, std::max(num / den, den / num));
    }
  }
  tbl.qs_M = M;
  return tbl;
}

double ConjugacyTable::eval(double th) const {
  double p = std::fmod(th, kTwoPi);
  if (p < 0) p += kTwoPi;
  double f = p / kTwoPi * n;
  int k = static_cast<int>(f);
  double t = f - k;
  double a = h[k % n];
  double b = (k + 1 < n) ? h[k + 1] : kTwoPi;  // h wraps to 2pi at theta = 2pi
  return (1 - t) * a + t * b;
}

std::string ConjugacyTable::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "theta,h\n";
  for (int k = 0; k < n; ++k) os << theta[k] << "," << h[k] << "\n";
  return os.str();
}

double real_axis_grid(double lambda, double x) {
  if (lambda <= 1.0) throw std::invalid_argument("real_axis_grid: lambda > 1");
  if (x < -1.0 || x > 1.0) throw std::domain_error("real_axis_grid: x in [-1,1]");
  double s = x < 0 ? -1.0 : 1.0;
  double a = std::abs(x);
  if (a >= 1.0) return s;
  // find k with x_k <= a < x_{k+1}, x_k = 1 - lambda^-k
  double xk = 0.0, xk1 = 1.0 - 1.0 / lambda;
  double yk = 0.0, yk1 = 0.5;
  int k = 0;
  while (!(a >= xk && a < xk1)) {
    ++k;
    xk = xk1;
    yk = yk1;
    xk1 = 1.0 - std::pow(lambda, -(k + 1));
    yk1 = 1.0 - std::pow(2.0, -(k + 1));
    if (k > 1060) return s * a;  // only reachable in degenerate fp corner cases
  }
  double u = (a - xk) / (xk1 - xk);
  return s * (yk + u * (yk1 - yk));
}

Complex halfdisk_map(Complex z) {
  if (z == Complex(1, 0)) return {1, 0};  // boundary limit at the pole
  Complex m = (1.0 + z) / (1.0 - z);
  Complex m2 = m * m;
  return (m2 - Complex(0, 1)) / (m2 + Complex(0, 1));
}

Complex halfdisk_map_inverse(Complex w) {
  if (w == Complex(1, 0)) return {1, 0};
  Complex m2 = Complex(0, 1) * (1.0 + w) / (1.0 - w);
  Complex m = std::sqrt(m2);
  if (m.real() < 0) m = -m;  // first quadrant branch
  return (m - 1.0) / (m + 1.0);
}

// ---------------------------------------------------------------------------

namespace {

// Cayley transform disk -> upper half plane, C(0) = i, C(1) = inf, C(-1) = 0
Complex cayley(Complex w) { return Complex(0, 1) * (1.0 + w) / (1.0 - w); }
Complex cayley_inv(Complex z) {
  return (z - Complex(0, 1)) / (z + Complex(0, 1));
}

}  // namespace

DiskExtension::DiskExtension(std::function<double(double)> circle_angle_map,
                             std::function<double(double)> real_map)
    : circle_h_(std::move(circle_angle_map)), real_h_(std::move(real_map)) {
  mobius_a_ = 0;
  Complex h0 = eval_raw({0, 0});
  mobius_a_ = h0.real();  // symmetric boundary data keeps H(0) real
}

double DiskExtension::boundary_line_map(double x) const {
  // beta_H = C o Xi o h o Xi^{-1} o C^{-1} on the real line
  Complex w = cayley_inv(Complex(x, 0));
  // w on the unit circle; pull to dU
  Complex zb = halfdisk_map_inverse(w);
  Complex hz;
  if (std::abs(zb.imag()) < 1e-13) {
    hz = Complex(real_h_(std::clamp(zb.real(), -1.0, 1.0)), 0.0);
  } else {
    double th = std::atan2(zb.imag(), zb.real());
    hz = std::polar(1.0, circle_h_(th));
  }
  Complex img = cayley(halfdisk_map(hz));
  return img.real();
}

Complex DiskExtension::eval_raw(Complex z) const {
  bool mir = z.imag() < 0;
  Complex zu = mir ? std::conj(z) : z;
  Complex H;
  if (zu.imag() < 1e-14 && std::abs(zu.real()) <= 1.0) {
    H = Complex(real_h_(zu.real()), 0.0);
  } else if (std::abs(std::abs(zu) - 1.0) < 1e-14) {
    double th = std::atan2(zu.imag(), zu.real());
    H = std::polar(1.0, circle_h_(th));
  } else {
    // interior of the upper half disk: half-plane Beurling-Ahlfors extension
    // of the conjugated boundary line map
    Complex hp = cayley(halfdisk_map(zu));
    double x = hp.real(), y = hp.imag();
    // u = 1/2 int_0^1 [b(x+ty) + b(x-ty)] dt,  v = int_0^1 [b(x+ty)-b(x-ty)] dt
    // 32-node Gauss-Legendre on [0,1]
    static const double gl_x[16] = {
        0.0483076656877383, 0.1444719615827965, 0.2392873622521371,
        0.3318686022821277, 0.4213512761306353, 0.5068999089322294,
        0.5877157572407623, 0.6630442669302152, 0.7321821187402897,
        0.7944837959679424, 0.8493676137325700, 0.8963211557660521,
        0.9349060759377397, 0.9647622555875064, 0.9856115115452684,
        0.9972638618494816};
    static const double gl_w[16] = {
        0.0965400885147278, 0.0956387200792749, 0.0938443990808046,
        0.0911738786957639, 0.0876520930044038, 0.0833119242269467,
        0.0781938957870703, 0.0723457941088485, 0.0658222227763618,
        0.0586840934785355, 0.0509980592623762, 0.0428358980222267,
        0.0342738629130214, 0.0253920653092621, 0.0162743947309057,
        0.0070186100094701};
    double u = 0, v = 0;
    for (int k = 0; k < 16; ++k) {
      for (double sgn : {-1.0, 1.0}) {
        double t = 0.5 + sgn * 0.5 * gl_x[k];
        double wgt = 0.5 * gl_w[k];
        double bp = boundary_line_map(x + t * y);
        double bm = boundary_line_map(x - t * y);
        u += wgt * 0.5 * (bp + bm);
        v += wgt * (bp - bm);
      }
    }
    Complex img{u, v};
    H = halfdisk_map_inverse(cayley_inv(img));
  }
  return mir ? std::conj(H) : H;
}

Complex DiskExtension::eval(Complex z) const {
  Complex H = eval_raw(z);
  double a = mobius_a_;
  return (H - a) / (1.0 - a * H);
}

Complex GhatAssembly::invert_H(Complex w) const {
  // coarse polar search then local refinement with finite differences
  Complex best{0, 0};
  double bd = std::abs(H->eval(best) - w);
  for (int ir = 1; ir <= 12; ++ir) {
    double r = ir / 12.5;
    int na = 8 * ir;
    for (int ia = 0; ia < na; ++ia) {
      Complex z = std::polar(r, kTwoPi * ia / na);
      double d = std::abs(H->eval(z) - w);
      if (d < bd) {
        bd = d;
        best = z;
      }
    }
  }
  Complex z = best;
  for (int it = 0; it < 60; ++it) {
    Complex r = H->eval(z) - w;
    if (std::abs(r) < 1e-10) break;
    double hstep = 1e-6;
    Complex fx = (H->eval(z + hstep) - H->eval(z - hstep)) / (2 * hstep);
    Complex fy = (H->eval(z + Complex(0, hstep)) - H->eval(z - Complex(0, hstep))) /
                 (2 * hstep);
    Complex fz = (fx - Complex(0, 1) * fy) / 2.0;
    Complex fzb = (fx + Complex(0, 1) * fy) / 2.0;
    double jac = std::norm(fz) - std::norm(fzb);
    if (jac <= 0) break;
    Complex step = (std::conj(fz) * r - fzb * std::conj(r)) / jac;
    z -= step;
    if (std::abs(z) > 1.0) z /= std::abs(z) * (1.0 + 1e-12);
  }
  return z;
}

Complex GhatAssembly::eval(Complex z) const {
  if (std::abs(z) >= 1.0) return G_exterior(z);
  Complex hz = H->eval(z);
  return invert_H(hz * hz);
}

}  // namespace qcs
