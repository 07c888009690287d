#include "qcs/model_map.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcs {

namespace {

// quadrant-local angle phi in [0, pi/2); q = 0..3
void quadrant(double theta, int& q, double& phi) {
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0) theta += kTwoPi;
  q = static_cast<int>(theta / (kPi / 2));
  if (q > 3) q = 3;
  phi = theta - q * (kPi / 2);
}

LogPolar eval_disk(Complex z) {
  if (z == Complex(0, 0)) return LogPolar::zero();
  return {2.0 * std::log(std::abs(z)), 2.0 * std::atan2(z.imag(), z.real())};
}

LogPolar eval_diamond(const Diamond& D, Complex z) {
  Complex rel = z - Complex(D.center, 0.0);
  double rad = std::abs(rel);
  if (rad == 0.0) return LogPolar::zero();
  double theta = std::atan2(rel.imag(), rel.real());
  if (theta < 0) theta += kTwoPi;
  int q;
  double phi;
  quadrant(theta, q, phi);
  double cs = std::cos(phi) + std::sin(phi);
  double R = D.half / cs;
  double xi = (kPi * D.diameter / 2.0) * (q + std::sin(phi) / cs);
  return {D.diameter * (std::log(rad) - std::log(R)), xi};
}

LogPolar eval_strip(const Strip& s, const StripPiece& p, Complex z) {
  Complex w = p.chart(z);
  return s.parity > 0 ? sigma_log(w) : tau_log(w);
}

}  // namespace

BoundaryAngle boundary_angle(const Tiling& t, int n, double theta) {
  if (n < 1 || n > static_cast<int>(t.diamonds().size()))
    throw std::out_of_range("boundary_angle: diamond index");
  const Diamond& D = t.diamonds()[n - 1];
  int q;
  double phi;
  quadrant(theta, q, phi);
  // xi(2pi) must close up to 2 pi d, so q=3, phi -> pi/2 is fine; exact 2pi
  // wraps to q=0 which also evaluates correctly (xi = 0 vs 2 pi d equivalence
  // is the caller's business via the winding convention below).
  double full_turns = std::floor(theta / kTwoPi);
  if (theta >= 0 && std::fmod(theta, kTwoPi) == 0.0 && theta > 0) {
    q = 4;  // represent xi(2pi k) exactly
    phi = 0;
    full_turns -= 1;
  }
  BoundaryAngle r;
  double cs = std::cos(phi) + std::sin(phi);
  r.R = D.half / cs;
  double base = kPi * D.diameter / 2.0;
  r.xi = base * (q + std::sin(phi) / cs) + full_turns * kTwoPi * D.diameter;
  r.xi_prime = base / (cs * cs);
  r.R_prime = D.half * (std::sin(phi) - std::cos(phi)) / (cs * cs);
  return r;
}

LogPolar eval_F(const Tiling& t, Complex z) {
  bool mirrored = z.imag() < 0;
  Complex zu = mirrored ? std::conj(z) : z;
  TileRef ref = t.locate(zu);
  LogPolar v;
  switch (ref.kind) {
    case TileKind::Disk:
      v = eval_disk(zu);
      break;
    case TileKind::Diamond:
      v = eval_diamond(t.diamonds()[ref.index - 1], zu);
      break;
    case TileKind::Strip:
      v = eval_strip(t.strip(ref.index), t.strip(ref.index).pieces[ref.piece], zu);
      break;
    case TileKind::Boundary: {
      bool done = false;
      for (int k = 0; k < ref.n_incident && !done; ++k) {
        auto [kind, idx] = ref.incident[k];
        if (kind == TileKind::Disk) {
          v = eval_disk(zu);
          done = true;
        } else if (kind == TileKind::Diamond) {
          v = eval_diamond(t.diamonds()[idx - 1], zu);
          done = true;
        } else if (kind == TileKind::Strip) {
          const Strip& s = t.strip(idx);
          if (auto p = s.find_piece(zu, Tiling::kBoundaryTol)) {
            v = eval_strip(s, s.pieces[*p], zu);
            done = true;
          }
        }
      }
      if (!done) throw OutsideModelError(z);
      break;
    }
    case TileKind::Outside:
      throw OutsideModelError(z);
  }
  if (mirrored) v.arg = -v.arg;
  return v;
}

Complex strip_chart(const Tiling& t, int j, Complex z) {
  const Strip& s = t.strip(j);
  auto p = s.find_piece(z, Tiling::kBoundaryTol);
  if (!p)
    throw std::domain_error("strip_chart: point not in strip " + std::to_string(j));
  return s.pieces[*p].chart(z);
}

CriticalPointList critical_points(const Tiling& t) {
  CriticalPointList out;
  for (const Diamond& D : t.diamonds()) {
    out.centers.push_back({Complex(D.center, 0), D.diameter, Complex(0, 0)});
    out.vertices.push_back({Complex(D.right_vertex, 0), 2, Complex(1, 0)});
  }
  out.vertices.push_back({Complex(t.truncation_x(), 0), 2, Complex(1, 0)});
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct StraddleSet {
  std::vector<Complex> base;
  std::vector<Complex> normal;  // unit
};

// Internal boundaries: circle, diamond sides, rails, the real ray [1, inf),
// real diamond diagonals' vertex gaps are points (skipped).
StraddleSet straddle_samples(const Tiling& t, int count) {
  StraddleSet s;
  const int J = t.strip_count();
  // weights: circle, each bottom, each rail up to x_max, real ray
  const double x_cap = 6.0;
  std::vector<std::pair<Complex, Complex>> segs;  // (a,b) straight pieces
  // rails: polyline verts + ray to x_cap
  for (const Rail& r : t.rails()) {
    for (std::size_t k = 0; k + 1 < r.verts.size(); ++k)
      segs.push_back({r.verts[k], r.verts[k + 1]});
    if (r.horiz_x0 < x_cap)
      segs.push_back({Complex(r.horiz_x0, r.horiz_y), Complex(x_cap, r.horiz_y)});
  }
  // diamond sides (upper; mirrored handled by symmetry of the construction)
  for (const Bottom& b : t.bottoms())
    if (b.kind == BottomKind::Segment) segs.push_back({b.right_corner, b.left_corner});

  double total_len = kPi;  // semicircle
  for (auto& [a, b] : segs) total_len += std::abs(b - a);

  auto put = [&](Complex p, Complex n) {
    s.base.push_back(p);
    s.normal.push_back(n);
  };
  // circle
  int nc = std::max(8, static_cast<int>(count * (kPi / total_len)));
  for (int k = 0; k < nc; ++k) {
    double th = kPi * (k + 0.5) / nc;
    Complex p = std::polar(1.0, th);
    put(p, p);
  }
  for (auto& [a, b] : segs) {
    double len = std::abs(b - a);
    int nk = std::max(2, static_cast<int>(count * (len / total_len)));
    Complex dir = (b - a) / len;
    Complex nrm{-dir.imag(), dir.real()};
    for (int k = 0; k < nk; ++k) {
      double u = (k + 0.5) / nk;
      put(a + u * (b - a), nrm);
    }
  }
  (void)J;
  return s;
}

}  // namespace

ContinuityReport continuity_check(const Tiling& t, int sample_count, double delta) {
  if (sample_count < 1) throw std::invalid_argument("continuity_check: sample count");
  StraddleSet s = straddle_samples(t, sample_count);
  ContinuityReport rep;
  for (std::size_t k = 0; k < s.base.size(); ++k) {
    Complex zp = s.base[k] + delta * s.normal[k];
    Complex zm = s.base[k] - delta * s.normal[k];
    LogPolar fp, fm;
    try {
      fp = eval_F(t, zp);
      fm = eval_F(t, zm);
    } catch (const OutsideModelError&) {
      continue;
    }
    double gap = logpolar_dist(fp, fm);
    ++rep.pairs;
    if (gap > rep.max_gap) {
      rep.max_gap = gap;
      rep.worst_point = s.base[k];
    }
  }
  return rep;
}

namespace {

// argument of F(z) - about, robust to huge |F|
double arg_F_minus(const Tiling& t, Complex z, Complex about) {
  LogPolar v = eval_F(t, z);
  if (v.is_zero()) return std::arg(-about);
  if (v.log_mod > 40.0) return v.arg;  // "about" is negligible
  Complex w = v.to_complex() - about;
  if (w == Complex(0, 0)) throw std::runtime_error("winding_degree: curve hits target");
  return std::arg(w);
}

}  // namespace

double winding_degree(const Tiling& t, std::span<const Complex> curve, Complex about) {
  if (curve.size() < 3) throw std::invalid_argument("winding_degree: need >= 3 samples");
  double total = 0;
  for (std::size_t k = 0; k < curve.size(); ++k) {
    Complex a = curve[k];
    Complex b = curve[(k + 1) % curve.size()];
    double arga = arg_F_minus(t, a, about);
    // subdivide the chord until each argument step is below pi/2
    struct Item {
      Complex a, b;
      double arga;
      int depth;
    };
    std::vector<Item> stack{{a, b, arga, 0}};
    while (!stack.empty()) {
      Item it = stack.back();
      stack.pop_back();
      double argb = arg_F_minus(t, it.b, about);
      double d = std::remainder(argb - it.arga, kTwoPi);
      if (std::abs(d) > kPi / 2) {
        if (it.depth >= 24)
          throw std::runtime_error(
              "winding_degree: argument continuation failed (sampling too coarse)");
        Complex mid = 0.5 * (it.a + it.b);
        stack.push_back({mid, it.b, arg_F_minus(t, mid, about), it.depth + 1});
        stack.push_back({it.a, mid, it.arga, it.depth + 1});
        continue;
      }
      total += d;
    }
  }
  return total / kTwoPi;
}

double bound_on_disk(const Tiling& t, double r) {
  if (r <= 0) throw std::invalid_argument("bound_on_disk: r > 0 required");
  const int J = t.strip_count();
  // rail ray parameter offsets
  auto c_of = [&](int j) { return t.rails()[j].c_offset; };
  double m = r + 1.0;  // vertical zones and collars
  for (int j = 1; j <= J; ++j) {
    double y = j - 1.0;
    if (y > r) break;
    double x = std::sqrt(std::max(r * r - y * y, 0.0));
    m = std::max(m, x + c_of(j));
  }
  return std::exp(kPi / 2.0 * (m + 1.0));
}

}  // namespace qcs
