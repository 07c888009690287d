#include "qcs/dilatation.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qcs/parallel.hpp"

namespace qcs {

namespace {

Complex mu_diamond(const Diamond& D, Complex z) {
  Complex rel = z - Complex(D.center, 0.0);
  double theta = std::atan2(rel.imag(), rel.real());
  if (theta < 0) theta += kTwoPi;
  double phi = std::fmod(theta, kPi / 2);
  double cs = std::cos(phi) + std::sin(phi);
  double d = D.diameter;
  double xip = (kPi * d / 2.0) / (cs * cs);
  double c = (std::sin(phi) - std::cos(phi)) / cs;  // R'/R
  Complex num{d - xip, -d * c};
  Complex den{d + xip, d * c};
  // transport from the log chart: zeta = log(z - center) is holomorphic,
  // mu_F = mu_h * conj(zeta')/zeta' = mu_h * e^{2 i theta}
  return (num / den) * std::polar(1.0, 2.0 * theta);
}

}  // namespace

double diamond_mu_max() {
  // phi -> 0: xi' = pi d/2, R'/R = -1; modulus is diameter-free
  Complex num{1.0 - kPi / 2.0, 1.0};
  Complex den{1.0 + kPi / 2.0, -1.0};
  return std::abs(num / den);
}

MuValue mu_analytic(const Tiling& t, Complex z) {
  bool mirrored = z.imag() < 0;
  Complex zu = mirrored ? std::conj(z) : z;
  TileRef ref = t.locate(zu);
  MuValue out;
  switch (ref.kind) {
    case TileKind::Disk:
      out.mu = {0, 0};
      out.clazz = gridmask::kDisk;
      break;
    case TileKind::Diamond:
      out.mu = mu_diamond(t.diamonds()[ref.index - 1], zu);
      out.clazz = gridmask::kDiamond;
      break;
    case TileKind::Strip: {
      const StripPiece& p = t.strip(ref.index).pieces[ref.piece];
      out.mu = p.mu(zu);
      switch (p.clazz) {
        case PieceClass::Bend: out.clazz = gridmask::kBend; break;
        case PieceClass::Special: out.clazz = gridmask::kSpecial; break;
        default: out.clazz = gridmask::kStripLeg; break;
      }
      break;
    }
    case TileKind::Boundary: {
      out.on_boundary = true;
      bool done = false;
      for (int k = 0; k < ref.n_incident && !done; ++k) {
        auto [kind, idx] = ref.incident[k];
        if (kind == TileKind::Disk) {
          out.mu = {0, 0};
          out.clazz = gridmask::kDisk;
          done = true;
        } else if (kind == TileKind::Diamond) {
          out.mu = mu_diamond(t.diamonds()[idx - 1], zu);
          out.clazz = gridmask::kDiamond;
          done = true;
        } else if (kind == TileKind::Strip) {
          const Strip& s = t.strip(idx);
          if (auto p = s.find_piece(zu, Tiling::kBoundaryTol)) {
            out.mu = s.pieces[*p].mu(zu);
            out.clazz = gridmask::kStripLeg;
            done = true;
          }
        }
      }
      if (!done) out.clazz = gridmask::kOutside;
      break;
    }
    case TileKind::Outside:
      out.clazz = gridmask::kOutside;
      break;
  }
  if (mirrored) out.mu = std::conj(out.mu);
  return out;
}

Complex finite_difference_mu(const Tiling& t, Complex z, double step) {
  auto same_piece = [&](Complex a, Complex b) {
    TileRef ra = t.locate(a), rb = t.locate(b);
    if (ra.kind != rb.kind || ra.mirrored != rb.mirrored) return false;
    if (ra.kind == TileKind::Strip)
      return ra.index == rb.index && ra.piece == rb.piece;
    if (ra.kind == TileKind::Diamond) return ra.index == rb.index;
    return ra.kind == TileKind::Disk;
  };
  Complex pts[4] = {z + step, z - step, z + Complex(0, step), z - Complex(0, step)};
  for (Complex p : pts)
    if (!same_piece(z, p))
      throw std::domain_error("finite_difference_mu: stencil crosses a piece boundary");
  Complex f[4];
  for (int k = 0; k < 4; ++k) f[k] = eval_F(t, pts[k]).to_complex();
  Complex fx = (f[0] - f[1]) / (2 * step);
  Complex fy = (f[2] - f[3]) / (2 * step);
  Complex fz = (fx - Complex(0, 1) * fy) / 2.0;
  Complex fzb = (fx + Complex(0, 1) * fy) / 2.0;
  return fzb / fz;
}

ComplexGrid mu_grid(const Tiling& t, const Rect& window, int nx, int ny) {
  ComplexGrid g = ComplexGrid::make(window, nx, ny, true);
  parallel_for_blocks(g.v.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      int ix = static_cast<int>(i % nx), iy = static_cast<int>(i / nx);
      Complex z = g.node(ix, iy);
      MuValue m = mu_analytic(t, z);
      if (m.on_boundary || m.clazz == gridmask::kOutside) {
        g.mask[i] = m.clazz == gridmask::kOutside ? gridmask::kOutside
                                                  : gridmask::kBoundary;
        g.v[i] = {0, 0};
      } else {
        g.mask[i] = m.clazz;
        g.v[i] = m.mu;
      }
    }
  });
  return g;
}

DilatationStats dilatation_stats(const ComplexGrid& mu) {
  DilatationStats s;
  for (std::size_t i = 0; i < mu.v.size(); ++i) {
    std::uint8_t c = mu.mask.empty() ? gridmask::kStripLeg : mu.mask[i];
    if (c >= gridmask::kBoundary) continue;
    double a = std::abs(mu.v[i]);
    s.class_max[c] = std::max(s.class_max[c], a);
    s.max_abs = std::max(s.max_abs, a);
    ++s.samples;
  }
  s.K = (1 + s.max_abs) / (1 - s.max_abs);
  return s;
}

DilatationStats dilatation_stats(const Tiling& t, const Rect& window, int nx, int ny) {
  return dilatation_stats(mu_grid(t, window, nx, ny));
}

std::string DilatationStats::to_json() const {
  nlohmann::ordered_json j;
  j["max_abs_mu"] = max_abs;
  j["K"] = K;
  j["samples"] = samples;
  j["class_max"] = {{"disk", class_max[0]},
                    {"diamond", class_max[1]},
                    {"strip_leg", class_max[2]},
                    {"bend", class_max[3]},
                    {"special", class_max[4]}};
  return j.dump(2);
}

}  // namespace qcs
