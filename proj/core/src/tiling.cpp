#include "qcs/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qcs {

using nlohmann::ordered_json;

DiameterSequence DiameterSequence::checked(std::vector<int> d) {
  if (d.empty()) throw std::invalid_argument("diameter sequence is empty");
  if (d.size() > 64) throw std::invalid_argument("diameter sequence too long (max 64)");
  long total = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] < 2 || d[i] % 2 != 0 || d[i] > 4096) {
      std::ostringstream os;
      os << "diameter at index " << (i + 1) << " must be a positive even integer <= 4096, got "
         << d[i];
      throw std::invalid_argument(os.str());
    }
    total += d[i];
  }
  if (total > 8192)
    throw std::invalid_argument("diameter sequence total exceeds the 8192 cap");
  return DiameterSequence{std::move(d)};
}

// ---------------------------------------------------------------------------
// piece maps

namespace {

Complex affine_coeff_A(Complex e1, Complex e2, Complex f1, Complex f2) {
  Complex det = e1 * std::conj(e2) - e2 * std::conj(e1);
  return (f1 * std::conj(e2) - f2 * std::conj(e1)) / det;
}
Complex affine_coeff_B(Complex e1, Complex e2, Complex f1, Complex f2) {
  Complex det = e1 * std::conj(e2) - e2 * std::conj(e1);
  return (e1 * f2 - e2 * f1) / det;
}

double cross2(Complex a, Complex b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

bool in_poly(const std::array<Complex, 4>& v, int nv, Complex z, double tol) {
  for (int k = 0; k < nv; ++k) {
    Complex a = v[k], b = v[(k + 1) % nv];
    if (cross2(b - a, z - a) < -tol * std::abs(b - a)) return false;
  }
  return true;
}

}  // namespace

StripPiece affine_tri(Complex z0, Complex z1, Complex z2, Complex w0,
                      Complex w1, Complex w2, PieceKind kind, PieceClass clazz) {
  StripPiece p;
  p.kind = kind;
  p.clazz = clazz;
  p.nv = 3;
  p.zv = {z0, z1, z2, Complex{}};
  if (cross2(z1 - z0, z2 - z0) < 0) p.zv = {z0, z2, z1, Complex{}};
  Complex e1 = z1 - z0, e2 = z2 - z0, f1 = w1 - w0, f2 = w2 - w0;
  p.A = affine_coeff_A(e1, e2, f1, f2);
  p.B = affine_coeff_B(e1, e2, f1, f2);
  p.C = w0 - p.A * z0 - p.B * std::conj(z0);
  return p;
}

StripPiece affine_quad(Complex z0, Complex z1, Complex z2, Complex z3,
                       Complex w0, Complex w1, Complex w2, PieceKind kind,
                       PieceClass clazz) {
  StripPiece p = affine_tri(z0, z1, z2, w0, w1, w2, kind, clazz);
  p.nv = 4;
  p.zv = {z0, z1, z2, z3};
  if (cross2(z1 - z0, z3 - z0) < 0) p.zv = {z3, z2, z1, z0};
  return p;
}

bool StripPiece::fan_coords(Complex z, double& theta, double& u, double tol) const {
  // The segment through z from the anchor meets the circle at e^{i theta};
  // the near-side root of |anchor + s (z - anchor)|^2 = 1 is the arc point.
  Complex D = z - anchor;
  double a = std::norm(D);
  if (a == 0.0) return false;
  double b = anchor.real() * D.real() + anchor.imag() * D.imag();
  double c = std::norm(anchor) - 1.0;
  double disc = b * b - a * c;
  if (disc < 0) return false;
  double s = (-b - std::sqrt(disc)) / a;
  if (s < 1.0 - tol) return false;
  Complex arc_pt = anchor + s * D;
  theta = std::atan2(arc_pt.imag(), arc_pt.real());
  if (theta < 0) theta += kTwoPi;
  // th0 = 0 fans must not wrap
  if (th1 <= kPi && theta > 1.5 * kPi) theta -= kTwoPi;
  u = 1.0 - 1.0 / s;
  return theta >= th0 - tol && theta <= th1 + tol && u >= -tol && u <= 1.0 + tol;
}

bool StripPiece::contains(Complex z, double tol) const {
  switch (kind) {
    case PieceKind::HorizontalLeg:
      return z.real() > x_start - tol && z.imag() > yb0 - tol && z.imag() < yb1 + tol;
    case PieceKind::Fan: {
      if (std::norm(z) < 1.0 - 2 * tol) return false;
      double th, u;
      return fan_coords(z, th, u, tol);
    }
    default:
      return in_poly(zv, nv, z, tol);
  }
}

Complex StripPiece::chart(Complex z) const {
  switch (kind) {
    case PieceKind::HorizontalLeg: {
      // Re: inner ray (y = yb0) to +1, outer (y = yb1) to -1.
      // Im: rail parameter x + c, interpolated; c values are baked into A,B,C.
      return A * z + B * std::conj(z) + C;
    }
    case PieceKind::Fan: {
      double th, u;
      if (!fan_coords(z, th, u, 1e-9)) {
        // clamp: callers only reach here for points resolved to this piece
        th = std::clamp(std::atan2(z.imag(), z.real()), th0, th1);
        u = 0.0;
      }
      double wb = wb0 + (wb1 - wb0) * (th - th0) / (th1 - th0);
      return (1.0 - u) * Complex(wb, 0.0) + u * w_anchor;
    }
    default:
      return A * z + B * std::conj(z) + C;
  }
}

Complex StripPiece::mu(Complex z) const {
  if (kind != PieceKind::Fan) return B / A;
  double th, u;
  if (!fan_coords(z, th, u, 1e-9)) return {0.0, 0.0};
  Complex eith = std::polar(1.0, th);
  Complex z_th = (1.0 - u) * Complex(0, 1) * eith;
  Complex z_u = anchor - eith;
  double wslope = (wb1 - wb0) / (th1 - th0);
  Complex w_th{(1.0 - u) * wslope, 0.0};
  Complex w_u = w_anchor - Complex(wb0 + wslope * (th - th0), 0.0);
  // real 2x2: M = W * Z^{-1}
  double zdet = z_th.real() * z_u.imag() - z_u.real() * z_th.imag();
  double a = (w_th.real() * z_u.imag() - w_u.real() * z_th.imag()) / zdet;
  double b = (-w_th.real() * z_u.real() + w_u.real() * z_th.real()) / zdet;
  double c = (w_th.imag() * z_u.imag() - w_u.imag() * z_th.imag()) / zdet;
  double d = (-w_th.imag() * z_u.real() + w_u.imag() * z_th.real()) / zdet;
  Complex fz{0.5 * (a + d), 0.5 * (c - b)};
  Complex fzb{0.5 * (a - d), 0.5 * (c + b)};
  return fzb / fz;
}

std::optional<int> Strip::find_piece(Complex z, double tol) const {
  for (std::size_t k = 0; k < pieces.size(); ++k)
    if (pieces[k].contains(z, tol)) return static_cast<int>(k);
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// construction

namespace {

// Generic strip (j >= 4): both rails canonical.
Strip build_generic_strip(int j, const Bottom& bottom) {
  Strip s;
  s.index = j;
  s.parity = (j % 2 == 1) ? +1 : -1;
  s.bottom = bottom;

  const Complex cR = bottom.right_corner, cL = bottom.left_corner;
  const double xR = cR.real(), xL = cL.real();
  const double hR = cR.imag(), hL = cL.imag();
  const double delta = hR - hL;  // -1 ascending, +1 descending
  const Complex I{0.0, 1.0};

  // collar: bottom parallelogram, unit shear
  s.pieces.push_back(affine_quad(cR, cL, cL + I, cR + I, {1, 0}, {-1, 0},
                                 {-1, 1}, PieceKind::Collar, PieceClass::StripLeg));

  // transition triangle flattens the slanted collar top
  if (delta < 0) {  // ascending
    s.pieces.push_back(affine_tri({xR, hR + 1}, {xL, hR + 2}, {xR, hR + 2},
                                  {1, 1}, {-1, 1}, {1, 2},
                                  PieceKind::Transition, PieceClass::StripLeg));
  } else {  // descending
    s.pieces.push_back(affine_tri({xL, hR}, {xR, hR + 1}, {xL, hR + 1},
                                  {-1, 1}, {1, 1}, {-1, 2},
                                  PieceKind::Transition, PieceClass::StripLeg));
  }

  // vertical rectangle up to the bend (possibly empty)
  const double yv0 = std::max(hR, hL) + 1.0;
  const double yv1 = static_cast<double>(j - 1);
  if (yv1 > yv0 + 1e-15) {
    // Re w = 2(x - xL) - 1, Im w = (y - hR) + delta*(xR - x)
    Complex q0{xL, yv0}, q1{xR, yv0}, q2{xR, yv1}, q3{xL, yv1};
    auto im = [&](Complex z) { return (z.imag() - hR) + delta * (xR - z.real()); };
    s.pieces.push_back(affine_quad(q0, q1, q2, q3, {-1, im(q0)}, {1, im(q1)},
                                   {1, im(q2)}, PieceKind::VerticalLeg,
                                   PieceClass::StripLeg));
  }

  // bend square split along the diagonal
  const double yb = static_cast<double>(j - 1), yt = static_cast<double>(j);
  Complex bLL{xL, yb}, bLR{xR, yb}, bUR{xR, yt}, bUL{xL, yt};
  Complex wLL{-1, yb - hL}, wLR{1, yb - hR}, wUL{-1, yt - hL}, wUR{-1, yt - hL + 1};
  s.pieces.push_back(affine_tri(bLL, bLR, bUL, wLL, wLR, wUL,
                                PieceKind::BendLower, PieceClass::Bend));
  s.pieces.push_back(affine_tri(bLR, bUR, bUL, wLR, wUR, wUL,
                                PieceKind::BendUpper, PieceClass::Bend));

  // horizontal leg: rails r_{j-1} (inner, y = j-1) and r_j (outer, y = j)
  {
    StripPiece p;
    p.kind = PieceKind::HorizontalLeg;
    p.clazz = PieceClass::StripLeg;
    p.x_start = xR;
    p.yb0 = yb;
    p.yb1 = yt;
    const double c_in = 2.0 * (j - 1) - 1.0 - hR;  // rail ray parameter offsets
    const double c_out = 2.0 * j - 1.0 - hL;
    const double D = c_out - c_in;
    // w = (2j-1-2y) + i(x + c_in + D*(y - (j-1)))
    p.A = Complex(D, 3.0) / 2.0;
    p.B = Complex(-D, -1.0) / 2.0;
    p.C = Complex(2.0 * j - 1.0, c_in - D * (j - 1.0));
    s.pieces.push_back(p);
  }
  return s;
}

double zig(const Diamond& D, double x) {
  double h = D.half - std::abs(x - D.center);
  return h < 0 ? 0 : h;
}

}  // namespace

Complex Rail::point_at_param(double p) const {
  if (p <= params.front()) return verts.front();
  for (std::size_t k = 0; k + 1 < verts.size(); ++k) {
    if (p <= params[k + 1]) {
      double t = (p - params[k]) / (params[k + 1] - params[k]);
      return verts[k] + t * (verts[k + 1] - verts[k]);
    }
  }
  return {p - c_offset, horiz_y};
}

Tiling Tiling::build(const DiameterSequence& dseq) {
  Tiling t;
  t.diam_seq_ = DiameterSequence::checked(dseq.diameters);
  const auto& d = t.diam_seq_.diameters;
  const int N = static_cast<int>(d.size());

  double v = -1.0;
  for (int n = 1; n <= N; ++n) {
    Diamond D;
    D.index = n;
    D.diameter = d[n - 1];
    D.right_vertex = v;
    D.left_vertex = v - d[n - 1];
    D.half = d[n - 1] / 2.0;
    D.center = v - D.half;
    t.diamonds_.push_back(D);
    v = D.left_vertex;
  }
  t.trunc_x_ = v;

  // bottoms: two quarter arcs, then the zigzag split into sqrt(2) segments
  Bottom b1;
  b1.index = 1;
  b1.kind = BottomKind::Arc;
  b1.right_corner = {1, 0};
  b1.left_corner = {0, 1};
  b1.theta_right = 0;
  b1.theta_left = kPi / 2;
  t.bottoms_.push_back(b1);
  Bottom b2 = b1;
  b2.index = 2;
  b2.right_corner = {0, 1};
  b2.left_corner = {-1, 0};
  b2.theta_right = kPi / 2;
  b2.theta_left = kPi;
  t.bottoms_.push_back(b2);

  int j = 3;
  for (const Diamond& D : t.diamonds_) {
    const int m = D.diameter / 2;
    for (int k = 0; k < D.diameter; ++k, ++j) {
      Bottom b;
      b.index = j;
      b.kind = BottomKind::Segment;
      b.host_diamond = D.index;
      b.ascending = (k < m) ? +1 : -1;
      double xr = D.right_vertex - k;
      double hr = zig(D, xr);
      double xl = xr - 1.0;
      double hl = zig(D, xl);
      b.right_corner = {xr, hr};
      b.left_corner = {xl, hl};
      t.bottoms_.push_back(b);
    }
  }
  const int J = j - 1;  // == 2 + sum d_n

  // rails r_0 .. r_J
  t.rails_.resize(J + 1);
  {
    Rail& r0 = t.rails_[0];
    r0.index = 0;
    r0.verts = {Complex{1, 0}};
    r0.params = {0.0};
    r0.horiz_y = 0.0;
    r0.horiz_x0 = 1.0;
    r0.c_offset = -1.0;
  }
  {
    // interface rail between the two disk strips (midline of the collar chart)
    Rail& r1 = t.rails_[1];
    r1.index = 1;
    r1.verts = {Complex{0, 1}, Complex{corner::kMid1X, corner::kMid1Y},
                Complex{corner::kMid2X, corner::kMid2Y},
                Complex{corner::kCollarCutX, 1.0}};
    r1.params = {0.0, corner::kMid1P, corner::kMid2P, corner::kCollarCutX + 1.0};
    r1.horiz_y = 1.0;
    r1.horiz_x0 = corner::kCollarCutX;
    r1.c_offset = 1.0;
  }
  {
    // tilted rail at -1, then vertical, ray at height 2
    Rail& r2 = t.rails_[2];
    r2.index = 2;
    Complex q{corner::exc_x(), corner::exc_y()};
    Complex top{corner::exc_x(), 2.0};
    double speed = corner::exc_speed();
    r2.verts = {Complex{-1, 0}, q, top};
    r2.params = {0.0, speed * corner::kExcLeg,
                 speed * (corner::kExcLeg + 2.0 - corner::exc_y())};
    r2.horiz_y = 2.0;
    r2.horiz_x0 = corner::exc_x();
    r2.c_offset = 3.0;
  }
  for (int k = 3; k <= J; ++k) {
    Rail& r = t.rails_[k];
    r.index = k;
    const Bottom& bk = t.bottoms_[k - 1];
    Complex base = bk.left_corner;
    r.verts = {base, Complex{base.real(), static_cast<double>(k)}};
    r.params = {0.0, k - base.imag()};
    r.horiz_y = k;
    r.horiz_x0 = base.real();
    r.c_offset = 2.0 * k - 1.0 - base.imag();
  }

  // strips
  t.strips_.reserve(J);
  t.strips_.push_back(build_strip1());
  t.strips_.push_back(build_strip2());
  t.strips_.push_back(build_strip3());
  t.strips_[0].bottom = t.bottoms_[0];
  t.strips_[1].bottom = t.bottoms_[1];
  t.strips_[2].bottom = t.bottoms_[2];
  for (int k = 4; k <= J; ++k)
    t.strips_.push_back(build_generic_strip(k, t.bottoms_[k - 1]));
  return t;
}

double Tiling::zigzag_height(double x) const {
  int n = diamond_at(x);
  return n == 0 ? 0.0 : zig(diamonds_[n - 1], x);
}

int Tiling::diamond_at(double x) const {
  if (x > -1.0 || x < trunc_x_) return 0;
  // v_n decreasing; linear scan (N <= 64)
  for (const Diamond& D : diamonds_)
    if (x <= D.right_vertex && x >= D.left_vertex) return D.index;
  return 0;
}

const Strip& Tiling::strip(int j) const {
  if (j < 1 || j > strip_count())
    throw std::out_of_range("strip index " + std::to_string(j) + " out of range 1.." +
                            std::to_string(strip_count()));
  return strips_[j - 1];
}

// ---------------------------------------------------------------------------
// locate

namespace {
void push_incident(TileRef& r, TileKind k, int idx) {
  if (r.n_incident < r.incident.size()) r.incident[r.n_incident++] = {k, idx};
}
}  // namespace

TileRef Tiling::locate(Complex z, double tol) const {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::invalid_argument("locate: non-finite point");
  bool mirrored = z.imag() < 0;
  Complex zu = mirrored ? std::conj(z) : z;
  TileRef r = locate_upper(zu, tol);
  r.mirrored = mirrored;
  return r;
}

TileRef Tiling::locate_upper(Complex z, double tol) const {
  const double x = z.real(), y = z.imag();
  const int J = strip_count();
  TileRef r;

  // final rail r_J closes the truncated model: vertical at the last left
  // vertex up to height J, then horizontal
  const bool near_final_vertical = std::abs(x - trunc_x_) < tol && y <= J + tol;
  const bool near_final_horizontal = std::abs(y - J) < tol && x >= trunc_x_ - tol;
  if (near_final_vertical || near_final_horizontal) {
    r.kind = TileKind::Boundary;
    push_incident(r, TileKind::Strip, J);
    push_incident(r, TileKind::Outside, 0);
    return r;
  }
  if (x < trunc_x_ || y > J) {
    r.kind = TileKind::Outside;
    return r;
  }

  // corner points at integer abscissas (diamond vertices, zigzag corners)
  {
    double xr = std::round(x);
    if (std::abs(x - xr) < tol && xr <= -1.0 + tol && xr >= trunc_x_ - tol) {
      double h = zigzag_height(xr);
      if (std::abs(y - h) < tol) {
        r.kind = TileKind::Boundary;
        int j = static_cast<int>(1.0 - xr);  // rail with base at this corner
        if (std::abs(xr + 1.0) < tol) push_incident(r, TileKind::Disk, 0);
        int nl = diamond_at(xr - 0.5), nr = diamond_at(xr + 0.5);
        if (h > 0.5) {
          push_incident(r, TileKind::Diamond, diamond_at(xr));
        } else {
          if (nr > 0) push_incident(r, TileKind::Diamond, nr);
          if (nl > 0) push_incident(r, TileKind::Diamond, nl);
        }
        if (j >= 1 && j <= J) push_incident(r, TileKind::Strip, j);
        if (j + 1 <= J) push_incident(r, TileKind::Strip, j + 1);
        if (std::abs(xr - trunc_x_) < tol) push_incident(r, TileKind::Outside, 0);
        return r;
      }
    }
  }

  // disk
  double rr = std::abs(z);
  if (rr < 1.0 - tol) {
    r.kind = TileKind::Disk;
    return r;
  }
  if (rr < 1.0 + tol && y >= -tol) {
    r.kind = TileKind::Boundary;
    push_incident(r, TileKind::Disk, 0);
    push_incident(r, TileKind::Strip, (z.real() >= 0 && z.imag() >= 0) ? 1 : 2);
    return r;
  }

  // diamonds
  if (x <= -1.0 + tol && x >= trunc_x_ - tol) {
    int n = diamond_at(std::min(x, -1.0));
    if (n == 0 && x < -1.0 + tol && x > -1.0 - tol) n = 1;
    if (n > 0) {
      const Diamond& D = diamonds_[n - 1];
      double defect = D.boundary_defect(z);
      if (defect < -tol) {
        r.kind = TileKind::Diamond;
        r.index = n;
        return r;
      }
      if (defect < tol) {
        r.kind = TileKind::Boundary;
        push_incident(r, TileKind::Diamond, n);
        // vertex neighbours
        if (std::abs(z.imag()) < tol) {
          if (std::abs(x - D.right_vertex) < tol && n > 1)
            push_incident(r, TileKind::Diamond, n - 1);
          if (std::abs(x - D.left_vertex) < tol && n < static_cast<int>(diamonds_.size()))
            push_incident(r, TileKind::Diamond, n + 1);
          if (std::abs(x + 1.0) < tol) push_incident(r, TileKind::Disk, 0);
        }
        return r;
      }
    }
  }

  // real ray [1, inf)
  if (y < tol && x >= 1.0 - tol) {
    r.kind = TileKind::Boundary;
    push_incident(r, TileKind::Strip, 1);
    return r;
  }

  // strip candidates: column index from x, row index from y, plus the three
  // special strips near the disk
  int cand[5];
  int nc = 0;
  double fx = std::floor(-x);
  int jv = static_cast<int>(fx) + 2;
  if (jv >= 1 && jv <= J) cand[nc++] = jv;
  int jh = static_cast<int>(std::floor(y)) + 1;
  if (jh >= 1 && jh <= J && jh != jv) cand[nc++] = jh;
  if (x > -2.0 - tol && x < 2.0 && y < 3.3) {
    for (int sj : {1, 2, 3}) {
      bool seen = false;
      for (int q = 0; q < nc; ++q) seen |= (cand[q] == sj);
      if (!seen && sj <= J) cand[nc++] = sj;
    }
  }

  int hit_strip = 0, hit_piece = -1, hits = 0;
  for (int q = 0; q < nc; ++q) {
    const Strip& s = strips_[cand[q] - 1];
    // strict interior test first
    if (auto p = s.find_piece(z, -tol)) {
      hit_strip = cand[q];
      hit_piece = *p;
      hits = 1;
      break;
    }
  }
  if (hits == 1) {
    r.kind = TileKind::Strip;
    r.index = hit_strip;
    r.piece = hit_piece;
    return r;
  }

  // tolerant pass: boundary between strips / pieces
  TileRef rb;
  rb.kind = TileKind::Boundary;
  for (int q = 0; q < nc; ++q) {
    const Strip& s = strips_[cand[q] - 1];
    if (s.find_piece(z, tol)) push_incident(rb, TileKind::Strip, cand[q]);
  }
  if (rb.n_incident > 0) {
    if (rb.n_incident == 1 && y > tol) {
      // interior point claimed only tolerantly (numerical sliver): treat as
      // the strip itself
      const Strip& s = strips_[rb.incident[0].second - 1];
      if (auto p = s.find_piece(z, tol)) {
        r.kind = TileKind::Strip;
        r.index = rb.incident[0].second;
        r.piece = *p;
        return r;
      }
    }
    return rb;
  }
  r.kind = TileKind::Outside;  // should not happen for in-model points
  return r;
}

// ---------------------------------------------------------------------------
// json

std::string Tiling::to_json() const {
  ordered_json j;
  j["diameters"] = diam_seq_.diameters;
  j["truncation_x"] = trunc_x_;
  j["strip_count"] = strip_count();
  ordered_json jd = ordered_json::array();
  for (const auto& D : diamonds_) {
    jd.push_back({{"index", D.index},
                  {"diameter", D.diameter},
                  {"center", D.center},
                  {"right_vertex", D.right_vertex},
                  {"left_vertex", D.left_vertex}});
  }
  j["diamonds"] = jd;
  ordered_json jb = ordered_json::array();
  for (const auto& b : bottoms_) {
    jb.push_back({{"index", b.index},
                  {"kind", b.kind == BottomKind::Arc ? "arc" : "segment"},
                  {"right_corner", {b.right_corner.real(), b.right_corner.imag()}},
                  {"left_corner", {b.left_corner.real(), b.left_corner.imag()}},
                  {"host_diamond", b.host_diamond}});
  }
  j["bottoms"] = jb;
  ordered_json jr = ordered_json::array();
  for (const auto& rl : rails_) {
    ordered_json pts = ordered_json::array();
    for (auto& p : rl.verts) pts.push_back({p.real(), p.imag()});
    jr.push_back({{"index", rl.index},
                  {"points", pts},
                  {"ray_height", rl.horiz_y},
                  {"ray_start_x", rl.horiz_x0},
                  {"ray_param_offset", rl.c_offset}});
  }
  j["rails"] = jr;
  ordered_json js = ordered_json::array();
  for (const auto& s : strips_) {
    js.push_back({{"index", s.index},
                  {"parity", s.parity},
                  {"pieces", static_cast<int>(s.pieces.size())}});
  }
  j["strips"] = js;
  return j.dump(2);
}

}  // namespace qcs
