#include "qcs/tiling.hpp"

// The two strips around the unit disk share one collar chart written in the
// coordinate W with F = exp(pi W / 2): the quarter arcs carry W = 4 i theta/pi,
// the real ray x - 1, and the tilted rail at -1 carries (x+3) + 4i.  The
// interface rail r_1 is the level curve Im W = 2 of this chart; it is chosen
// as a fixed polyline leaving the circle transversally at i (no tangency
// corner) and flattening onto height 1, with parameter x + 1 on the straight
// ray.  Strip 1 sees the chart as g1 = 1 + iW, strip 2 as g2 = 3 + iW, so the
// gluing along the interface is exact by construction.
//
// The meshes below are fixed: boundary vertex images are forced (arc
// proportional, rail parameters), interior vertex images are constants tuned
// once to balance the piecewise dilatation; the dilatation tests pin the
// resulting per-class maxima (all special pieces stay below 0.71).

namespace qcs {

namespace {

using corner::kC8;
using corner::kS8;

StripPiece fan_piece(Complex anchor, Complex w_anchor, double th0, double th1,
                     double wb0, double wb1) {
  StripPiece p;
  p.kind = PieceKind::Fan;
  p.clazz = PieceClass::Special;
  p.anchor = anchor;
  p.w_anchor = w_anchor;
  p.th0 = th0;
  p.th1 = th1;
  p.wb0 = wb0;
  p.wb1 = wb1;
  return p;
}

StripPiece mesh_tri(Complex z0, Complex z1, Complex z2, Complex w0, Complex w1,
                    Complex w2) {
  return affine_tri(z0, z1, z2, w0, w1, w2, PieceKind::MeshTri,
                    PieceClass::Special);
}

StripPiece hleg(double x_start, double yb0, double yb1, double c_in, double c_out) {
  StripPiece p;
  p.kind = PieceKind::HorizontalLeg;
  p.clazz = PieceClass::StripLeg;
  p.x_start = x_start;
  p.yb0 = yb0;
  p.yb1 = yb1;
  const double D = c_out - c_in;
  p.A = Complex(D, 3.0) / 2.0;
  p.B = Complex(-D, -1.0) / 2.0;
  p.C = Complex(1.0 + 2.0 * yb0, c_in - D * yb0);
  return p;
}

}  // namespace

Strip build_strip1() {
  using namespace corner;
  Strip s;
  s.index = 1;
  s.parity = +1;

  const Complex P1{1, 0};
  const Complex m1 = std::polar(1.0, kPi / 4);
  const Complex i0{0, 1};
  const Complex M1{kMid1X, kMid1Y}, M2{kMid2X, kMid2Y};
  const Complex F6{kCollarCutX, 0}, C{kCollarCutX, 1};
  const Complex E1{1.143, 0.460};

  const Complex wP1{1, 0}, wm1{0, 0};
  const Complex wM1{-1, kMid1P}, wM2{-1, kMid2P}, wC{-1, kCollarCutX + 1.0};
  const Complex wF6{1, kCollarCutX - 1.0};
  const Complex wE1{0.409, 0.672};  // interior, tuned

  s.pieces.push_back(fan_piece(M1, wM1, kPi / 4, kPi / 2, 0.0, -1.0));
  s.pieces.push_back(fan_piece(E1, wE1, 0.0, kPi / 4, 1.0, 0.0));
  s.pieces.push_back(mesh_tri(m1, M1, E1, wm1, wM1, wE1));
  s.pieces.push_back(mesh_tri(E1, M1, M2, wE1, wM1, wM2));
  s.pieces.push_back(mesh_tri(E1, M2, C, wE1, wM2, wC));
  s.pieces.push_back(mesh_tri(E1, C, F6, wE1, wC, wF6));
  s.pieces.push_back(mesh_tri(P1, E1, F6, wP1, wE1, wF6));
  s.pieces.push_back(hleg(kCollarCutX, 0.0, 1.0, -1.0, 1.0));
  return s;
}

Strip build_strip2() {
  using namespace corner;
  Strip s;
  s.index = 2;
  s.parity = -1;

  const double xh = exc_x();
  const double sp = exc_speed();
  const Complex i0{0, 1};
  const Complex m2 = std::polar(1.0, 5 * kPi / 8);
  const Complex m3 = std::polar(1.0, 3 * kPi / 4);
  const Complex m4 = std::polar(1.0, 7 * kPi / 8);
  const Complex B{-1, 0};
  const Complex q{xh, exc_y()}, V{xh, 2};
  const Complex M1{kMid1X, kMid1Y}, M2{kMid2X, kMid2Y};
  const Complex C{kCollarCutX, 1}, g2c{kCollarCutX, 2};
  const Complex G{-0.532, 2}, W0{0.022, 2}, U{1.349, 2}, U2{1.418, 2};
  const Complex L1{-1.042, 1.044}, L2{-0.800, 1.416}, L3{-0.353, 1.344};

  const Complex wi0{1, 0};
  const Complex wm2{0.5, 0}, wm3{0.0, 0}, wm4{-0.5, 0};
  const Complex wB{-1, 0};
  const Complex wq{-1, sp * kExcLeg}, wV{-1, xh + 3.0};
  const Complex wG{-1, G.real() + 3.0}, wW0{-1, W0.real() + 3.0};
  const Complex wU{-1, U.real() + 3.0}, wU2{-1, U2.real() + 3.0};
  const Complex wg2c{-1, kCollarCutX + 3.0};
  const Complex wM1{1, kMid1P}, wM2{1, kMid2P}, wC{1, kCollarCutX + 1.0};
  const Complex wL1{-0.604, 0.750};  // interior, tuned
  const Complex wL2{-0.450, 1.200};
  const Complex wL3{-0.112, 1.206};

  s.pieces.push_back(fan_piece(q, wq, 7 * kPi / 8, kPi, -0.5, -1.0));
  s.pieces.push_back(fan_piece(L1, wL1, 3 * kPi / 4, 7 * kPi / 8, 0.0, -0.5));
  s.pieces.push_back(fan_piece(L2, wL2, 5 * kPi / 8, 3 * kPi / 4, 0.5, 0.0));
  s.pieces.push_back(fan_piece(L3, wL3, kPi / 2, 5 * kPi / 8, 1.0, 0.5));
  s.pieces.push_back(mesh_tri(m4, L1, q, wm4, wL1, wq));
  s.pieces.push_back(mesh_tri(q, L1, V, wq, wL1, wV));
  s.pieces.push_back(mesh_tri(m3, V, L1, wm3, wV, wL1));
  s.pieces.push_back(mesh_tri(m3, L2, V, wm3, wL2, wV));
  s.pieces.push_back(mesh_tri(V, L2, G, wV, wL2, wG));
  s.pieces.push_back(mesh_tri(m2, G, L2, wm2, wG, wL2));
  s.pieces.push_back(mesh_tri(m2, L3, G, wm2, wL3, wG));
  s.pieces.push_back(mesh_tri(G, L3, W0, wG, wL3, wW0));
  s.pieces.push_back(mesh_tri(i0, W0, L3, wi0, wW0, wL3));
  s.pieces.push_back(mesh_tri(i0, M1, W0, wi0, wM1, wW0));
  s.pieces.push_back(mesh_tri(M1, U, W0, wM1, wU, wW0));
  s.pieces.push_back(mesh_tri(M1, M2, U, wM1, wM2, wU));
  s.pieces.push_back(mesh_tri(M2, U2, U, wM2, wU2, wU));
  s.pieces.push_back(mesh_tri(M2, C, U2, wM2, wC, wU2));
  s.pieces.push_back(mesh_tri(C, g2c, U2, wC, wg2c, wU2));
  s.pieces.push_back(hleg(kCollarCutX, 1.0, 2.0, 1.0, 3.0));
  return s;
}

Strip build_strip3() {
  using namespace corner;
  Strip s;
  s.index = 3;
  s.parity = +1;

  const double xh = exc_x();
  const double sp = exc_speed();
  const Complex A3{-1, 0};
  const Complex q{xh, exc_y()};
  const Complex V{xh, 2};
  const Complex B3{-2, 1};
  const Complex P32{-2, 2};
  const Complex P33{-2, 3};
  const Complex H1{xh, 3};

  const Complex wA3{1, 0};
  const Complex wq{1, sp * kExcLeg};
  const Complex wV{1, xh + 3.0};
  const Complex wB3{-1, 0};
  const Complex wP32{-1, 1};
  const Complex wP33{-1, 2};
  const Complex wH1{-1, xh + 4.0};

  s.pieces.push_back(mesh_tri(A3, q, B3, wA3, wq, wB3));
  s.pieces.push_back(mesh_tri(q, V, B3, wq, wV, wB3));
  s.pieces.push_back(mesh_tri(V, P32, B3, wV, wP32, wB3));
  s.pieces.push_back(affine_tri(P32, V, P33, wP32, wV, wP33, PieceKind::BendLower,
                                PieceClass::Bend));
  s.pieces.push_back(affine_tri(V, H1, P33, wV, wH1, wP33, PieceKind::BendUpper,
                                PieceClass::Bend));
  s.pieces.push_back(hleg(xh, 2.0, 3.0, 3.0, 4.0));
  return s;
}

}  // namespace qcs
