#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcs/types.hpp"

namespace qcs {

// Plane decomposition: unit disk, a chain of diamonds (squares rotated 45
// degrees, horizontal diagonal on the real axis, touching at vertices), and
// width-1 half strips between polyline rails.  Everything below the real
// axis is the mirror image and is handled by reflection.

struct DiameterSequence {
  std::vector<int> diameters;

  // Throws std::invalid_argument naming the offending 1-based index.
  static DiameterSequence checked(std::vector<int> d);
};

struct Diamond {
  int index = 0;          // 1-based
  int diameter = 0;       // d_n, even
  double right_vertex = 0;  // v_n;  v_1 = -1, v_{n+1} = v_n - d_n
  double left_vertex = 0;   // v_n - d_n
  double center = 0;        // omega_n = v_n - d_n/2
  double half = 0;          // d_n / 2
  bool contains(Complex z) const {
    return std::abs(z.real() - center) + std::abs(z.imag()) < half;
  }
  double boundary_defect(Complex z) const {
    return std::abs(z.real() - center) + std::abs(z.imag()) - half;
  }
};

enum class BottomKind : std::uint8_t { Arc, Segment };

struct Bottom {
  int index = 0;  // j, 1-based, 1 = rightmost
  BottomKind kind = BottomKind::Segment;
  Complex right_corner, left_corner;
  double theta_right = 0, theta_left = 0;  // arc bottoms: corners e^{i theta}
  int host_diamond = 0;                    // 0 for the two disk arcs
  int ascending = 0;  // +1 right diamond side, -1 left side, 0 arc
};

// Rail r_j: from the left corner of bottom j, ending in a horizontal ray at
// height j with parameter x + c_offset.  Canonical rails are vertical then
// horizontal and carry exact arclength.  r_1 and r_2 are the two exceptional
// rails at the disk (tent over i, tilted segment at -1); their bent parts
// carry a constant-speed parameter that matches the canonical value where
// the horizontal ray begins, so downstream legs keep the canonical shear.
struct Rail {
  int index = 0;
  std::vector<Complex> verts;   // polyline vertices, last one starts the ray
  std::vector<double> params;   // parameter at each vertex
  double horiz_y = 0;           // height of the final ray
  double horiz_x0 = 0;          // abscissa where the ray starts
  double c_offset = 0;          // ray parameter = x + c_offset

  double param_on_ray(double x) const { return x + c_offset; }
  // point on the rail at parameter p (polyline part interpolated, then ray)
  Complex point_at_param(double p) const;
};

enum class PieceKind : std::uint8_t {
  Collar,         // parallelogram on a segment bottom (unit shear)
  Transition,     // triangle turning the slanted collar top flat
  VerticalLeg,    // rectangle between consecutive vertical rails
  BendLower,      // bend square, lower-left triangle
  BendUpper,      // bend square, upper-right triangle
  HorizontalLeg,  // semi-infinite leg between horizontal rays
  MeshTri,        // special-strip mesh triangle
  Fan             // special-strip chart along a disk arc
};

enum class PieceClass : std::uint8_t { Disk, Diamond, StripLeg, Bend, Special };

// One chart piece of a strip.  Affine pieces store w = A z + B conj(z) + C;
// fans store the anchored arc chart.
struct StripPiece {
  PieceKind kind = PieceKind::MeshTri;
  PieceClass clazz = PieceClass::StripLeg;

  // polygon in z (CCW), 3 or 4 vertices; unused for HorizontalLeg
  int nv = 0;
  std::array<Complex, 4> zv{};

  // affine map data
  Complex A{}, B{}, C{};

  // fan data
  double th0 = 0, th1 = 0;     // arc range on the unit circle
  Complex anchor{}, w_anchor{};
  double wb0 = 0, wb1 = 0;     // bottom image Re at th0 / th1

  // horizontal leg data: region x > x_start, yb0 < y < yb1
  double x_start = 0, yb0 = 0, yb1 = 0;

  bool contains(Complex z, double tol) const;
  Complex chart(Complex z) const;      // maps into S = (-1,1) x (0,inf)
  Complex mu(Complex z) const;         // Beltrami coefficient of the chart
  // fan helpers
  bool fan_coords(Complex z, double& theta, double& u, double tol) const;
};

struct Strip {
  int index = 0;    // j
  int parity = 0;   // +1 odd j (maps via sigma to upper half), -1 even j
  Bottom bottom;
  std::vector<StripPiece> pieces;

  std::optional<int> find_piece(Complex z, double tol) const;
};

enum class TileKind : std::uint8_t { Disk, Diamond, Strip, Boundary, Outside };

struct TileRef {
  TileKind kind = TileKind::Outside;
  int index = 0;     // diamond n or strip j
  int piece = -1;    // piece index within the strip
  bool mirrored = false;
  // boundary points list every incident tile
  std::uint8_t n_incident = 0;
  std::array<std::pair<TileKind, int>, 6> incident{};
};

class Tiling {
 public:
  static Tiling build(const DiameterSequence& d);

  const std::vector<Diamond>& diamonds() const { return diamonds_; }
  const std::vector<Bottom>& bottoms() const { return bottoms_; }
  const std::vector<Rail>& rails() const { return rails_; }
  const std::vector<Strip>& strips() const { return strips_; }
  const Strip& strip(int j) const;  // throws on out-of-range j
  const DiameterSequence& diameters() const { return diam_seq_; }

  int strip_count() const { return static_cast<int>(strips_.size()); }
  double truncation_x() const { return trunc_x_; }  // last left vertex
  int top_rail() const { return strip_count(); }    // J: heights above are outside

  // Total: resolves every finite point to exactly one tile; points within
  // tol of a tile boundary resolve to Boundary with incident tiles listed.
  TileRef locate(Complex z, double tol = kBoundaryTol) const;

  // Zigzag height of the diamond chain at abscissa x (0 on vertex gaps).
  double zigzag_height(double x) const;
  int diamond_at(double x) const;  // 1-based, 0 if none

  std::string to_json() const;

  static constexpr double kBoundaryTol = 1e-12;

 private:
  DiameterSequence diam_seq_;
  std::vector<Diamond> diamonds_;
  std::vector<Bottom> bottoms_;
  std::vector<Rail> rails_;
  std::vector<Strip> strips_;
  double trunc_x_ = 0;

  TileRef locate_upper(Complex z, double tol) const;
};

// Geometry constants shared by the special strips around the disk.
namespace corner {
inline const double kC8 = std::cos(kPi / 8);  // cos 22.5 deg
inline const double kS8 = std::sin(kPi / 8);
// Tilted rail at -1: leaves at 112.5 deg (bisecting the gap between the
// circle tangent and the first diamond side) for kExcLeg, then vertical.
inline constexpr double kExcLeg = 0.5;
// Interface rail r_1 between the two disk strips: polyline
// i -> (kMid1X, kMid1Y) -> (kMid2X, kMid2Y) -> (kCollarCutX, 1) -> ray y = 1,
// carrying parameters 0, kMid1P, kMid2P, kCollarCutX + 1, then x + 1 on the
// ray.  It is the Im = 2 level of the collar chart; the vertex values are
// tuned together with the collar meshes.
inline constexpr double kMid1X = 0.388, kMid1Y = 1.300, kMid1P = 1.412;
inline constexpr double kMid2X = 0.972, kMid2Y = 1.158, kMid2P = 1.950;
inline constexpr double kCollarCutX = 1.45;

inline double exc_x() { return -1.0 - kExcLeg * kS8; }   // also rail-2 vertical
inline double exc_y() { return kExcLeg * kC8; }
// rail-2 bent+vertical parameter speed: total parameter matches x + 3 where
// the horizontal ray starts
inline double exc_speed() {
  return (2.0 - kExcLeg * kS8) / (2.0 + kExcLeg * (1.0 - kC8));
}
}  // namespace corner

// Builders used by tiling.cpp (implemented in special_strips.cpp).
Strip build_strip1();
Strip build_strip2();
Strip build_strip3();

StripPiece affine_tri(Complex z0, Complex z1, Complex z2, Complex w0,
                      Complex w1, Complex w2, PieceKind kind, PieceClass clazz);
StripPiece affine_quad(Complex z0, Complex z1, Complex z2, Complex z3,
                       Complex w0, Complex w1, Complex w2, PieceKind kind,
                       PieceClass clazz);

}  // namespace qcs
