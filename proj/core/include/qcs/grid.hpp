#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcs/types.hpp"

namespace qcs {

// Rectangular sample window of complex values, row-major, iy*nx + ix.
// Sample nodes are x = x0 + ix*dx with dx = width/nx (right edge excluded),
// the periodic convention the spectral solver uses.
struct ComplexGrid {
  Rect window;
  int nx = 0, ny = 0;
  std::vector<Complex> v;
  std::vector<std::uint8_t> mask;  // optional, same layout

  static ComplexGrid make(const Rect& w, int nx, int ny, bool with_mask = false);

  double dx() const { return window.width() / nx; }
  double dy() const { return window.height() / ny; }
  Complex node(int ix, int iy) const {
    return {window.x0 + ix * dx(), window.y0 + iy * dy()};
  }
  Complex& at(int ix, int iy) { return v[static_cast<std::size_t>(iy) * nx + ix]; }
  const Complex& at(int ix, int iy) const {
    return v[static_cast<std::size_t>(iy) * nx + ix];
  }

  // Bilinear interpolation of the value field at z (clamped to the window).
  Complex interp(Complex z) const;

  // Flat binary format: header x0,x1,y0,y1 (LE doubles), nx,ny (LE int64),
  // then interleaved re/im doubles row-major.
  void write_binary(const std::string& path) const;
  static ComplexGrid read_binary(const std::string& path);
};

// sample classes used in masks
namespace gridmask {
constexpr std::uint8_t kDisk = 0;
constexpr std::uint8_t kDiamond = 1;
constexpr std::uint8_t kStripLeg = 2;
constexpr std::uint8_t kBend = 3;
constexpr std::uint8_t kSpecial = 4;
constexpr std::uint8_t kBoundary = 5;
constexpr std::uint8_t kOutside = 6;
}  // namespace gridmask

}  // namespace qcs
