#include "qcs/grid.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qcs {

ComplexGrid ComplexGrid::make(const Rect& w, int nx, int ny, bool with_mask) {
  if (nx < 2 || ny < 2) throw std::invalid_argument("grid resolution must be >= 2");
  if (static_cast<long long>(nx) * ny > (1LL << 26))
    throw std::invalid_argument("grid resolution overflow guard (nx*ny > 2^26)");
  ComplexGrid g;
  g.window = w;
  g.nx = nx;
  g.ny = ny;
  g.v.assign(static_cast<std::size_t>(nx) * ny, Complex{});
  if (with_mask) g.mask.assign(static_cast<std::size_t>(nx) * ny, 0);
  return g;
}

Complex ComplexGrid::interp(Complex z) const {
  double fx = (z.real() - window.x0) / dx();
  double fy = (z.imag() - window.y0) / dy();
  fx = std::clamp(fx, 0.0, static_cast<double>(nx - 1) - 1e-12);
  fy = std::clamp(fy, 0.0, static_cast<double>(ny - 1) - 1e-12);
  int ix = static_cast<int>(fx), iy = static_cast<int>(fy);
  double tx = fx - ix, ty = fy - iy;
  return (1 - tx) * (1 - ty) * at(ix, iy) + tx * (1 - ty) * at(ix + 1, iy) +
         (1 - tx) * ty * at(ix, iy + 1) + tx * ty * at(ix + 1, iy + 1);
}

namespace {
void put_le_double(std::ofstream& f, double x) {
  static_assert(sizeof(double) == 8);
  f.write(reinterpret_cast<const char*>(&x), 8);
}
void put_le_i64(std::ofstream& f, std::int64_t x) {
  f.write(reinterpret_cast<const char*>(&x), 8);
}
}  // namespace

void ComplexGrid::write_binary(const std::string& path) const {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  put_le_double(f, window.x0);
  put_le_double(f, window.x1);
  put_le_double(f, window.y0);
  put_le_double(f, window.y1);
  put_le_i64(f, nx);
  put_le_i64(f, ny);
  for (const Complex& c : v) {
    put_le_double(f, c.real());
    put_le_double(f, c.imag());
  }
}

ComplexGrid ComplexGrid::read_binary(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  double hdr[4];
  std::int64_t dims[2];
  f.read(reinterpret_cast<char*>(hdr), 32);
  f.read(reinterpret_cast<char*>(dims), 16);
  if (!f) throw std::runtime_error("truncated grid file " + path);
  ComplexGrid g = make({hdr[0], hdr[1], hdr[2], hdr[3]}, static_cast<int>(dims[0]),
                       static_cast<int>(dims[1]));
  std::vector<double> buf(2 * g.v.size());
  f.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * 8));
  if (!f) throw std::runtime_error("truncated grid data in " + path);
  for (std::size_t i = 0; i < g.v.size(); ++i) g.v[i] = {buf[2 * i], buf[2 * i + 1]};
  return g;
}

}  // namespace qcs
