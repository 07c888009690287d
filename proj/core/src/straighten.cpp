#include "qcs/straighten.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "qcs/parallel.hpp"

namespace qcs {

LogPolar eval_E(const Tiling& t, const QcSolution& sol, Complex z) {
  return eval_F(t, sol.invert(z));
}

namespace {

// dbar by the central Wirtinger stencil of a complex-valued function
template <typename Fn>
bool dbar_at(const Fn& f, Complex z, double h, Complex& out) {
  Complex fr, fl, fu, fd;
  if (!f(z + h, fr) || !f(z - h, fl) || !f(z + Complex(0, h), fu) ||
      !f(z - Complex(0, h), fd))
    return false;
  Complex fx = (fr - fl) / (2 * h);
  Complex fy = (fu - fd) / (2 * h);
  out = (fx + Complex(0, 1) * fy) / 2.0;
  return true;
}

double median(std::vector<double>& v) {
  if (v.empty()) return 0;
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

}  // namespace

DbarStats dbar_improvement(const Tiling& t, const QcSolution& sol,
                           const Rect& window, int nx, int ny) {
  const double hx = window.width() / nx;
  const double step = hx / 4.0;

  auto F_val = [&](Complex z, Complex& out) {
    try {
      LogPolar v = eval_F(t, z);
      if (!v.representable() || v.log_mod > 60.0) return false;
      out = v.to_complex();
      return true;
    } catch (const std::exception&) {
      return false;
    }
  };
  auto E_val = [&](Complex z, Complex& out) {
    try {
      Complex pre = sol.invert(z);
      LogPolar v = eval_F(t, pre);
      if (!v.representable() || v.log_mod > 60.0) return false;
      out = v.to_complex();
      return true;
    } catch (const std::exception&) {
      return false;
    }
  };

  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  std::vector<double> de(n, -1.0), df(n, -1.0);
  parallel_for_blocks(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      int ix = static_cast<int>(i % nx), iy = static_cast<int>(i / nx);
      Complex z{window.x0 + (ix + 0.5) * hx,
                window.y0 + (iy + 0.5) * window.height() / ny};
      Complex vE, vF;
      if (dbar_at(E_val, z, step, vE) && dbar_at(F_val, z, step, vF)) {
        de[i] = std::abs(vE);
        df[i] = std::abs(vF);
      }
    }
  });

  DbarStats st;
  std::vector<double> ve, vf;
  for (std::size_t i = 0; i < n; ++i)
    if (de[i] >= 0) {
      ve.push_back(de[i]);
      vf.push_back(df[i]);
      ++st.samples;
    }
  st.median_dbar_E = median(ve);
  st.median_dbar_F = median(vf);
  st.improvement = st.median_dbar_E > 0 ? st.median_dbar_F / st.median_dbar_E
                                        : std::numeric_limits<double>::infinity();
  return st;
}

}  // namespace qcs
