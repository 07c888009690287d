#include "qcs/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include "qcs/parallel.hpp"

namespace qcs {

OrbitRecord iterate_classify(const Tiling& t, Complex z, int cap,
                             double escape_log_threshold) {
  if (cap < 1) throw std::invalid_argument("iterate_classify: cap >= 1");
  OrbitRecord rec;
  Complex cur = z;
  double prev_logmod = -1e300;
  int rising = 0;
  for (int step = 0; step <= cap; ++step) {
    TileRef ref = t.locate(cur);
    if (ref.kind == TileKind::Outside) {
      rec.status = OrbitStatus::Undecided;
      rec.truncated = true;
      rec.steps = step;
      return rec;
    }
    if (ref.kind == TileKind::Disk) {
      rec.status = OrbitStatus::Converged;
      rec.first_entry = step;
      rec.steps = step;
      rec.final_value = LogPolar::from_complex(cur);
      return rec;
    }
    if (step == 0) {
      rec.strip_mirrored = (ref.kind == TileKind::Strip) && ref.mirrored;
    }
    if (ref.kind == TileKind::Diamond) rec.gate_diamond = ref.index;
    LogPolar v;
    try {
      v = eval_F(t, cur);
    } catch (const OutsideModelError&) {
      rec.status = OrbitStatus::Undecided;
      rec.truncated = true;
      rec.steps = step;
      return rec;
    }
    rec.final_value = v;
    rec.steps = step + 1;
    if (v.log_mod > escape_log_threshold) {
      rising = (v.log_mod > prev_logmod) ? rising + 1 : 1;
      if (rising >= 3) {
        rec.status = OrbitStatus::Escaping;
        return rec;
      }
    } else {
      rising = 0;
    }
    prev_logmod = v.log_mod;
    if (!v.representable()) {
      // modulus beyond double range and growing: escaping by any measure
      rec.status = OrbitStatus::Escaping;
      return rec;
    }
    cur = v.to_complex();
  }
  rec.status = OrbitStatus::Undecided;
  return rec;
}

namespace {

std::int64_t make_signature(const OrbitRecord& rec) {
  // (first-entry time, gate diamond, strip side at the start)
  std::int64_t s = rec.first_entry;
  s = s * 100000 + rec.gate_diamond;
  s = s * 2 + (rec.strip_mirrored ? 1 : 0);
  return s;
}

}  // namespace

BasinRender render_basin(const Tiling& t, const Rect& window, int nx, int ny,
                         int cap) {
  BasinRender r;
  r.window = window;
  r.nx = nx;
  r.ny = ny;
  r.cap = cap;
  double rw = std::max({std::abs(window.x0), std::abs(window.x1),
                        std::abs(window.y0), std::abs(window.y1)});
  r.escape_log_threshold = std::log(bound_on_disk(t, std::max(1.0, rw * kSqrt2))) + 1.0;
  const std::size_t n = static_cast<std::size_t>(nx) * ny;
  if (n > (1uLL << 26)) throw std::invalid_argument("render resolution guard");
  r.status.assign(n, 2);
  r.time.assign(n, -1);
  r.signature.assign(n, -1);
  r.label.assign(n, -1);

  parallel_for_blocks(n, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      int ix = static_cast<int>(i % nx), iy = static_cast<int>(i / nx);
      OrbitRecord rec = iterate_classify(t, r.pixel_center(ix, iy), cap,
                                         r.escape_log_threshold);
      r.status[i] = static_cast<std::uint8_t>(rec.status);
      if (rec.status == OrbitStatus::Converged) {
        r.time[i] = rec.first_entry;
        r.signature[i] = make_signature(rec);
      }
    }
  });

  // deterministic scanline flood fill (single threaded)
  int next_label = 0;
  std::deque<std::size_t> queue;
  for (std::size_t i0 = 0; i0 < n; ++i0) {
    if (r.status[i0] != 0 || r.label[i0] >= 0) continue;
    int lbl = next_label++;
    r.label[i0] = lbl;
    queue.push_back(i0);
    const std::int64_t sig = r.signature[i0];
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      int ix = static_cast<int>(i % nx), iy = static_cast<int>(i / nx);
      const int dxs[4] = {1, -1, 0, 0};
      const int dys[4] = {0, 0, 1, -1};
      for (int k = 0; k < 4; ++k) {
        int jx = ix + dxs[k], jy = iy + dys[k];
        if (jx < 0 || jy < 0 || jx >= nx || jy >= ny) continue;
        std::size_t jj = static_cast<std::size_t>(jy) * nx + jx;
        if (r.status[jj] == 0 && r.label[jj] < 0 && r.signature[jj] == sig) {
          r.label[jj] = lbl;
          queue.push_back(jj);
        }
      }
    }
  }
  r.n_components = next_label;
  return r;
}

std::vector<ComponentRecord> component_metrics(const BasinRender& r,
                                               const Tiling& t) {
  struct Acc {
    long pixels = 0;
    int first_entry = -1;
    double a = -1e300, b = 1e300;
    bool real_trace = false;
    std::vector<Complex> extremes;  // hull candidates
    double min_abs = 1e300, max_abs = 0;
    Complex min_abs_pt, max_abs_pt;
  };
  std::map<int, Acc> accs;
  const double half_py = 0.5 * r.window.height() / r.ny;
  for (std::size_t i = 0; i < r.label.size(); ++i) {
    int lbl = r.label[i];
    if (lbl < 0) continue;
    Acc& a = accs[lbl];
    int ix = static_cast<int>(i % r.nx), iy = static_cast<int>(i / r.nx);
    Complex z = r.pixel_center(ix, iy);
    ++a.pixels;
    a.first_entry = r.time[i];
    if (std::abs(z.imag()) <= half_py) {
      a.real_trace = true;
      a.a = std::max(a.a, z.real());
      a.b = std::min(a.b, z.real());
    }
    double az = std::abs(z);
    if (az < a.min_abs) {
      a.min_abs = az;
      a.min_abs_pt = z;
    }
    if (az > a.max_abs) {
      a.max_abs = az;
      a.max_abs_pt = z;
    }
    a.extremes.push_back(z);  // thinned below
  }

  std::vector<ComponentRecord> out;
  for (auto& [lbl, a] : accs) {
    ComponentRecord rec;
    rec.id = lbl;
    rec.pixels = a.pixels;
    rec.first_entry = a.first_entry;
    rec.has_real_trace = a.real_trace;
    if (a.real_trace) {
      rec.a = a.a;
      rec.b = a.b;
    }
    // convex hull of pixel centers (monotone chain)
    std::vector<Complex>& pts = a.extremes;
    std::sort(pts.begin(), pts.end(), [](Complex p, Complex q) {
      return p.real() < q.real() || (p.real() == q.real() && p.imag() < q.imag());
    });
    auto cross = [](Complex o, Complex p, Complex q) {
      return (p.real() - o.real()) * (q.imag() - o.imag()) -
             (p.imag() - o.imag()) * (q.real() - o.real());
    };
    std::vector<Complex> hull;
    for (int pass = 0; pass < 2; ++pass) {
      std::size_t start = hull.size();
      for (const Complex& p : pts) {
        while (hull.size() >= start + 2 &&
               cross(hull[hull.size() - 2], hull.back(), p) <= 0)
          hull.pop_back();
        hull.push_back(p);
      }
      hull.pop_back();
      std::reverse(pts.begin(), pts.end());
    }
    hull.push_back(a.min_abs_pt);
    hull.push_back(a.max_abs_pt);
    for (std::size_t i = 0; i < hull.size(); ++i)
      for (std::size_t j = i + 1; j < hull.size(); ++j) {
        rec.diam_euclid = std::max(rec.diam_euclid, std::abs(hull[i] - hull[j]));
        rec.diam_sph = std::max(rec.diam_sph, chordal_distance(hull[i], hull[j]));
      }
    // time-1 components are the diamonds: exact real traces from geometry
    if (rec.first_entry == 1 && rec.has_real_trace) {
      int n = t.diamond_at(0.5 * (rec.a + rec.b));
      if (n > 0) {
        rec.a = t.diamonds()[n - 1].right_vertex;
        rec.b = t.diamonds()[n - 1].left_vertex;
      }
    }
    out.push_back(rec);
  }
  return out;
}

void write_ppm(const BasinRender& r, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "P6\n" << r.nx << " " << r.ny << "\n255\n";
  std::string row(static_cast<std::size_t>(r.nx) * 3, '\0');
  for (int iy = r.ny - 1; iy >= 0; --iy) {  // top row = max Im
    for (int ix = 0; ix < r.nx; ++ix) {
      std::size_t i = static_cast<std::size_t>(iy) * r.nx + ix;
      unsigned char rr = 0, gg = 0, bb = 0;
      if (r.status[i] == 0) {
        unsigned char g = static_cast<unsigned char>(r.time[i] % 256);
        rr = gg = bb = g;
      } else if (r.status[i] == 1) {
        rr = 255;
      }
      row[3 * ix] = static_cast<char>(rr);
      row[3 * ix + 1] = static_cast<char>(gg);
      row[3 * ix + 2] = static_cast<char>(bb);
    }
    f.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
}

void write_component_csv(const std::vector<ComponentRecord>& recs,
                         const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << "id,pixels,a,b,diam_euclid,diam_sph,first_entry\n";
  f.precision(17);
  for (const auto& r : recs) {
    f << r.id << "," << r.pixels << ",";
    if (r.has_real_trace)
      f << r.a << "," << r.b << ",";
    else
      f << ",,";
    f << r.diam_euclid << "," << r.diam_sph << "," << r.first_entry << "\n";
  }
}

WhyburnReport whyburn_report(const std::vector<ComponentRecord>& recs,
                             double epsilon) {
  WhyburnReport rep;
  rep.epsilon = epsilon;
  for (const auto& r : recs)
    if (r.diam_sph > epsilon) rep.witnesses.push_back({r.id, r.diam_sph});
  std::ostringstream os;
  os << rep.witnesses.size() << " component(s) exceed spherical diameter "
     << epsilon
     << ". Whyburn's criterion, condition (2), requires that only finitely many "
        "complementary components of a locally connected plane continuum exceed "
        "any fixed spherical diameter; a witness count that grows with the "
        "number of construction stages is evidence against local connectivity "
        "in the limit object. This finite run establishes the finite-stage "
        "statement only.";
  rep.verdict = os.str();
  return rep;
}

}  // namespace qcs
