// Command-line driver: builds the tiling, runs the verification suites, and
// writes the experiment artifacts (grids, renders, planner state, reports).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qcs/config.hpp"
#include "qcs/halton.hpp"
#include "qcs/dilatation.hpp"
#include "qcs/dynamics.hpp"
#include "qcs/hyperbolic.hpp"
#include "qcs/model_map.hpp"
#include "qcs/parallel.hpp"
#include "qcs/planner.hpp"
#include "qcs/report.hpp"

namespace fs = std::filesystem;
using namespace qcs;

namespace {

struct Common {
  std::string config_path;
  std::string diameters_flag;
  std::string out_dir_flag;
  int threads = -1;
};

RunConfig load_config(const Common& c) {
  RunConfig cfg;
  if (!c.config_path.empty()) cfg = RunConfig::from_file(c.config_path);
  if (!c.diameters_flag.empty()) {
    std::vector<int> ds;
    std::string tok;
    std::istringstream is(c.diameters_flag);
    while (std::getline(is, tok, ',')) ds.push_back(std::stoi(tok));
    cfg.diameters = ds;
  }
  if (!c.out_dir_flag.empty()) cfg.out_dir = c.out_dir_flag;
  if (c.threads >= 0) cfg.threads = c.threads;
  cfg.validate();
  set_thread_cap(cfg.threads);
  return cfg;
}

void ensure_dir(const std::string& d) { fs::create_directories(d); }

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path);
  f << text;
}

int run_build(const RunConfig& cfg) {
  Tiling t = Tiling::build(DiameterSequence::checked(cfg.diameters));
  ensure_dir(cfg.out_dir);
  write_text(cfg.out_dir + "/tiling.json", t.to_json() + "\n");
  std::cout << "tiling.json written (" << t.strip_count() << " strips, truncation at "
            << t.truncation_x() << ")\n";
  return 0;
}

struct CheckRow {
  std::string name;
  bool pass;
  std::string detail;
};

int run_check(const RunConfig& cfg) {
  Tiling t = Tiling::build(DiameterSequence::checked(cfg.diameters));
  std::vector<CheckRow> rows;

  {
    ContinuityReport cr = continuity_check(t, 10000);
    rows.push_back({"continuity max gap <= 1e-5", cr.max_gap <= 1e-5,
                    "gap " + std::to_string(cr.max_gap)});
  }
  {
    bool ok = true;
    for (int k = 0; k < 512; ++k) {
      Complex z{-8.0 + 0.037 * k, 0.618 + 0.011 * k};
      try {
        LogPolar a = eval_F(t, z), b = eval_F(t, std::conj(z));
        if (a.log_mod != b.log_mod || a.arg != -b.arg) ok = false;
      } catch (const OutsideModelError&) {
      }
    }
    rows.push_back({"symmetry F(conj z) = conj F(z) exact", ok, ""});
  }
  {
    bool ok = true;
    std::string detail;
    for (const Diamond& D : t.diamonds()) {
      std::vector<Complex> curve;
      int m = 64 * D.diameter;
      for (int k = 0; k < m; ++k) {
        double th = kTwoPi * k / m;
        BoundaryAngle ba = boundary_angle(t, D.index, th);
        curve.push_back(Complex(D.center, 0) + std::polar(0.999 * ba.R, th));
      }
      double w = winding_degree(t, curve, {0, 0});
      if (std::abs(w - D.diameter) > 1e-6) ok = false;
      detail += "dP_" + std::to_string(D.index) + "=" +
                std::to_string(static_cast<int>(std::lround(w))) + " ";
    }
    rows.push_back({"winding degree over each diamond boundary", ok, detail});
  }
  {
    // the last vertex sits on the truncation rail; certify it in a chain
    // extended by one guard diamond (F is tile-local, values to the right of
    // the cut are identical)
    std::vector<int> ext = cfg.diameters;
    ext.push_back(2);
    Tiling tg = Tiling::build(DiameterSequence::checked(ext));
    bool ok = true;
    CriticalPointList cps = critical_points(t);
    for (const auto& c : cps.vertices) {
      std::vector<Complex> circle;
      for (int k = 0; k < 256; ++k)
        circle.push_back(c.point + std::polar(1e-3, kTwoPi * k / 256));
      bool last = std::abs(c.point.real() - t.truncation_x()) < 1e-12;
      double w = winding_degree(last ? tg : t, circle, c.image);
      if (std::abs(w - 2.0) > 1e-6) ok = false;
    }
    rows.push_back({"local degree 2 at the real vertices", ok,
                    std::to_string(cps.vertices.size()) + " vertices"});
  }
  {
    DilatationStats st = dilatation_stats(t, cfg.window, cfg.nx, cfg.ny);
    rows.push_back({"sampled max |mu| < 0.75", st.max_abs < 0.75,
                    "max " + std::to_string(st.max_abs) + ", K " + std::to_string(st.K)});
  }
  {
    bool ok = true;
    for (double r : {2.0, 10.0}) {
      double B = bound_on_disk(t, r);
      double sup = 0;
      for (int k = 0; k < 20000; ++k) {
        Complex z = halton_point(k, Rect{-r, r, -r, r});
        if (std::abs(z) > r) continue;
        try {
          LogPolar v = eval_F(t, z);
          sup = std::max(sup, v.log_mod);
        } catch (const OutsideModelError&) {
        }
      }
      if (sup > std::log(B)) ok = false;
    }
    rows.push_back({"sampled sup |F| on |z|<=r below B(r)", ok, ""});
  }

  bool all = true;
  for (const auto& r : rows) {
    std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ")";
    std::cout << "\n";
    all = all && r.pass;
  }
  if (!all) {
    for (const auto& r : rows)
      if (!r.pass) std::cerr << "failing check: " << r.name << "\n";
  }
  return all ? 0 : 1;
}

int run_mu(const RunConfig& cfg) {
  Tiling t = Tiling::build(DiameterSequence::checked(cfg.diameters));
  ComplexGrid g = mu_grid(t, cfg.window, cfg.nx, cfg.ny);
  ensure_dir(cfg.out_dir);
  g.write_binary(cfg.out_dir + "/mu.grid");
  DilatationStats st = dilatation_stats(g);
  write_text(cfg.out_dir + "/mu_stats.json", st.to_json() + "\n");
  std::cout << "mu.grid + mu_stats.json written (max |mu| = " << st.max_abs << ")\n";
  return st.max_abs < 1.0 ? 0 : 1;
}

int run_solve(const RunConfig& cfg) {
  Tiling t = Tiling::build(DiameterSequence::checked(cfg.diameters));
  QcSolution sol = solve_for_tiling(t, cfg.solver);
  ensure_dir(cfg.out_dir);
  sol.psi.write_binary(cfg.out_dir + "/psi.grid");
  sol.psi_zbar.write_binary(cfg.out_dir + "/psi_zbar.grid");
  std::ostringstream os;
  os << "{\n  \"iterations\": " << sol.iterations << ",\n  \"residual_sup\": "
     << sol.residual_sup << ",\n  \"mu_sup\": " << sol.mu_sup << "\n}\n";
  write_text(cfg.out_dir + "/solve.json", os.str());
  std::cout << "psi.grid written (" << sol.iterations << " iterations, residual "
            << sol.residual_sup << ")\n";
  return sol.residual_sup < cfg.solver.tol * 10 ? 0 : 1;
}

int run_render(const RunConfig& cfg) {
  Tiling t = Tiling::build(DiameterSequence::checked(cfg.diameters));
  BasinRender r = render_basin(t, cfg.window, cfg.nx, cfg.ny, cfg.cap);
  auto recs = component_metrics(r, t);
  ensure_dir(cfg.out_dir);
  write_ppm(r, cfg.out_dir + "/basin.ppm");
  write_component_csv(recs, cfg.out_dir + "/components.csv");
  std::cout << "basin.ppm + components.csv written (" << r.n_components
            << " components)\n";
  return 0;
}

int run_plan(const RunConfig& cfg) {
  PlannerState st = plan_diameters(cfg.planner_stages, cfg.solver, cfg.planner_budget);
  ensure_dir(cfg.out_dir);
  write_text(cfg.out_dir + "/planner.json", st.to_json() + "\n");
  std::cout << "planner.json written (" << st.stages.size() << " stages, complete="
            << (st.complete ? "yes" : "no") << ")\n";
  return st.complete ? 0 : 1;
}

int run_hyper(const RunConfig& cfg) {
  ensure_dir(cfg.out_dir);
  {
    std::ofstream f(cfg.out_dir + "/hyperbolic.csv");
    f << "x,density\n";
    f.precision(17);
    for (int k = 1; k <= 64; ++k) {
      double x = -0.05 * k - 1.0;
      f << x << "," << density_X({x, 0}) << "\n";
    }
  }
  {
    // contraction witness curves for the square-map double, L = 4
    auto step = [](Complex prev, Complex target) {
      Complex r = std::sqrt(target);
      return std::abs(r - prev) <= std::abs(-r - prev) ? r : -r;
    };
    auto seed = [](int, Complex target) {
      Complex r = std::sqrt(target);
      return r.imag() >= 0 ? r : -r;
    };
    std::ofstream f(cfg.out_dir + "/contraction.csv");
    f << "n,re,im,euclid_diam,hyp_len\n";
    f.precision(17);
    for (int n = 0; n <= 4; ++n) {
      ContractionWitness w = contraction_witness(step, seed, 4.0, n, 65);
      for (const Complex& p : w.curve)
        f << n << "," << p.real() << "," << p.imag() << "," << w.euclid_diam << ","
          << w.hyp_len << "\n";
    }
  }
  std::cout << "hyperbolic.csv + contraction.csv written\n";
  return 0;
}

int run_report(const RunConfig& cfg) {
  ensure_dir(cfg.out_dir);
  write_text(cfg.out_dir + "/report.json", build_report(cfg));
  std::cout << "report.json written\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quasiregular surgery lab: model map, dilatation, straightening, "
               "renormalization, basin dynamics"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--config", common.config_path, "JSON config file");
  app.add_option("--diameters", common.diameters_flag,
                 "comma separated even diameters (overrides config)");
  app.add_option("--out", common.out_dir_flag, "output directory");
  app.add_option("--threads", common.threads, "worker cap (0 = hardware)");

  auto* c_build = app.add_subcommand("build", "write the tiling JSON");
  auto* c_check = app.add_subcommand("check", "model-map verification suite");
  auto* c_mu = app.add_subcommand("mu", "coefficient grid + stats");
  auto* c_solve = app.add_subcommand("solve", "Beltrami solve, psi grid + residuals");
  auto* c_render = app.add_subcommand("render", "basin image + component table");
  auto* c_plan = app.add_subcommand("plan", "diameter selection induction");
  auto* c_hyper = app.add_subcommand("hyper", "hyperbolic density table");
  auto* c_report = app.add_subcommand("report", "consolidated witness report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = load_config(common);
    if (c_build->parsed()) return run_build(cfg);
    if (c_check->parsed()) return run_check(cfg);
    if (c_mu->parsed()) return run_mu(cfg);
    if (c_solve->parsed()) return run_solve(cfg);
    if (c_render->parsed()) return run_render(cfg);
    if (c_plan->parsed()) return run_plan(cfg);
    if (c_hyper->parsed()) return run_hyper(cfg);
    if (c_report->parsed()) return run_report(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
