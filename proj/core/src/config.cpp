#include "qcs/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qcs {

using nlohmann::ordered_json;

namespace {
Rect rect_from(const ordered_json& j) {
  return Rect{j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>(),
              j.at(3).get<double>()};
}
ordered_json rect_to(const Rect& r) { return ordered_json{r.x0, r.x1, r.y0, r.y1}; }
}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  RunConfig c;
  if (j.contains("diameters")) c.diameters = j["diameters"].get<std::vector<int>>();
  if (j.contains("window")) c.window = rect_from(j["window"]);
  if (j.contains("nx")) c.nx = j["nx"].get<int>();
  if (j.contains("ny")) c.ny = j["ny"].get<int>();
  if (j.contains("cap")) c.cap = j["cap"].get<int>();
  if (j.contains("solver")) {
    const auto& s = j["solver"];
    if (s.contains("window")) c.solver.window = rect_from(s["window"]);
    if (s.contains("nx")) c.solver.nx = s["nx"].get<int>();
    if (s.contains("ny")) c.solver.ny = s["ny"].get<int>();
    if (s.contains("max_iter")) c.solver.max_iter = s["max_iter"].get<int>();
    if (s.contains("tol")) c.solver.tol = s["tol"].get<double>();
    if (s.contains("taper_frac")) c.solver.taper_frac = s["taper_frac"].get<double>();
    if (s.contains("norm"))
      c.solver.norm = s["norm"].get<std::string>() == "fix01"
                          ? SolverConfig::Norm::Fix01
                          : SolverConfig::Norm::FixPM1;
  }
  if (j.contains("whyburn_epsilon")) c.whyburn_epsilon = j["whyburn_epsilon"].get<double>();
  if (j.contains("planner_stages")) c.planner_stages = j["planner_stages"].get<int>();
  if (j.contains("planner_budget")) c.planner_budget = j["planner_budget"].get<int>();
  if (j.contains("threads")) c.threads = j["threads"].get<int>();
  if (j.contains("out_dir")) c.out_dir = j["out_dir"].get<std::string>();
  c.validate();
  return c;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return from_json_text(os.str());
}

std::string RunConfig::to_json_text() const {
  ordered_json j;
  j["diameters"] = diameters;
  j["window"] = rect_to(window);
  j["nx"] = nx;
  j["ny"] = ny;
  j["cap"] = cap;
  j["solver"] = {{"window", rect_to(solver.window)},
                 {"nx", solver.nx},
                 {"ny", solver.ny},
                 {"max_iter", solver.max_iter},
                 {"tol", solver.tol},
                 {"taper_frac", solver.taper_frac},
                 {"norm", solver.norm == SolverConfig::Norm::Fix01 ? "fix01" : "fixpm1"}};
  j["whyburn_epsilon"] = whyburn_epsilon;
  j["planner_stages"] = planner_stages;
  j["planner_budget"] = planner_budget;
  j["threads"] = threads;
  j["out_dir"] = out_dir;
  return j.dump(2);
}

void RunConfig::validate() const {
  if (nx < 2 || ny < 2 || solver.nx < 2 || solver.ny < 2)
    throw std::invalid_argument("config: resolutions must be >= 2");
  if (window.width() <= 0 || window.height() <= 0)
    throw std::invalid_argument("config: window must be nonempty");
  if (cap < 1) throw std::invalid_argument("config: cap >= 1");
  if (solver.tol <= 0) throw std::invalid_argument("config: solver tol > 0");
  if (whyburn_epsilon <= 0) throw std::invalid_argument("config: epsilon > 0");
  if (planner_stages < 1) throw std::invalid_argument("config: planner stages >= 1");
  if (threads < 0) throw std::invalid_argument("config: threads >= 0");
}

}  // namespace qcs
