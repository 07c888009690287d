#pragma once

#include <string>
#include <vector>

#include "qcs/beltrami.hpp"
#include "qcs/types.hpp"

namespace qcs {

// Run configuration: parse -> validate -> echo; the echoed form reproduces
// the run byte-identically.
struct RunConfig {
  std::vector<int> diameters{2, 4, 2, 8};
  Rect window{-20, 4, -8, 8};
  int nx = 512, ny = 512;
  int cap = 64;                  // orbit cap for rendering
  SolverConfig solver;
  double whyburn_epsilon = 0.1;
  int planner_stages = 3;
  int planner_budget = 24;       // max solves
  int threads = 0;               // 0 = hardware
  std::string out_dir = "out";

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);
  std::string to_json_text() const;  // canonical echo
  void validate() const;
};

}  // namespace qcs
