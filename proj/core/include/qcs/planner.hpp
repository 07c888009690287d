#pragma once

#include <string>
#include <vector>

#include "qcs/beltrami.hpp"
#include "qcs/dynamics.hpp"
#include "qcs/tiling.hpp"

namespace qcs {

// Inductive diameter selection in the one-step straightened plane: stage l
// doubles d_l until the straightened trace of diamond l crosses a unit-width
// annulus and clears the spherical-diameter floor fixed at stage 0.

struct StageCertificate {
  int stage = 0;
  int chosen_d = 0;
  double psi_a_abs = 0;     // |psi(a_l)|, a_l = right vertex
  double psi_b_abs = 0;     // |psi(b_l)|, b_l = left vertex
  double annulus_r = 0;     // r_l = max(R_hat, |psi(a_l)|)
  double margin_inner = 0;  // r_l - |psi(a_l)|
  double margin_outer = 0;  // |psi(b_l)| - (r_l + 1)
  double chordal_diam = 0;  // spherical diameter of the traced boundary
  // stage 1 only: |psi| at the tip of the depth-1 pullback component of the
  // first diamond (the preimage blob attached to the circle at i); driving it
  // past R_hat + 1 certifies the fixed-annulus crossing of a pulled-back
  // component, which is the third spherical-diameter witness
  double pullback_tip_abs = 0;
  double pullback_witness_chordal = 0;
  int solves = 0;
  bool satisfied = false;
};

struct PlannedComponent {
  int id = 0;  // 0 = straightened disk, n >= 1 = straightened diamond n
  double a = 0, b = 0;
  double diam_euclid = 0;
  double diam_sph = 0;
};

struct PlannerState {
  double R_hat = 0;
  double epsilon0 = 0;  // 1/sqrt((1+R^2)(1+(R+1)^2))
  std::vector<int> diameters;
  std::vector<StageCertificate> stages;
  std::vector<PlannedComponent> components;
  bool complete = false;
  int failed_stage = 0;
  int total_solves = 0;
  std::string coordinates = "straightened (psi) plane, one-step";

  std::string to_json() const;
};

// Runs `stages` stages with at most `budget` Beltrami solves in total.  The
// solver window is fitted to each candidate tiling at the configured
// resolution.
PlannerState plan_diameters(int stages, const SolverConfig& base, int budget = 24);

// helper shared with the planner and the report: solve for a given tiling
// with a fitted window
QcSolution solve_for_tiling(const Tiling& t, const SolverConfig& base);
Rect planner_window(const Tiling& t);

// Basin components measured in the straightened plane: every labeled
// component of the render is mapped through psi and measured by its extremal
// samples; records are sorted by decreasing spherical diameter.
std::vector<PlannedComponent> straightened_components(const QcSolution& sol,
                                                      const BasinRender& render,
                                                      int max_records = 64);

}  // namespace qcs
