#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qcs/types.hpp"

namespace qcs {

// Boundary renormalization: conjugacy of an expanding degree-2 circle map to
// the squaring map by binary itineraries, the explicit disk extension H of
// the boundary data, and the assembly of the renormalized map.

struct CircleMapModel {
  // continuous lift with l(t + 2pi) = l(t) + 4pi, l(0) = 0, l' > 1
  std::function<double(double)> lift;
  double sampled_min_derivative = 0;

  double map(double theta) const {
    double v = std::fmod(lift(theta), kTwoPi);
    return v < 0 ? v + kTwoPi : v;
  }
  // solve lift(theta) = target for theta in [lo, hi] (monotone bisection)
  double invert_lift(double target, double lo, double hi) const;
  void validate(int samples = 4096) const;  // throws when not expanding/degree 2
};

CircleMapModel squaring_model();
// documented test map: lift 2 theta + 0.2 sin theta
CircleMapModel perturbed_model();

struct ConjugacyTable {
  int depth = 0;
  int n = 0;
  std::vector<double> theta;  // uniform sample angles in [0, 2pi)
  std::vector<double> h;      // conjugacy values, monotone, h(0) = 0
  double residual = 0;        // sup |h(G(theta)) - 2 h(theta)| mod 2pi
  double qs_M = 0;            // sampled quasi-symmetry estimate
  long ambiguous_points = 0;  // was within 1e-12 of a partition endpoint

  double eval(double th) const;  // monotone periodic PL interpolation
  std::string to_csv() const;    // header theta,h
};

// h maps the depth-m cylinder of theta to the dyadic interval with the same
// binary address, linearly within the cylinder.
ConjugacyTable circle_conjugacy(const CircleMapModel& model, int depth,
                                int n_samples = 4096);

// Lemma-style real-axis boundary grid: h(1 - lambda^-k) = 1 - 2^-k, linear
// between, odd, fixing 0 and +-1.
double real_axis_grid(double lambda, double x);

// Conformal map of the closed upper half disk onto the disk fixing -1, 1 and
// sending 0 to -i.
Complex halfdisk_map(Complex z);
Complex halfdisk_map_inverse(Complex w);

// Quasiconformal extension H of boundary data to the disk: circle part on
// the upper semicircle (angle map), real part on [-1, 1], mirrored below the
// axis; H(0) = 0 exactly after a real Mobius correction.
class DiskExtension {
 public:
  DiskExtension(std::function<double(double)> circle_angle_map,
                std::function<double(double)> real_map);
  Complex eval(Complex z) const;

 private:
  std::function<double(double)> circle_h_;
  std::function<double(double)> real_h_;
  double mobius_a_ = 0;  // real, post-composed (z - a)/(1 - a z)
  Complex eval_raw(Complex z) const;
  double boundary_line_map(double x) const;  // conjugated map on the real line
};

// Renormalized assembly: G outside the closed disk, H^{-1} o square o H inside.
struct GhatAssembly {
  std::function<Complex(Complex)> G_exterior;  // defined for |z| >= 1
  const DiskExtension* H = nullptr;

  Complex eval(Complex z) const;
  // H^{-1} by damped fixed-point/Newton search on the disk
  Complex invert_H(Complex w) const;
};

}  // namespace qcs
