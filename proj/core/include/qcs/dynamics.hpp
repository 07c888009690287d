#pragma once

#include <string>
#include <vector>

#include "qcs/model_map.hpp"
#include "qcs/tiling.hpp"

namespace qcs {

enum class OrbitStatus : std::uint8_t { Converged, Escaping, Undecided };

struct OrbitRecord {
  OrbitStatus status = OrbitStatus::Undecided;
  int first_entry = -1;       // minimal time with F^t(z) in the open disk
  bool truncated = false;     // orbit left the truncated model
  int steps = 0;
  LogPolar final_value;
  // component signature data: the diamond the orbit passed through one step
  // before entering the disk (0 when the start is in the disk), and whether
  // the start point lies in a mirrored strip
  int gate_diamond = 0;
  bool strip_mirrored = false;
};

OrbitRecord iterate_classify(const Tiling& t, Complex z, int cap,
                             double escape_log_threshold);

struct BasinRender {
  Rect window;
  int nx = 0, ny = 0, cap = 0;
  double escape_log_threshold = 0;
  std::vector<std::uint8_t> status;   // OrbitStatus per pixel
  std::vector<std::int32_t> time;     // first-entry time, -1 otherwise
  std::vector<std::int64_t> signature;
  std::vector<std::int32_t> label;    // component id, -1 none
  int n_components = 0;

  // Centered form: for a window symmetric about an axis the centers are
  // exactly antisymmetric in floating point, which keeps the label image
  // mirror-symmetric (orbits near the Julia boundary amplify 1-ulp skews).
  Complex pixel_center(int ix, int iy) const {
    double cx = 0.5 * (window.x0 + window.x1);
    double cy = 0.5 * (window.y0 + window.y1);
    double x = cx + (2 * ix + 1 - nx) * (window.width() / (2.0 * nx));
    double y = cy + (2 * iy + 1 - ny) * (window.height() / (2.0 * ny));
    return {x, y};
  }
};

// Per-pixel classification plus 4-connected flood fill over converged pixels
// with equal signature (first-entry time, gate diamond, strip side).
BasinRender render_basin(const Tiling& t, const Rect& window, int nx, int ny,
                         int cap);

struct ComponentRecord {
  int id = 0;
  long pixels = 0;
  int first_entry = -1;
  bool has_real_trace = false;
  double a = 0, b = 0;  // max / min real-axis intersections
  double diam_euclid = 0;
  double diam_sph = 0;
};

std::vector<ComponentRecord> component_metrics(const BasinRender& r,
                                               const Tiling& t);

// PPM P6, 8-bit: grayscale t mod 256 for converged, red escaping, black
// undecided; top row is max Im.
void write_ppm(const BasinRender& r, const std::string& path);
void write_component_csv(const std::vector<ComponentRecord>& recs,
                         const std::string& path);

struct WhyburnWitness {
  int component_id = 0;
  double diam_sph = 0;
};
struct WhyburnReport {
  double epsilon = 0;
  std::vector<WhyburnWitness> witnesses;
  std::string verdict;
};
WhyburnReport whyburn_report(const std::vector<ComponentRecord>& recs,
                             double epsilon);

}  // namespace qcs
