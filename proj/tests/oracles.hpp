#pragma once

// Test-only reference implementations. These deliberately avoid the library's
// sampling and search code so that agreement is meaningful.

#include <cstdint>

#include "lfc/light_field.hpp"
#include "lfc/render.hpp"
#include "lfc/synthetic.hpp"

namespace lfc::oracle {

/// Forward projection: every valid central pixel (x', y') lands at
/// (x' + s*d, y' + t*d) and is splatted onto every target pixel closer than
/// `epsilon`; each target keeps the largest disparity it receives.
DisparityField forward_project(const DisparityField& central, ViewIndex view, double epsilon);

/// Independent re-implementation of the calibration objective.
double calibration_objective(const LightField& lf, const ScalarMap& inverse_depth, double alpha, double beta);

struct ScanResult {
  double alpha = 0.0;
  double beta = 0.0;
  double value = 0.0;
};

/// Exhaustive scan of the objective on a regular (alpha, beta) lattice.
ScanResult grid_scan(const LightField& lf, const ScalarMap& inverse_depth, double a0, double a1, double b0,
                     double b1, double step);

/// Two layers: full-frame background at disparity 0 and a centred front
/// square of side size/3 at `front_disparity`.
SyntheticScene two_layer_scene(int size, int radius, int front_disparity = 2, std::uint64_t seed = 7);

/// Three nested layers with disparities 0, 1, 2 (used for calibration).
SyntheticScene three_layer_scene(int size, int radius, std::uint64_t seed = 11);

/// Full-frame background at d = -1 and a centred front square at d = +2.
SyntheticScene mixed_sign_scene(int size, int radius, std::uint64_t seed = 21);

/// Horizontal-parallax field with a smooth vertical step edge: view s is
/// f(x - s*d) with f ramping from `lo` to `hi` over 4 px centred on `edge`.
/// Exact for real-valued d, unlike the integer-disparity generator.
ViewSet ramp_edge_views(int size, int radius, double d, double edge, float lo = 0.2f, float hi = 0.8f);

/// Per-row position where the luminance crosses the midpoint between the row's
/// values at x0 and x1, then a least-squares slope of position against row.
double epi_edge_slope(const EpipolarImage& epi, int x0, int x1);

/// Per-row shift that best aligns [x0, x1) of the middle row (SSD, parabolic
/// sub-pixel refinement), then a least-squares slope of shift against row.
double epi_track_slope(const EpipolarImage& epi, int x0, int x1, int max_shift);

/// Every pixel is set to the same colour.
ViewImage constant_image(int w, int h, const Rgb& value);

}  // namespace lfc::oracle
