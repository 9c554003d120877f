#pragma once

#include "lfc/light_field.hpp"

namespace lfc {

/// Maps inverse depth to pixel disparity: D = alpha / depth + beta.
struct CalibrationParams {
  double alpha = 1.0;
  double beta = 0.0;
  double residual = 0.0;  ///< mean normalized RGB error at (alpha, beta)
  bool degenerate = false;
};

struct CalibrationOptions {
  int alpha_steps = 64;
  int beta_steps = 64;
  double beta_limit = 8.0;       ///< beta searched in [-beta_limit, beta_limit]
  double max_disparity_fraction = 0.25;  ///< alpha_hi keeps max |D| <= fraction * width
  int lattice_levels = 8;   ///< shrinking local 2-D lattices after the coarse grid
  int lattice_points = 9;   ///< lattice points per axis (odd, so the incumbent is kept)
  int refine_rounds = 3;    ///< alternating golden-section rounds at the finest scale
};

struct CalibrationResult {
  CalibrationParams params;
  DisparityField central;
};

/// Per-pixel 1/depth. Throws on any non-positive or non-finite sample.
ScalarMap invert_depth(const DepthMap& depth);

/// Mean over pixels of |I_{1,0}(x,y) - I_{0,0}(x - D(x,y), y)| / sqrt(3) with
/// D = alpha * inverse + beta. Samples whose bilinear footprint leaves the
/// image are excluded; returns 1 when nothing is left.
double calibration_objective(const LightField& lf, const ScalarMap& inverse_depth, double alpha, double beta);

/// Grid search over (alpha, beta), shrinking local lattices, then alternating
/// golden-section refinement. Uses only the (0,0) -> (1,0) pair. Flags the result as
/// degenerate for flat views or when zero disparity fits as well as the
/// optimum (no baseline).
CalibrationResult calibrate(const LightField& lf, const CalibrationOptions& opts = {});

/// D = alpha * inverse + beta, valid everywhere.
DisparityField apply_calibration(const ScalarMap& inverse_depth, double alpha, double beta);

}  // namespace lfc
