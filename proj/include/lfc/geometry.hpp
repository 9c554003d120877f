#pragma once

#include <map>

#include "lfc/light_field.hpp"

namespace lfc {

struct ReversalConfig {
  double epsilon = 1.4;        ///< correspondence acceptance radius, pixels
  double search_margin = 1.0;  ///< dilation of the epipolar bounding box, pixels
};

struct WarpResult {
  ViewImage image;
  BoolMap defined;
};

/// Samples `source` at (x - s*D(x,y), y - t*D(x,y)) with the view index taken
/// from `disp`. Undefined where D is invalid or the footprint leaves the image.
WarpResult backward_warp(const ViewImage& source, const DisparityField& disp);

/// Builds D_{s,t} from D_{0,0}: for each target pixel, gathers the central
/// pixels that land within epsilon of it and keeps the front-most one.
DisparityField reverse_disparity(const DisparityField& central, ViewIndex view, const ReversalConfig& cfg = {});

/// M = 1 - |I_{s,t} - W(I_{0,0}, D_{s,t})| / sqrt(3); 0 where the warp is undefined.
ConfidenceMask confidence_mask(const LightField& lf, const DisparityField& disp);

struct Geometry {
  std::map<ViewIndex, DisparityField> disparity;
  std::map<ViewIndex, ConfidenceMask> masks;
};

/// Reverses every non-central view; the central view gets D_{0,0} and an
/// all-ones mask. Per-view failures are collected into one error.
Geometry reverse_all(const LightField& lf, const DisparityField& central, const ReversalConfig& cfg = {});

}  // namespace lfc
