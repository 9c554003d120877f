#pragma once

#include <vector>

#include "lfc/light_field.hpp"

namespace lfc {

struct FocalSlice {
  double slope = 0.0;
  ViewImage image;         ///< coverage-normalized mean; 0 where coverage is 0
  Plane<int> coverage;     ///< number of views contributing to each pixel
};

/// Shift-and-add refocus: mean over views of I_{s,t}(x + s*slope, y + t*slope),
/// skipping taps that leave the image.
FocalSlice refocus(const ViewSet& views, double slope);

struct EpipolarImage {
  bool horizontal = true;  ///< true: fixed row y and t; rows are s. false: fixed column x and s; rows are t.
  int fixed_coord = 0;     ///< y (horizontal) or x (vertical)
  int fixed_view = 0;      ///< t (horizontal) or s (vertical)
  ViewImage image;
};

/// Stacks row y of I_{s,t} for increasing s.
EpipolarImage extract_epi(const ViewSet& views, int y, int t = 0);
/// Stacks column x of I_{s,t} for increasing t; output rows are t, columns are y.
EpipolarImage extract_epi_vertical(const ViewSet& views, int x, int s = 0);

/// Mean over interior pixels and channels of the 3x3 neighbourhood variance.
/// `border` pixels on each side are skipped in addition to the 1-px window border.
double mean_local_variance(const ViewImage& img, int border = 0);

}  // namespace lfc
