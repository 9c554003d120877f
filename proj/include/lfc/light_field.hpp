#pragma once

#include <compare>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lfc/image.hpp"

namespace lfc {

/// Signed subaperture offset; (0,0) is the central view.
struct ViewIndex {
  int s = 0;
  int t = 0;

  bool is_central() const { return s == 0 && t == 0; }

  bool operator==(const ViewIndex&) const = default;
  // Row-major: t outer, s inner.
  std::strong_ordering operator<=>(const ViewIndex& o) const {
    if (auto c = t <=> o.t; c != 0) return c;
    return s <=> o.s;
  }
};

std::string to_string(const ViewIndex& v);

using ViewSet = std::map<ViewIndex, ViewImage>;

/// Uncalibrated relative depth of the central view; strictly positive.
struct DepthMap {
  ScalarMap values;
};

/// Per-view disparity in pixels per unit baseline step. Invalid pixels hold
/// NaN in `values` and 0 in `valid`.
struct DisparityField {
  ViewIndex view;
  ScalarMap values;
  BoolMap valid;

  int width() const { return values.width(); }
  int height() const { return values.height(); }
  bool is_valid(int x, int y) const { return valid(x, y) != 0; }

  /// Fully valid field, e.g. the calibrated central map.
  static DisparityField dense(ViewIndex view, ScalarMap values);
  /// Reconstructs validity from NaN positions.
  static DisparityField from_nan_encoded(ViewIndex view, ScalarMap values);
};

struct ConfidenceMask {
  ViewIndex view;
  ScalarMap values;

  int width() const { return values.width(); }
  int height() const { return values.height(); }
};

/// Complete (2rs+1)x(2rt+1) grid of equally sized views.
class LightField {
public:
  /// Validates grid completeness, shapes and sample ranges.
  LightField(int radius_s, int radius_t, ViewSet views, std::optional<DepthMap> depth = std::nullopt);

  int radius_s() const { return radius_s_; }
  int radius_t() const { return radius_t_; }
  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t view_count() const { return views_.size(); }

  bool contains(ViewIndex v) const;
  const ViewImage& view(ViewIndex v) const;
  const ViewImage& central() const { return view({0, 0}); }
  const ViewSet& views() const { return views_; }
  const std::optional<DepthMap>& central_depth() const { return depth_; }

  /// Returns a copy with a different (or no) depth map attached.
  LightField with_depth(std::optional<DepthMap> depth) const;

private:
  int radius_s_;
  int radius_t_;
  int width_ = 0;
  int height_ = 0;
  ViewSet views_;
  std::optional<DepthMap> depth_;
};

/// All indices of a grid in row-major order.
std::vector<ViewIndex> grid_indices(int radius_s, int radius_t);

// --- storage -------------------------------------------------------------

/// Manifest schema: grid_radius_s, grid_radius_t, view_pattern (printf
/// pattern taking s then t), width, height, optional depth. Relative paths
/// resolve against the manifest's directory.
struct Manifest {
  int grid_radius_s = 0;
  int grid_radius_t = 0;
  std::string view_pattern;
  std::optional<std::string> depth;
  int width = 0;
  int height = 0;

  std::string view_filename(ViewIndex v) const;
};

Manifest read_manifest(const std::filesystem::path& path);
void write_manifest(const Manifest& m, const std::filesystem::path& path);

LightField load_light_field(const std::filesystem::path& manifest_path);

/// Writes every view as PNG (and the depth map as PFM when present) next to
/// a manifest. Returns the manifest that was written.
Manifest save_light_field(const LightField& lf, const std::filesystem::path& manifest_path,
                          const std::string& view_pattern = "view_s%d_t%d.png",
                          const std::string& depth_name = "depth.pfm");

/// Saves/loads a view set using an existing manifest's grid for naming.
void save_views(const ViewSet& views, const std::filesystem::path& dir, const std::string& pattern);

void save_map(const DisparityField& field, const std::filesystem::path& path);
void save_map(const ConfidenceMask& mask, const std::filesystem::path& path);
void save_map(const DepthMap& depth, const std::filesystem::path& path);
void save_map(const ScalarMap& map, const std::filesystem::path& path);

DisparityField load_disparity(const std::filesystem::path& path, ViewIndex view);
ConfidenceMask load_mask(const std::filesystem::path& path, ViewIndex view);
DepthMap load_depth(const std::filesystem::path& path);

/// Standard per-view file names used by the CLI and downstream consumers.
std::string disparity_filename(ViewIndex v);
std::string mask_filename(ViewIndex v);

}  // namespace lfc
