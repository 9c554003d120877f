#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "lfc/light_field.hpp"

namespace lfc {

/// Axis-aligned rectangle in central-view pixel coordinates; may extend
/// past the frame so that shifted layers still cover it.
struct Rect {
  int x0 = 0;
  int y0 = 0;
  int width = 0;
  int height = 0;

  bool contains(int x, int y) const { return x >= x0 && y >= y0 && x < x0 + width && y < y0 + height; }
};

/// Fronto-parallel textured plane with an integer disparity.
struct SceneLayer {
  Rect extent;
  int disparity = 0;
  std::uint64_t texture_seed = 0;
};

/// Layers are ordered back-to-front by strictly increasing disparity.
struct SyntheticScene {
  std::vector<SceneLayer> layers;
};

struct SyntheticLightField {
  LightField light_field;
  std::map<ViewIndex, DisparityField> ground_truth;
};

/// Renders every view of the scene. View (s,t) sees the central-view point
/// (x', y') of a layer with disparity d at (x' + s*d, y' + t*d). Ground-truth
/// validity is false wherever the visible surface is hidden in, or outside,
/// the central view. Samples are multiples of 1/255 so PNG storage is exact.
SyntheticLightField generate_synthetic(const SyntheticScene& scene, int radius_s, int radius_t, int width,
                                       int height);

/// Deterministic multi-octave value noise, quantized to 8 bits.
Rgb procedural_texture(std::uint64_t seed, int u, int v);

/// Depth that calibrates to the given disparity: 1 / ((d - beta) / alpha).
/// Requires (d - beta) / alpha > 0 at every pixel.
DepthMap depth_from_disparity(const ScalarMap& disparity, double alpha, double beta);

/// Background layer covering the frame for every view of a grid of the given
/// radius.
SceneLayer full_frame_layer(int disparity, std::uint64_t seed, int radius_s, int radius_t, int width, int height);

}  // namespace lfc
