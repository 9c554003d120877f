#include "lfc/synthetic.hpp"

#include <array>
#include <cmath>
#include <limits>

#include "lfc/error.hpp"

namespace lfc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

double lattice(std::uint64_t seed, int octave, int cx, int cy, int channel) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(octave) * 0x100000001B3ull);
  h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(cx)));
  h = splitmix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cy)) << 21));
  h = splitmix64(h ^ static_cast<std::uint64_t>(channel + 1));
  return static_cast<double>(h >> 11) * (1.0 / 9007199254740992.0);  // [0,1)
}

// Cell sizes and weights: coarse octaves give calibration a basin of
// attraction, fine ones give refocusing and matching something to lock on.
constexpr std::array<int, 5> kCell = {16, 8, 4, 2, 1};
constexpr std::array<double, 5> kWeight = {0.30, 0.22, 0.20, 0.16, 0.12};

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

}  // namespace

Rgb procedural_texture(std::uint64_t seed, int u, int v) {
  Rgb out{};
  for (int c = 0; c < 3; ++c) {
    double acc = 0.0;
    for (std::size_t o = 0; o < kCell.size(); ++o) {
      const int cell = kCell[o];
      const int cx = floor_div(u, cell);
      const int cy = floor_div(v, cell);
      const double fx = static_cast<double>(u - cx * cell) / cell;
      const double fy = static_cast<double>(v - cy * cell) / cell;
      const int oi = static_cast<int>(o);
      const double a = lattice(seed, oi, cx, cy, c);
      const double b = lattice(seed, oi, cx + 1, cy, c);
      const double d = lattice(seed, oi, cx, cy + 1, c);
      const double e = lattice(seed, oi, cx + 1, cy + 1, c);
      acc += kWeight[o] * ((1 - fx) * (1 - fy) * a + fx * (1 - fy) * b + (1 - fx) * fy * d + fx * fy * e);
    }
    const double val = 0.05 + 0.9 * acc;
    out[static_cast<std::size_t>(c)] = static_cast<float>(std::lround(val * 255.0)) / 255.0f;
  }
  return out;
}

SceneLayer full_frame_layer(int disparity, std::uint64_t seed, int radius_s, int radius_t, int width,
                            int height) {
  const int mx = radius_s * std::abs(disparity);
  const int my = radius_t * std::abs(disparity);
  return SceneLayer{Rect{-mx, -my, width + 2 * mx, height + 2 * my}, disparity, seed};
}

SyntheticLightField generate_synthetic(const SyntheticScene& scene, int radius_s, int radius_t, int width,
                                       int height) {
  if (scene.layers.empty()) throw DomainError("synthetic scene has no layers");
  if (width <= 0 || height <= 0) throw DomainError("synthetic dimensions must be positive");
  if (radius_s < 0 || radius_t < 0) throw DomainError("grid radius must be non-negative");
  for (std::size_t i = 1; i < scene.layers.size(); ++i) {
    if (scene.layers[i].disparity <= scene.layers[i - 1].disparity) {
      throw DomainError("layers must be sorted back-to-front by strictly increasing disparity");
    }
  }

  const auto& layers = scene.layers;
  const int n_layers = static_cast<int>(layers.size());
  auto top_layer_at = [&](int x, int y) {
    for (int i = n_layers - 1; i >= 0; --i) {
      if (layers[static_cast<std::size_t>(i)].extent.contains(x, y)) return i;
    }
    return -1;
  };

  ViewSet views;
  std::map<ViewIndex, DisparityField> truth;
  constexpr float kNaN = std::numeric_limits<float>::quiet_NaN();

  for (const ViewIndex& v : grid_indices(radius_s, radius_t)) {
    ViewImage img(width, height);
    DisparityField gt{v, ScalarMap(width, height, kNaN), BoolMap(width, height, 0)};
    for (int y = 0; y < height; ++y) {
      for (int x = 0; x < width; ++x) {
        int hit = -1;
        int cx = 0, cy = 0;
        for (int i = n_layers - 1; i >= 0; --i) {
          const SceneLayer& L = layers[static_cast<std::size_t>(i)];
          cx = x - v.s * L.disparity;
          cy = y - v.t * L.disparity;
          if (L.extent.contains(cx, cy)) {
            hit = i;
            break;
          }
        }
        if (hit < 0) {
          throw DomainError("layer shifted out of texture bounds: view " + to_string(v) + " pixel (" +
                            std::to_string(x) + "," + std::to_string(y) + ") is uncovered");
        }
        const SceneLayer& L = layers[static_cast<std::size_t>(hit)];
        img.set_pixel(x, y, procedural_texture(L.texture_seed, cx, cy));
        const bool seen_centrally = cx >= 0 && cy >= 0 && cx < width && cy < height && top_layer_at(cx, cy) == hit;
        if (seen_centrally) {
          gt.values(x, y) = static_cast<float>(L.disparity);
          gt.valid(x, y) = 1;
        }
      }
    }
    views.emplace(v, std::move(img));
    truth.emplace(v, std::move(gt));
  }
  return {LightField(radius_s, radius_t, std::move(views)), std::move(truth)};
}

DepthMap depth_from_disparity(const ScalarMap& disparity, double alpha, double beta) {
  DepthMap out{ScalarMap(disparity.width(), disparity.height())};
  for (std::size_t i = 0; i < disparity.size(); ++i) {
    const double inv = (static_cast<double>(disparity.data()[i]) - beta) / alpha;
    if (!(inv > 0.0) || !std::isfinite(inv)) {
      throw DomainError("disparity " + std::to_string(disparity.data()[i]) +
                        " maps to a non-positive inverse depth under the given alpha/beta");
    }
    out.values.data()[i] = static_cast<float>(1.0 / inv);
  }
  return out;
}

}  // namespace lfc
