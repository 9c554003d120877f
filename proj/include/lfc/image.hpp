#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lfc {

/// Row-major single-channel plane.
template <typename T>
class Plane {
public:
  Plane() = default;
  Plane(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  std::span<T> row(int y) { return {data_.data() + index(0, y), static_cast<std::size_t>(width_)}; }
  std::span<const T> row(int y) const {
    return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  bool operator==(const Plane&) const = default;

private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using ScalarMap = Plane<float>;
using BoolMap = Plane<std::uint8_t>;
using Rgb = std::array<float, 3>;

/// Interleaved RGB image with samples in [0,1].
class ViewImage {
public:
  static constexpr int kChannels = 3;

  ViewImage() = default;
  ViewImage(int width, int height, float fill = 0.0f)
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) * kChannels, fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }
  bool same_shape(const ViewImage& o) const { return width_ == o.width_ && height_ == o.height_; }

  float& at(int x, int y, int c) { return data_[index(x, y) + static_cast<std::size_t>(c)]; }
  float at(int x, int y, int c) const { return data_[index(x, y) + static_cast<std::size_t>(c)]; }

  Rgb pixel(int x, int y) const {
    const std::size_t i = index(x, y);
    return {data_[i], data_[i + 1], data_[i + 2]};
  }
  void set_pixel(int x, int y, const Rgb& v) {
    const std::size_t i = index(x, y);
    data_[i] = v[0];
    data_[i + 1] = v[1];
    data_[i + 2] = v[2];
  }

  bool contains(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  std::vector<float>& data() { return data_; }
  const std::vector<float>& data() const { return data_; }

  bool operator==(const ViewImage&) const = default;

private:
  std::size_t index(int x, int y) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
           kChannels;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<float> data_;
};

/// Bilinear lookup at a real-valued position. Taps with zero weight are
/// skipped, so integer positions never touch neighbours. Returns false when
/// any tap with nonzero weight falls outside the image.
bool sample_bilinear(const ViewImage& img, double fx, double fy, Rgb& out);
bool sample_bilinear(const ScalarMap& map, double fx, double fy, float& out);

/// Euclidean RGB distance divided by sqrt(3); lies in [0,1] for [0,1] inputs.
double normalized_rgb_distance(const Rgb& a, const Rgb& b);

}  // namespace lfc
