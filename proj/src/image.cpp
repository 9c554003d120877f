#include "lfc/image.hpp"

#include <cmath>

namespace lfc {

namespace {

struct Footprint {
  int x0, y0;
  double fx, fy;  // fractional parts
  bool ok;
};

template <typename Img>
Footprint footprint(const Img& img, double x, double y) {
  Footprint f{};
  if (!std::isfinite(x) || !std::isfinite(y)) {
    f.ok = false;
    return f;
  }
  const double xf = std::floor(x);
  const double yf = std::floor(y);
  f.fx = x - xf;
  f.fy = y - yf;
  // Guard the int conversion before testing taps.
  if (xf < -1.0 || yf < -1.0 || xf > img.width() || yf > img.height()) {
    f.ok = false;
    return f;
  }
  f.x0 = static_cast<int>(xf);
  f.y0 = static_cast<int>(yf);
  const int x1 = f.fx > 0.0 ? f.x0 + 1 : f.x0;
  const int y1 = f.fy > 0.0 ? f.y0 + 1 : f.y0;
  f.ok = img.contains(f.x0, f.y0) && img.contains(x1, y1);
  return f;
}

}  // namespace

bool sample_bilinear(const ViewImage& img, double x, double y, Rgb& out) {
  const Footprint f = footprint(img, x, y);
  if (!f.ok) return false;
  for (int c = 0; c < ViewImage::kChannels; ++c) {
    double v = (1.0 - f.fx) * (1.0 - f.fy) * img.at(f.x0, f.y0, c);
    if (f.fx > 0.0) v += f.fx * (1.0 - f.fy) * img.at(f.x0 + 1, f.y0, c);
    if (f.fy > 0.0) v += (1.0 - f.fx) * f.fy * img.at(f.x0, f.y0 + 1, c);
    if (f.fx > 0.0 && f.fy > 0.0) v += f.fx * f.fy * img.at(f.x0 + 1, f.y0 + 1, c);
    out[static_cast<std::size_t>(c)] = static_cast<float>(v);
  }
  return true;
}

bool sample_bilinear(const ScalarMap& map, double x, double y, float& out) {
  const Footprint f = footprint(map, x, y);
  if (!f.ok) return false;
  double v = (1.0 - f.fx) * (1.0 - f.fy) * map(f.x0, f.y0);
  if (f.fx > 0.0) v += f.fx * (1.0 - f.fy) * map(f.x0 + 1, f.y0);
  if (f.fy > 0.0) v += (1.0 - f.fx) * f.fy * map(f.x0, f.y0 + 1);
  if (f.fx > 0.0 && f.fy > 0.0) v += f.fx * f.fy * map(f.x0 + 1, f.y0 + 1);
  out = static_cast<float>(v);
  return true;
}

double normalized_rgb_distance(const Rgb& a, const Rgb& b) {
  double sq = 0.0;
  for (std::size_t c = 0; c < 3; ++c) {
    const double d = static_cast<double>(a[c]) - static_cast<double>(b[c]);
    sq += d * d;
  }
  return std::sqrt(sq) / std::sqrt(3.0);
}

}  // namespace lfc
