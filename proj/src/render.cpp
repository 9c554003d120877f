#include "lfc/render.hpp"

#include <cmath>

#include "lfc/error.hpp"
#include "lfc/parallel.hpp"

namespace lfc {

namespace {

const ViewImage& any_view(const ViewSet& views) {
  if (views.empty()) throw DomainError("empty view set");
  return views.begin()->second;
}

}  // namespace

FocalSlice refocus(const ViewSet& views, double slope) {
  if (!std::isfinite(slope)) throw DomainError("refocus slope must be finite");
  const ViewImage& ref = any_view(views);
  const int w = ref.width(), h = ref.height();
  FocalSlice out{slope, ViewImage(w, h), Plane<int>(w, h, 0)};

  parallel_for(h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      double acc[3] = {0.0, 0.0, 0.0};
      int n = 0;
      for (const auto& [v, img] : views) {
        Rgb p;
        if (!sample_bilinear(img, x + v.s * slope, y + v.t * slope, p)) continue;
        for (int c = 0; c < 3; ++c) acc[c] += p[static_cast<std::size_t>(c)];
        ++n;
      }
      out.coverage(x, y) = n;
      if (n == 0) continue;
      for (int c = 0; c < 3; ++c) out.image.at(x, y, c) = static_cast<float>(acc[c] / n);
    }
  });
  return out;
}

EpipolarImage extract_epi(const ViewSet& views, int y, int t) {
  const ViewImage& ref = any_view(views);
  if (y < 0 || y >= ref.height()) throw DomainError("EPI row " + std::to_string(y) + " outside the image");
  std::vector<const ViewImage*> rows;
  for (const auto& [v, img] : views) {
    if (v.t == t) rows.push_back(&img);  // map order gives increasing s
  }
  if (rows.empty()) throw DomainError("no views with t=" + std::to_string(t));

  EpipolarImage epi{true, y, t, ViewImage(ref.width(), static_cast<int>(rows.size()))};
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    for (int x = 0; x < ref.width(); ++x) epi.image.set_pixel(x, r, rows[static_cast<std::size_t>(r)]->pixel(x, y));
  }
  return epi;
}

EpipolarImage extract_epi_vertical(const ViewSet& views, int x, int s) {
  const ViewImage& ref = any_view(views);
  if (x < 0 || x >= ref.width()) throw DomainError("EPI column " + std::to_string(x) + " outside the image");
  std::vector<const ViewImage*> rows;
  for (const auto& [v, img] : views) {
    if (v.s == s) rows.push_back(&img);
  }
  if (rows.empty()) throw DomainError("no views with s=" + std::to_string(s));

  EpipolarImage epi{false, x, s, ViewImage(ref.height(), static_cast<int>(rows.size()))};
  for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
    for (int y = 0; y < ref.height(); ++y) epi.image.set_pixel(y, r, rows[static_cast<std::size_t>(r)]->pixel(x, y));
  }
  return epi;
}

double mean_local_variance(const ViewImage& img, int border) {
  const int b = border + 1;
  double total = 0.0;
  long long n = 0;
  for (int y = b; y < img.height() - b; ++y) {
    for (int x = b; x < img.width() - b; ++x) {
      for (int c = 0; c < 3; ++c) {
        double sum = 0.0, sq = 0.0;
        for (int dy = -1; dy <= 1; ++dy)
          for (int dx = -1; dx <= 1; ++dx) {
            const double v = img.at(x + dx, y + dy, c);
            sum += v;
            sq += v * v;
          }
        const double mean = sum / 9.0;
        total += sq / 9.0 - mean * mean;
        ++n;
      }
    }
  }
  return n > 0 ? total / static_cast<double>(n) : 0.0;
}

}  // namespace lfc
