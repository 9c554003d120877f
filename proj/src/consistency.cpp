#include "lfc/consistency.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <vector>

#include <json.hpp>

#include "lfc/error.hpp"
#include "lfc/parallel.hpp"

namespace lfc {

namespace {

void check_shapes(const ViewImage& a, const ViewImage& b, const DisparityField& d, const ConfidenceMask& m) {
  if (!a.same_shape(b) || a.width() != d.width() || a.height() != d.height() || a.width() != m.width() ||
      a.height() != m.height()) {
    throw DomainError("dimension mismatch between views, disparity and mask of view " + to_string(d.view));
  }
}

}  // namespace

LossRecord disparity_loss(const ViewImage& stylized_view, const ViewImage& stylized_central,
                          const DisparityField& disp, const ConfidenceMask& mask) {
  check_shapes(stylized_view, stylized_central, disp, mask);
  const WarpResult warped = backward_warp(stylized_central, disp);
  const int w = stylized_view.width(), h = stylized_view.height();

  // Row partials summed in row order keep the result thread-count independent.
  std::vector<double> row_sum(static_cast<std::size_t>(h), 0.0);
  std::vector<std::int64_t> row_count(static_cast<std::size_t>(h), 0);
  parallel_for(h, [&](int y) {
    double acc = 0.0;
    std::int64_t n = 0;
    for (int x = 0; x < w; ++x) {
      if (!warped.defined(x, y)) continue;
      const double m = mask.values(x, y);
      if (m > 0.0) ++n;
      for (int c = 0; c < 3; ++c) {
        const double r = m * (static_cast<double>(stylized_view.at(x, y, c)) - warped.image.at(x, y, c));
        acc += r * r;
      }
    }
    row_sum[static_cast<std::size_t>(y)] = acc;
    row_count[static_cast<std::size_t>(y)] = n;
  });

  LossRecord rec;
  for (int y = 0; y < h; ++y) {
    rec.sum += row_sum[static_cast<std::size_t>(y)];
    rec.masked_count += row_count[static_cast<std::size_t>(y)];
  }
  rec.mean = rec.masked_count > 0 ? rec.sum / (3.0 * static_cast<double>(rec.masked_count)) : 0.0;
  return rec;
}

ViewImage warp_blend_view(const ViewImage& stylized_central, const ViewImage& stylized_view,
                          const DisparityField& disp, const ConfidenceMask& mask) {
  check_shapes(stylized_view, stylized_central, disp, mask);
  const WarpResult warped = backward_warp(stylized_central, disp);
  ViewImage out = stylized_view;
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      if (!warped.defined(x, y)) continue;
      const float m = mask.values(x, y);
      for (int c = 0; c < 3; ++c) {
        out.at(x, y, c) = m * warped.image.at(x, y, c) + (1.0f - m) * stylized_view.at(x, y, c);
      }
    }
  }
  return out;
}

ViewSet warp_blend_all(const ViewSet& stylized, const Geometry& geometry) {
  const ViewImage& central = stylized.at({0, 0});
  ViewSet out;
  for (const auto& [v, img] : stylized) {
    if (v.is_central()) {
      out.emplace(v, img);
      continue;
    }
    out.emplace(v, warp_blend_view(central, img, geometry.disparity.at(v), geometry.masks.at(v)));
  }
  return out;
}

ConsistencyReport evaluate(const ViewSet& stylized, const Geometry& geometry) {
  const ViewImage& central = stylized.at({0, 0});
  ConsistencyReport report;
  int others = 0;
  for (const auto& [v, img] : stylized) {
    auto d = geometry.disparity.find(v);
    auto m = geometry.masks.find(v);
    if (d == geometry.disparity.end() || m == geometry.masks.end()) {
      throw DomainError("no geometry for view " + to_string(v));
    }
    const LossRecord rec = disparity_loss(img, central, d->second, m->second);
    report.per_view.emplace(v, rec);
    if (!v.is_central()) {
      report.aggregate_sum += rec.sum;
      report.aggregate_mean += rec.mean;
      ++others;
    }
  }
  if (others > 0) {
    report.aggregate_sum /= others;
    report.aggregate_mean /= others;
  }
  return report;
}

// --- pseudo stylization ----------------------------------------------------

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

class Stream {
public:
  explicit Stream(std::uint64_t state) : state_(state) {}
  double uniform(double lo, double hi) {
    state_ = mix(state_);
    return lo + (hi - lo) * static_cast<double>(state_ >> 11) * (1.0 / 9007199254740992.0);
  }

private:
  std::uint64_t state_;
};

}  // namespace

ViewImage PseudoStylizer::apply(const ViewImage& img, ViewIndex view) const {
  Stream rng(mix(seed_ ^ mix(static_cast<std::uint64_t>(static_cast<std::uint32_t>(view.s)) << 32 |
                             static_cast<std::uint32_t>(view.t))));
  std::array<std::array<double, 3>, 3> m{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = (r == c ? rng.uniform(0.55, 0.9) : rng.uniform(-0.15, 0.3));
  std::array<double, 3> bias{}, amp{};
  for (int c = 0; c < 3; ++c) {
    bias[c] = rng.uniform(-0.05, 0.15);
    amp[c] = rng.uniform(0.03, 0.12);
  }
  const double fx = rng.uniform(0.05, 0.4), fy = rng.uniform(0.05, 0.4);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);

  ViewImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const Rgb p = img.pixel(x, y);
      const double wave = std::sin(fx * x + fy * y + phase);
      for (int r = 0; r < 3; ++r) {
        double v = bias[r] + amp[r] * wave;
        for (int c = 0; c < 3; ++c) v += m[r][c] * p[static_cast<std::size_t>(c)];
        out.at(x, y, r) = static_cast<float>(std::clamp(v, 0.0, 1.0));
      }
    }
  }
  return out;
}

ViewSet pseudo_stylize(const LightField& lf, std::uint64_t seed) {
  const PseudoStylizer stylizer(seed);
  const std::vector<ViewIndex> views = grid_indices(lf.radius_s(), lf.radius_t());
  std::vector<ViewImage> out(views.size());
  parallel_for(static_cast<int>(views.size()),
               [&](int i) { out[static_cast<std::size_t>(i)] = stylizer.apply(lf.view(views[static_cast<std::size_t>(i)]),
                                                                                views[static_cast<std::size_t>(i)]); });
  ViewSet set;
  for (std::size_t i = 0; i < views.size(); ++i) set.emplace(views[i], std::move(out[i]));
  return set;
}

// --- reports ---------------------------------------------------------------

void write_report_json(const ConsistencyReport& report, const std::filesystem::path& path) {
  nlohmann::ordered_json j;
  j["aggregate"] = {{"disparity_loss_sum", report.aggregate_sum}, {"disparity_loss_mean", report.aggregate_mean}};
  auto views = nlohmann::ordered_json::array();
  for (const auto& [v, rec] : report.per_view) {
    views.push_back({{"s", v.s},
                     {"t", v.t},
                     {"disparity_loss_sum", rec.sum},
                     {"disparity_loss_mean", rec.mean},
                     {"masked_pixel_count", rec.masked_count}});
  }
  j["per_view"] = std::move(views);
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report: " + path.string());
  out << j.dump(2) << '\n';
}

void write_report_csv(const ConsistencyReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write report: " + path.string());
  out.precision(17);
  out << "s,t,loss_sum,loss_mean,masked_count\n";
  for (const auto& [v, rec] : report.per_view) {
    out << v.s << ',' << v.t << ',' << rec.sum << ',' << rec.mean << ',' << rec.masked_count << '\n';
  }
}

}  // namespace lfc
