#include "lfc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lfc/error.hpp"
#include "lfc/parallel.hpp"

namespace lfc {

WarpResult backward_warp(const ViewImage& source, const DisparityField& disp) {
  if (source.width() != disp.width() || source.height() != disp.height()) {
    throw DomainError("backward_warp: source and disparity dimensions differ");
  }
  const int w = source.width(), h = source.height();
  WarpResult out{ViewImage(w, h), BoolMap(w, h, 0)};
  const double s = disp.view.s, t = disp.view.t;
  parallel_for(h, [&](int y) {
    for (int x = 0; x < w; ++x) {
      if (!disp.is_valid(x, y)) continue;
      const double d = disp.values(x, y);
      Rgb v;
      if (sample_bilinear(source, x - s * d, y - t * d, v)) {
        out.image.set_pixel(x, y, v);
        out.defined(x, y) = 1;
      }
    }
  });
  return out;
}

DisparityField reverse_disparity(const DisparityField& central, ViewIndex view, const ReversalConfig& cfg) {
  if (view.is_central()) throw DomainError("reverse_disparity is not defined for the central view");
  if (!(cfg.epsilon > 0.0)) throw DomainError("epsilon must be positive");

  const int w = central.width(), h = central.height();
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < central.values.size(); ++i) {
    const float d = central.values.data()[i];
    if (!central.valid.data()[i] || !std::isfinite(d)) continue;
    dmin = std::min(dmin, static_cast<double>(d));
    dmax = std::max(dmax, static_cast<double>(d));
  }
  if (!(dmin <= dmax)) throw DomainError("empty disparity range in the central disparity map");

  const double s = view.s, t = view.t;
  const double margin = std::max(cfg.search_margin, cfg.epsilon);
  constexpr float kNaN = std::numeric_limits<float>::quiet_NaN();
  DisparityField out{view, ScalarMap(w, h, kNaN), BoolMap(w, h, 0)};

  parallel_for(h, [&](int y) {
    const int y_lo = std::max(0, static_cast<int>(std::floor(std::min(y - t * dmin, y - t * dmax) - margin)));
    const int y_hi = std::min(h - 1, static_cast<int>(std::ceil(std::max(y - t * dmin, y - t * dmax) + margin)));
    for (int x = 0; x < w; ++x) {
      const int x_lo = std::max(0, static_cast<int>(std::floor(std::min(x - s * dmin, x - s * dmax) - margin)));
      const int x_hi =
          std::min(w - 1, static_cast<int>(std::ceil(std::max(x - s * dmin, x - s * dmax) + margin)));

      bool found = false;
      float best_d = 0.0f;
      double best_r = 0.0;
      int best_x = 0, best_y = 0;
      for (int cy = y_lo; cy <= y_hi; ++cy) {
        for (int cx = x_lo; cx <= x_hi; ++cx) {
          if (!central.is_valid(cx, cy)) continue;
          const float d = central.values(cx, cy);
          const double r = std::hypot(cx + s * d - x, cy + t * d - y);
          if (!(r < cfg.epsilon)) continue;
          const bool better = !found || d > best_d ||
                              (d == best_d && (r < best_r || (r == best_r && (cx < best_x ||
                                                                              (cx == best_x && cy < best_y)))));
          if (better) {
            found = true;
            best_d = d;
            best_r = r;
            best_x = cx;
            best_y = cy;
          }
        }
      }
      if (found) {
        out.values(x, y) = best_d;
        out.valid(x, y) = 1;
      }
    }
  });
  return out;
}

ConfidenceMask confidence_mask(const LightField& lf, const DisparityField& disp) {
  const WarpResult warped = backward_warp(lf.central(), disp);
  const ViewImage& target = lf.view(disp.view);
  ConfidenceMask m{disp.view, ScalarMap(lf.width(), lf.height(), 0.0f)};
  for (int y = 0; y < lf.height(); ++y) {
    for (int x = 0; x < lf.width(); ++x) {
      if (!warped.defined(x, y)) continue;
      const double r = normalized_rgb_distance(target.pixel(x, y), warped.image.pixel(x, y));
      m.values(x, y) = static_cast<float>(std::clamp(1.0 - r, 0.0, 1.0));
    }
  }
  return m;
}

Geometry reverse_all(const LightField& lf, const DisparityField& central, const ReversalConfig& cfg) {
  if (central.width() != lf.width() || central.height() != lf.height()) {
    throw DomainError("central disparity dimensions do not match the light field");
  }
  const std::vector<ViewIndex> views = grid_indices(lf.radius_s(), lf.radius_t());
  std::vector<DisparityField> fields(views.size());
  std::vector<ConfidenceMask> masks(views.size());
  std::vector<std::string> errors(views.size());

  // Views run sequentially; each reversal parallelizes over rows.
  for (std::size_t i = 0; i < views.size(); ++i) {
    const ViewIndex v = views[i];
    try {
      if (v.is_central()) {
        fields[i] = central;
        fields[i].view = v;
        masks[i] = ConfidenceMask{v, ScalarMap(lf.width(), lf.height(), 1.0f)};
      } else {
        fields[i] = reverse_disparity(central, v, cfg);
        masks[i] = confidence_mask(lf, fields[i]);
      }
    } catch (const std::exception& e) {
      errors[i] = "view " + to_string(v) + ": " + e.what();
    }
  }

  std::string msg;
  for (const auto& e : errors) {
    if (!e.empty()) msg += (msg.empty() ? "" : "; ") + e;
  }
  if (!msg.empty()) throw DomainError("reverse_all failed: " + msg);

  Geometry g;
  for (std::size_t i = 0; i < views.size(); ++i) {
    g.disparity.emplace(views[i], std::move(fields[i]));
    g.masks.emplace(views[i], std::move(masks[i]));
  }
  return g;
}

}  // namespace lfc
