#include "lfc/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "lfc/error.hpp"
#include "lfc/parallel.hpp"

namespace lfc {

ScalarMap invert_depth(const DepthMap& depth) {
  const ScalarMap& d = depth.values;
  ScalarMap out(d.width(), d.height());
  for (int y = 0; y < d.height(); ++y) {
    for (int x = 0; x < d.width(); ++x) {
      const float z = d(x, y);
      if (!std::isfinite(z) || z <= 0.0f) {
        throw DomainError("depth must be finite and positive; got " + std::to_string(z) + " at pixel (" +
                          std::to_string(x) + "," + std::to_string(y) + ")");
      }
      const float inv = 1.0f / z;
      if (!std::isfinite(inv)) {
        throw DomainError("inverse depth overflows at pixel (" + std::to_string(x) + "," + std::to_string(y) + ")");
      }
      out(x, y) = inv;
    }
  }
  return out;
}

DisparityField apply_calibration(const ScalarMap& inverse_depth, double alpha, double beta) {
  ScalarMap d(inverse_depth.width(), inverse_depth.height());
  for (std::size_t i = 0; i < d.size(); ++i) {
    d.data()[i] = static_cast<float>(alpha * inverse_depth.data()[i] + beta);
  }
  return DisparityField::dense({0, 0}, std::move(d));
}

double calibration_objective(const LightField& lf, const ScalarMap& inverse_depth, double alpha, double beta) {
  const ViewImage& central = lf.central();
  const ViewImage& right = lf.view({1, 0});
  double sum = 0.0;
  long long count = 0;
  for (int y = 0; y < lf.height(); ++y) {
    for (int x = 0; x < lf.width(); ++x) {
      // D is evaluated in single precision, exactly as apply_calibration stores it.
      const double disp = static_cast<float>(alpha * inverse_depth(x, y) + beta);
      Rgb predicted;
      if (!sample_bilinear(central, x - disp, y, predicted)) continue;
      sum += normalized_rgb_distance(right.pixel(x, y), predicted);
      ++count;
    }
  }
  return count > 0 ? sum / static_cast<double>(count) : 1.0;
}

namespace {

template <typename F>
double golden_section(F&& f, double lo, double hi, double& best_x, double best_f) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  auto consider = [&](double x, double fx) {
    if (fx < best_f) {
      best_f = fx;
      best_x = x;
    }
  };
  consider(c, fc);
  consider(d, fd);
  for (int it = 0; it < 40 && (b - a) > 1e-7 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      consider(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      consider(d, fd);
    }
  }
  return best_f;
}

bool is_flat(const ViewImage& img) {
  const auto [lo, hi] = std::minmax_element(img.data().begin(), img.data().end());
  return *hi - *lo < 1e-6f;
}

}  // namespace

CalibrationResult calibrate(const LightField& lf, const CalibrationOptions& opts) {
  if (!lf.central_depth()) throw DomainError("calibration needs a central depth map");
  if (lf.radius_s() < 1) throw DomainError("calibration needs view (1,0); grid_radius_s must be >= 1");
  if (opts.alpha_steps < 1 || opts.beta_steps < 2 || !(opts.beta_limit >= 0.0) || opts.lattice_points < 3) {
    throw DomainError("empty calibration search range");
  }

  const ScalarMap inv = invert_depth(*lf.central_depth());
  const double max_inv = *std::max_element(inv.data().begin(), inv.data().end());
  const double alpha_hi = opts.max_disparity_fraction * lf.width() / max_inv;
  if (!std::isfinite(alpha_hi) || !(alpha_hi > 0.0)) {
    throw DomainError("empty calibration search range (alpha_hi=" + std::to_string(alpha_hi) + ")");
  }
  const double alpha_step = alpha_hi / opts.alpha_steps;
  const double alpha_lo = alpha_step;
  const double beta_step = 2.0 * opts.beta_limit / (opts.beta_steps - 1);

  auto objective = [&](double a, double b) { return calibration_objective(lf, inv, a, b); };

  // Coarse grid. Row-major (alpha outer) with strict '<' gives the
  // smallest-alpha, then smallest-beta tie-break.
  std::vector<double> grid(static_cast<std::size_t>(opts.alpha_steps * opts.beta_steps));
  parallel_for(opts.alpha_steps, [&](int i) {
    const double a = alpha_step * (i + 1);
    for (int j = 0; j < opts.beta_steps; ++j) {
      const double b = -opts.beta_limit + beta_step * j;
      grid[static_cast<std::size_t>(i * opts.beta_steps + j)] = objective(a, b);
    }
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (grid[k] < grid[best]) best = k;
  }
  double alpha = alpha_step * (static_cast<double>(best / opts.beta_steps) + 1);
  double beta = -opts.beta_limit + beta_step * static_cast<double>(best % opts.beta_steps);
  double fbest = grid[best];

  // Near the optimum each layer contributes roughly |alpha * inv + beta - d|,
  // so the objective has kinked ridges that stall one-axis line searches.
  // A shrinking 2-D lattice around the incumbent follows them; alternating
  // golden-section rounds then polish each axis.
  double span_a = alpha_step, span_b = beta_step;
  for (int level = 0; level < opts.lattice_levels; ++level) {
    const int n = opts.lattice_points;
    std::vector<double> local(static_cast<std::size_t>(n * n));
    const double a0 = alpha, b0 = beta;
    parallel_for(n, [&](int i) {
      const double a = a0 + span_a * (2.0 * i / (n - 1) - 1.0);
      for (int j = 0; j < n; ++j) {
        const double b = b0 + span_b * (2.0 * j / (n - 1) - 1.0);
        const bool inside = a >= alpha_lo && a <= alpha_hi && std::abs(b) <= opts.beta_limit;
        local[static_cast<std::size_t>(i * n + j)] = inside ? objective(a, b) : std::numeric_limits<double>::infinity();
      }
    });
    for (int k = 0; k < n * n; ++k) {
      if (local[static_cast<std::size_t>(k)] < fbest) {
        fbest = local[static_cast<std::size_t>(k)];
        alpha = a0 + span_a * (2.0 * (k / n) / (n - 1) - 1.0);
        beta = b0 + span_b * (2.0 * (k % n) / (n - 1) - 1.0);
      }
    }
    span_a *= 2.0 / (n - 1);
    span_b *= 2.0 / (n - 1);
  }
  for (int round = 0; round < opts.refine_rounds; ++round) {
    fbest = golden_section([&](double a) { return objective(a, beta); }, std::max(alpha_lo, alpha - span_a),
                           std::min(alpha_hi, alpha + span_a), alpha, fbest);
    fbest = golden_section([&](double b) { return objective(alpha, b); }, std::max(-opts.beta_limit, beta - span_b),
                           std::min(opts.beta_limit, beta + span_b), beta, fbest);
  }

  CalibrationResult out{{alpha, beta, objective(alpha, beta), false}, apply_calibration(inv, alpha, beta)};
  // Zero baseline: the identity mapping explains the pair as well as the fit.
  const double identity = objective(0.0, 0.0);
  out.params.degenerate = is_flat(lf.central()) || is_flat(lf.view({1, 0})) ||
                          identity <= out.params.residual * (1.0 + 1e-6) + 1e-12;
  return out;
}

}  // namespace lfc
