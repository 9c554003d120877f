#pragma once

#include <cstdint>
#include <filesystem>
#include <map>

#include "lfc/geometry.hpp"
#include "lfc/light_field.hpp"

namespace lfc {

/// Masked disparity loss of one view.
struct LossRecord {
  double sum = 0.0;          ///< sum over defined pixels and channels of (M * residual)^2
  double mean = 0.0;         ///< sum / (3 * masked_count), 0 when nothing is masked
  std::int64_t masked_count = 0;  ///< defined pixels with M > 0
};

struct ConsistencyReport {
  std::map<ViewIndex, LossRecord> per_view;
  double aggregate_sum = 0.0;   ///< mean of per-view sums over non-central views
  double aggregate_mean = 0.0;  ///< mean of per-view means over non-central views
};

LossRecord disparity_loss(const ViewImage& stylized_view, const ViewImage& stylized_central,
                          const DisparityField& disp, const ConfidenceMask& mask);

/// M * W(I'_{0,0}, D) + (1 - M) * I'_{s,t}; I'_{s,t} where the warp is undefined.
ViewImage warp_blend_view(const ViewImage& stylized_central, const ViewImage& stylized_view,
                          const DisparityField& disp, const ConfidenceMask& mask);

/// Central view passes through unchanged.
ViewSet warp_blend_all(const ViewSet& stylized, const Geometry& geometry);

ConsistencyReport evaluate(const ViewSet& stylized, const Geometry& geometry);

/// Deterministic per-view colour mixing plus sinusoidal modulation, a stand-in
/// for independently stylized views that disagree with each other.
class PseudoStylizer {
public:
  explicit PseudoStylizer(std::uint64_t seed) : seed_(seed) {}

  ViewImage apply(const ViewImage& img, ViewIndex view) const;

private:
  std::uint64_t seed_;
};

ViewSet pseudo_stylize(const LightField& lf, std::uint64_t seed);

void write_report_json(const ConsistencyReport& report, const std::filesystem::path& path);
/// One row per view: s,t,loss_sum,loss_mean,masked_count.
void write_report_csv(const ConsistencyReport& report, const std::filesystem::path& path);

}  // namespace lfc
