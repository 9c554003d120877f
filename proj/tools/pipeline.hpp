#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "lfc/geometry.hpp"

namespace lfc::cli {

namespace fs = std::filesystem;

inline constexpr const char* kCentralDisparity = "central_disp.pfm";
inline constexpr const char* kCalibrationJson = "calibration.json";
inline constexpr const char* kStylizedManifest = "stylized.json";
inline constexpr const char* kBlendedManifest = "blended.json";

struct SynthOptions {
  int grid = 4;
  int size = 96;
  std::uint64_t seed = 1;
  double alpha = 3.0;
  double beta = -1.0;
};

void run_synth(const fs::path& out, const SynthOptions& opts);
void run_calibrate(const fs::path& manifest, const fs::path& out);
void run_reverse(const fs::path& manifest, const fs::path& central_disp, const fs::path& out, double epsilon);
void run_pseudostyle(const fs::path& manifest, const fs::path& out, std::uint64_t seed);
void run_warpblend(const fs::path& stylized_manifest, const fs::path& geom_dir, const fs::path& central_disp,
                   const fs::path& out);
void run_eval(const fs::path& stylized_manifest, const fs::path& geom_dir, const fs::path& central_disp,
              const fs::path& out, const std::string& name, bool csv);
void run_refocus(const fs::path& manifest, const std::vector<double>& slopes, const fs::path& out);
void run_epi(const fs::path& manifest, int row, int t, const fs::path& out);

/// calibrate -> reverse -> pseudostyle -> warpblend -> eval, chained through
/// files in `out`.
void run_pipeline(const fs::path& manifest, const fs::path& out, double epsilon, std::uint64_t seed);

/// Reads central_disp plus the per-view disp/mask PFMs written by `reverse`.
Geometry load_geometry(const fs::path& geom_dir, const fs::path& central_disp, int radius_s, int radius_t);

}  // namespace lfc::cli
