#include "pipeline.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "lfc/calibrate.hpp"
#include "lfc/consistency.hpp"
#include "lfc/error.hpp"
#include "lfc/png_io.hpp"
#include "lfc/render.hpp"
#include "lfc/synthetic.hpp"

namespace lfc::cli {

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

ViewSet load_views(const fs::path& manifest) { return load_light_field(manifest).views(); }

void write_json(const nlohmann::ordered_json& j, const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace

Geometry load_geometry(const fs::path& geom_dir, const fs::path& central_disp, int radius_s, int radius_t) {
  Geometry g;
  const DisparityField central = DisparityField::dense({0, 0}, load_disparity(central_disp, {0, 0}).values);
  for (const ViewIndex& v : grid_indices(radius_s, radius_t)) {
    if (v.is_central()) {
      g.disparity.emplace(v, central);
      g.masks.emplace(v, ConfidenceMask{v, ScalarMap(central.width(), central.height(), 1.0f)});
      continue;
    }
    const fs::path dp = geom_dir / disparity_filename(v);
    const fs::path mp = geom_dir / mask_filename(v);
    if (!fs::exists(dp) || !fs::exists(mp)) {
      throw IoError("missing geometry for view " + to_string(v) + " in " + geom_dir.string());
    }
    g.disparity.emplace(v, load_disparity(dp, v));
    g.masks.emplace(v, load_mask(mp, v));
  }
  return g;
}

void run_synth(const fs::path& out, const SynthOptions& o) {
  if (o.grid < 1) throw DomainError("--grid must be >= 1");
  if (o.size < 16) throw DomainError("--size must be >= 16");
  ensure_dir(out);
  const int n = o.size;
  SyntheticScene scene;
  scene.layers.push_back(full_frame_layer(0, o.seed, o.grid, o.grid, n, n));
  scene.layers.push_back({Rect{n / 8, n / 6, n / 3, n / 2}, 1, o.seed + 1});
  scene.layers.push_back({Rect{n / 2, n / 3, n / 3, n / 3}, 2, o.seed + 2});
  const SyntheticLightField synth = generate_synthetic(scene, o.grid, o.grid, n, n);
  const DepthMap depth = depth_from_disparity(synth.ground_truth.at({0, 0}).values, o.alpha, o.beta);
  save_light_field(synth.light_field.with_depth(depth), out / "manifest.json");

  nlohmann::ordered_json truth;
  truth["alpha"] = o.alpha;
  truth["beta"] = o.beta;
  truth["layer_disparities"] = {0, 1, 2};
  write_json(truth, out / "synth_truth.json");
}

void run_calibrate(const fs::path& manifest, const fs::path& out) {
  ensure_dir(out);
  const LightField lf = load_light_field(manifest);
  const CalibrationResult r = calibrate(lf);
  save_map(r.central, out / kCentralDisparity);
  nlohmann::ordered_json j;
  j["alpha"] = r.params.alpha;
  j["beta"] = r.params.beta;
  j["residual"] = r.params.residual;
  j["degenerate"] = r.params.degenerate;
  write_json(j, out / kCalibrationJson);
  if (r.params.degenerate) std::cerr << "warning: degenerate calibration (low confidence)\n";
}

void run_reverse(const fs::path& manifest, const fs::path& central_disp, const fs::path& out, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("--epsilon must be positive");
  ensure_dir(out);
  const LightField lf = load_light_field(manifest);
  const DisparityField central = DisparityField::dense({0, 0}, load_disparity(central_disp, {0, 0}).values);
  ReversalConfig cfg;
  cfg.epsilon = epsilon;
  const Geometry g = reverse_all(lf, central, cfg);
  for (const auto& [v, field] : g.disparity) {
    if (v.is_central()) continue;
    save_map(field, out / disparity_filename(v));
    save_map(g.masks.at(v), out / mask_filename(v));
  }
}

void run_pseudostyle(const fs::path& manifest, const fs::path& out, std::uint64_t seed) {
  ensure_dir(out);
  const LightField lf = load_light_field(manifest);
  const LightField styl(lf.radius_s(), lf.radius_t(), pseudo_stylize(lf, seed));
  save_light_field(styl, out / kStylizedManifest, "styl_s%d_t%d.png");
}

void run_warpblend(const fs::path& stylized_manifest, const fs::path& geom_dir, const fs::path& central_disp,
                   const fs::path& out) {
  ensure_dir(out);
  const LightField styl = load_light_field(stylized_manifest);
  const Geometry g = load_geometry(geom_dir, central_disp, styl.radius_s(), styl.radius_t());
  const LightField blended(styl.radius_s(), styl.radius_t(), warp_blend_all(styl.views(), g));
  save_light_field(blended, out / kBlendedManifest, "blend_s%d_t%d.png");
}

void run_eval(const fs::path& stylized_manifest, const fs::path& geom_dir, const fs::path& central_disp,
              const fs::path& out, const std::string& name, bool csv) {
  ensure_dir(out);
  const LightField styl = load_light_field(stylized_manifest);
  const Geometry g = load_geometry(geom_dir, central_disp, styl.radius_s(), styl.radius_t());
  const ConsistencyReport report = evaluate(styl.views(), g);
  write_report_json(report, out / (name + ".json"));
  if (csv) write_report_csv(report, out / (name + ".csv"));
  std::cout << name << ": aggregate disparity loss sum=" << report.aggregate_sum
            << " mean=" << report.aggregate_mean << '\n';
}

void run_refocus(const fs::path& manifest, const std::vector<double>& slopes, const fs::path& out) {
  if (slopes.empty()) throw DomainError("refocus needs at least one --slope");
  ensure_dir(out);
  const ViewSet views = load_views(manifest);
  for (double slope : slopes) {
    char name[64];
    std::snprintf(name, sizeof name, "refocus_%g.png", slope);
    png::write(refocus(views, slope).image, out / name);
  }
}

void run_epi(const fs::path& manifest, int row, int t, const fs::path& out) {
  ensure_dir(out);
  const ViewSet views = load_views(manifest);
  const EpipolarImage epi = extract_epi(views, row, t);
  png::write(epi.image, out / ("epi_row" + std::to_string(row) + "_t" + std::to_string(t) + ".png"));
}

void run_pipeline(const fs::path& manifest, const fs::path& out, double epsilon, std::uint64_t seed) {
  ensure_dir(out);
  const fs::path central = out / kCentralDisparity;
  run_calibrate(manifest, out);
  run_reverse(manifest, central, out, epsilon);
  run_pseudostyle(manifest, out, seed);
  run_warpblend(out / kStylizedManifest, out, central, out);
  run_eval(out / kStylizedManifest, out, central, out, "report_naive", true);
  run_eval(out / kBlendedManifest, out, central, out, "report", true);
}

}  // namespace lfc::cli
