// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "lfc/calibrate.hpp"
#include "lfc/consistency.hpp"
#include "lfc/geometry.hpp"
#include "lfc/render.hpp"
#include "lfc/synthetic.hpp"
#include "oracles.hpp"

using namespace lfc;
namespace fs = std::filesystem;

namespace {

constexpr int kRadius = 4;  // 9x9 views
constexpr int kSize = 96;

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SyntheticLightField two_layer_field() {
  return generate_synthetic(oracle::two_layer_scene(kSize, kRadius), kRadius, kRadius, kSize, kSize);
}

Outcome reversal_oracle() {
  setenv("LFCONSIST_THREADS", "1", 1);
  const auto synth = two_layer_field();
  const DisparityField& central = synth.ground_truth.at({0, 0});
  const auto t0 = Clock::now();
  const Geometry g = reverse_all(synth.light_field, central, {1.4, 1.0});
  const double secs = seconds_since(t0);
  unsetenv("LFCONSIST_THREADS");

  long long total = 0, match = 0;
  for (auto v : grid_indices(kRadius, kRadius)) {
    if (v == ViewIndex{0, 0}) continue;
    const DisparityField& got = g.disparity.at(v);
    const DisparityField want = oracle::forward_project(central, v, 1.4);
    for (int y = 0; y < kSize; ++y)
      for (int x = 0; x < kSize; ++x) {
        ++total;
        const bool same = got.valid(x, y) == want.valid(x, y) &&
                          (!want.valid(x, y) || got.values(x, y) == want.values(x, y));
        match += same;
      }
  }
  return {match == total && secs < 30.0,
          fmt("%lld/%lld pixels match, %.2f s single-threaded", match, total, secs)};
}

Outcome calibration_recovery() {
  struct Case {
    const char* name;
    SyntheticScene scene;
    double alpha, beta;
  };
  const std::vector<Case> cases = {
      {"layered d{0,1,2}", oracle::three_layer_scene(kSize, 1), 3.0, -1.0},
      {"mixed-sign d{-1,+2}", oracle::mixed_sign_scene(kSize, 1), 3.0, -2.5},
  };
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto synth = generate_synthetic(c.scene, 1, 1, kSize, kSize);
    const LightField lf =
        synth.light_field.with_depth(depth_from_disparity(synth.ground_truth.at({0, 0}).values, c.alpha, c.beta));
    const CalibrationParams p = calibrate(lf).params;
    const double ra = std::abs(p.alpha - c.alpha) / c.alpha, db = std::abs(p.beta - c.beta);
    pass = pass && ra < 0.02 && db < 0.1 && !p.degenerate;
    detail += fmt("%s%s: alpha=%.4f beta=%.4f (|da|/a=%.2e |db|=%.2e)", detail.empty() ? "" : "; ", c.name,
                  p.alpha, p.beta, ra, db);
  }
  return {pass, detail};
}

Outcome mask_identity() {
  const auto synth = two_layer_field();
  const LightField& lf = synth.light_field;
  const DisparityField& central = synth.ground_truth.at({0, 0});

  double worst = 0.0;
  const Geometry g = reverse_all(lf, central);
  for (auto v : grid_indices(kRadius, kRadius)) {
    if (v == ViewIndex{0, 0}) continue;
    const WarpResult w = backward_warp(lf.central(), g.disparity.at(v));
    const ScalarMap& m = g.masks.at(v).values;
    for (int y = 0; y < kSize; ++y)
      for (int x = 0; x < kSize; ++x) {
        if (!w.defined(x, y)) continue;
        const Rgb a = lf.view(v).pixel(x, y), b = w.image.pixel(x, y);
        double sq = 0.0;
        for (int c = 0; c < 3; ++c) sq += (static_cast<double>(a[c]) - b[c]) * (static_cast<double>(a[c]) - b[c]);
        worst = std::max(worst, std::abs((1.0 - m(x, y)) - std::sqrt(sq) / std::sqrt(3.0)));
      }
  }

  // Disocclusions are only exact when the reversal radius admits no neighbours.
  const Geometry exact = reverse_all(lf, central, {1.0, 1.0});
  long long disoccluded = 0, zero = 0;
  for (const auto& [v, truth] : synth.ground_truth) {
    const ScalarMap& m = exact.masks.at(v).values;
    for (int y = 0; y < kSize; ++y)
      for (int x = 0; x < kSize; ++x) {
        if (truth.valid(x, y)) continue;
        ++disoccluded;
        zero += m(x, y) == 0.0f;
      }
  }
  return {worst <= 1e-6 && disoccluded > 0 && zero == disoccluded,
          fmt("max |1-M - residual| = %.3e; M == 0 on %lld/%lld disoccluded pixels", worst, zero, disoccluded)};
}

Outcome warpblend_gain() {
  const auto synth = two_layer_field();
  const Geometry g = reverse_all(synth.light_field, synth.ground_truth.at({0, 0}));
  const ViewSet stylized = pseudo_stylize(synth.light_field, 1);
  const ConsistencyReport naive = evaluate(stylized, g);
  const auto t0 = Clock::now();
  const ViewSet blended = warp_blend_all(stylized, g);
  const ConsistencyReport after = evaluate(blended, g);
  const double secs = seconds_since(t0);
  const double ratio = after.aggregate_sum / naive.aggregate_sum;
  return {naive.aggregate_sum > 0.0 && ratio <= 0.1 && secs < 10.0,
          fmt("naive=%.4f warpblend=%.4f ratio=%.2e, %.2f s", naive.aggregate_sum, after.aggregate_sum, ratio, secs)};
}

Outcome refocus_correctness() {
  bool pass = true;
  std::string detail;
  for (int d : {1, -1}) {
    SyntheticScene scene{{full_frame_layer(d, 51, kRadius, kRadius, kSize, kSize)}};
    const ViewSet views = generate_synthetic(scene, kRadius, kRadius, kSize, kSize).light_field.views();
    const FocalSlice at = refocus(views, d);

    // Interior: every view contributes at the in-focus slope.
    const int border = kRadius * std::abs(d);
    const ViewImage& c = views.at({0, 0});
    double sq = 0.0;
    long long n = 0;
    for (int y = border; y < kSize - border; ++y)
      for (int x = border; x < kSize - border; ++x)
        for (int k = 0; k < 3; ++k) {
          const double e = static_cast<double>(at.image.at(x, y, k)) - c.at(x, y, k);
          sq += e * e;
          ++n;
        }
    const double mse = sq / static_cast<double>(n);

    const int vb = kRadius * (std::abs(d) + 2);
    const double v0 = mean_local_variance(at.image, vb);
    const double vlo = mean_local_variance(refocus(views, d - 2).image, vb);
    const double vhi = mean_local_variance(refocus(views, d + 2).image, vb);
    const double ratio = v0 / std::max(vlo, vhi);
    pass = pass && mse < 1e-6 && ratio >= 10.0;
    detail += fmt("%sd=%+d: MSE=%.2e var ratio=%.1f", detail.empty() ? "" : "; ", d, mse, ratio);
  }
  return {pass, detail};
}

Outcome epi_slope() {
  const auto synth = two_layer_field();
  const EpipolarImage epi = extract_epi(synth.light_field.views(), kSize / 2, 0);
  // Front square spans [32, 64) in the central view at d = 2; background at d = 0.
  const double front = oracle::epi_track_slope(epi, 40, 56, 12);
  const double back = oracle::epi_track_slope(epi, 4, 20, 3);
  const ViewSet ramp = oracle::ramp_edge_views(kSize, kRadius, 1.5, 47.3);
  const double edge = oracle::epi_edge_slope(extract_epi(ramp, 0, 0), 24, 72);
  const bool pass = std::abs(front - 2.0) <= 0.2 && std::abs(back) <= 0.2 && std::abs(edge - 1.5) <= 0.2;
  return {pass, fmt("front %.3f (d=2), background %.3f (d=0), ramp edge %.3f (d=1.5) px/row", front, back, edge)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

int run_cli(const std::string& args) {
  const int rc = std::system(("\"" LFCONSIST_BIN "\" " + args + " >/dev/null 2>&1").c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

Outcome determinism() {
  const fs::path dir = fs::temp_directory_path() / "lfc_acceptance_determinism";
  fs::remove_all(dir);
  const std::string q = "\"";
  const std::string lf = q + (dir / "lf").string() + q;
  const std::string manifest = q + (dir / "lf" / "manifest.json").string() + q;
  if (run_cli("synth --grid 4 --size 96 --out " + lf) != 0) return {false, "synth failed"};
  for (const char* threads : {"1", "8"}) {
    const std::string out = q + (dir / (std::string("t") + threads)).string() + q;
    const std::string cmd = std::string("LFCONSIST_THREADS=") + threads + " \"" LFCONSIST_BIN "\" pipeline --in " +
                            manifest + " --out " + out + " >/dev/null 2>&1";
    if (std::system(cmd.c_str()) != 0) return {false, std::string("pipeline failed with ") + threads + " threads"};
  }
  int files = 0, differ = 0, missing = 0;
  for (const auto& e : fs::directory_iterator(dir / "t1")) {
    const fs::path other = dir / "t8" / e.path().filename();
    ++files;
    if (!fs::exists(other)) {
      ++missing;
      continue;
    }
    differ += slurp(e.path()) != slurp(other);
  }
  const auto other_files = std::distance(fs::directory_iterator(dir / "t8"), fs::directory_iterator{});
  const bool pass = files > 0 && differ == 0 && missing == 0 && other_files == files;
  fs::remove_all(dir);
  return {pass, fmt("%d files compared, %d differ, %d missing", files, differ, missing)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"reversal matches forward-projection oracle", reversal_oracle},
      {"calibration recovers embedded scale and bias", calibration_recovery},
      {"confidence mask identity and disocclusions", mask_identity},
      {"warp-blend cuts masked loss tenfold", warpblend_gain},
      {"refocus at the true slope", refocus_correctness},
      {"EPI slope equals disparity", epi_slope},
      {"pipeline output independent of thread count", determinism},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s  %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
