// lfconsist: angular-consistency toolkit for stylized light fields.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lfc/error.hpp"
#include "pipeline.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lfc::cli;

fs::path default_geom(const std::string& geom, const std::string& manifest) {
  return geom.empty() ? fs::path(manifest).parent_path() : fs::path(geom);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Angular consistency tools for stylized light fields"};
  app.require_subcommand(1);

  std::string in, out, disp, geom;
  double epsilon = 1.4;
  std::uint64_t seed = 1;
  std::vector<double> slopes;
  int row = 0, t = 0;
  SynthOptions synth;
  bool csv = false;

  auto* synth_cmd = app.add_subcommand("synth", "Generate a layered synthetic light field with depth");
  synth_cmd->add_option("--out", out, "Output directory")->required();
  synth_cmd->add_option("--grid", synth.grid, "Grid radius (views per side = 2*grid+1)")->capture_default_str();
  synth_cmd->add_option("--size", synth.size, "View width and height in pixels")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Texture seed")->capture_default_str();

  auto* cal_cmd = app.add_subcommand("calibrate", "Calibrate the central depth map into pixel disparity");
  cal_cmd->add_option("--in", in, "Light field manifest")->required()->check(CLI::ExistingFile);
  cal_cmd->add_option("--out", out, "Output directory")->required();

  auto* rev_cmd = app.add_subcommand("reverse", "Reverse central disparity into per-view disparity and masks");
  rev_cmd->add_option("--in", in, "Light field manifest")->required()->check(CLI::ExistingFile);
  rev_cmd->add_option("--disp", disp, "Central disparity PFM (default <out>/central_disp.pfm)");
  rev_cmd->add_option("--out", out, "Output directory")->required();
  rev_cmd->add_option("--epsilon", epsilon, "Correspondence radius in pixels")->capture_default_str();

  auto* sty_cmd = app.add_subcommand("pseudostyle", "Apply the deterministic per-view pseudo stylizer");
  sty_cmd->add_option("--in", in, "Light field manifest")->required()->check(CLI::ExistingFile);
  sty_cmd->add_option("--out", out, "Output directory")->required();
  sty_cmd->add_option("--seed", seed, "Stylizer seed")->capture_default_str();

  auto* wb_cmd = app.add_subcommand("warpblend", "Blend the warped stylized central view into every view");
  wb_cmd->add_option("--in", in, "Stylized light field manifest")->required()->check(CLI::ExistingFile);
  wb_cmd->add_option("--geom", geom, "Directory with disp/mask PFMs (default: manifest directory)");
  wb_cmd->add_option("--disp", disp, "Central disparity PFM (default <geom>/central_disp.pfm)");
  wb_cmd->add_option("--out", out, "Output directory")->required();

  auto* eval_cmd = app.add_subcommand("eval", "Masked disparity loss report");
  eval_cmd->add_option("--in", in, "Stylized light field manifest")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--geom", geom, "Directory with disp/mask PFMs (default: manifest directory)");
  eval_cmd->add_option("--disp", disp, "Central disparity PFM (default <geom>/central_disp.pfm)");
  eval_cmd->add_option("--out", out, "Output directory")->required();
  eval_cmd->add_flag("--csv", csv, "Also write report.csv");

  auto* rf_cmd = app.add_subcommand("refocus", "Shift-and-add refocusing");
  rf_cmd->add_option("--in", in, "Light field manifest")->required()->check(CLI::ExistingFile);
  rf_cmd->add_option("--slope", slopes, "Refocus disparity slope (repeatable)")->required();
  rf_cmd->add_option("--out", out, "Output directory")->required();

  auto* epi_cmd = app.add_subcommand("epi", "Extract a horizontal epipolar-plane image");
  epi_cmd->add_option("--in", in, "Light field manifest")->required()->check(CLI::ExistingFile);
  epi_cmd->add_option("--row", row, "Image row y")->required();
  epi_cmd->add_option("--t", t, "Vertical view index")->capture_default_str();
  epi_cmd->add_option("--out", out, "Output directory")->required();

  auto* pipe_cmd = app.add_subcommand("pipeline", "calibrate -> reverse -> pseudostyle -> warpblend -> eval");
  pipe_cmd->add_option("--in", in, "Light field manifest")->required()->check(CLI::ExistingFile);
  pipe_cmd->add_option("--out", out, "Output directory")->required();
  pipe_cmd->add_option("--epsilon", epsilon, "Correspondence radius in pixels")->capture_default_str();
  pipe_cmd->add_option("--seed", seed, "Stylizer seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth_cmd) {
      run_synth(out, synth);
    } else if (*cal_cmd) {
      run_calibrate(in, out);
    } else if (*rev_cmd) {
      run_reverse(in, disp.empty() ? fs::path(out) / kCentralDisparity : fs::path(disp), out, epsilon);
    } else if (*sty_cmd) {
      run_pseudostyle(in, out, seed);
    } else if (*wb_cmd || *eval_cmd) {
      const fs::path g = default_geom(geom, in);
      const fs::path d = disp.empty() ? g / kCentralDisparity : fs::path(disp);
      if (*wb_cmd) {
        run_warpblend(in, g, d, out);
      } else {
        run_eval(in, g, d, out, "report", csv);
      }
    } else if (*rf_cmd) {
      run_refocus(in, slopes, out);
    } else if (*epi_cmd) {
      run_epi(in, row, t, out);
    } else if (*pipe_cmd) {
      run_pipeline(in, out, epsilon, seed);
    }
  } catch (const lfc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
