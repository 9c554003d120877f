#include "lfc/light_field.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <regex>

#include <json.hpp>

#include "lfc/error.hpp"
#include "lfc/pfm.hpp"
#include "lfc/png_io.hpp"

namespace lfc {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(const ViewIndex& v) {
  return "(" + std::to_string(v.s) + "," + std::to_string(v.t) + ")";
}

DisparityField DisparityField::dense(ViewIndex view, ScalarMap values) {
  BoolMap valid(values.width(), values.height(), 1);
  return {view, std::move(values), std::move(valid)};
}

DisparityField DisparityField::from_nan_encoded(ViewIndex view, ScalarMap values) {
  BoolMap valid(values.width(), values.height(), 1);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values.data()[i])) valid.data()[i] = 0;
  }
  return {view, std::move(values), std::move(valid)};
}

std::vector<ViewIndex> grid_indices(int radius_s, int radius_t) {
  std::vector<ViewIndex> out;
  out.reserve(static_cast<std::size_t>((2 * radius_s + 1) * (2 * radius_t + 1)));
  for (int t = -radius_t; t <= radius_t; ++t)
    for (int s = -radius_s; s <= radius_s; ++s) out.push_back({s, t});
  return out;
}

LightField::LightField(int radius_s, int radius_t, ViewSet views, std::optional<DepthMap> depth)
    : radius_s_(radius_s), radius_t_(radius_t), views_(std::move(views)), depth_(std::move(depth)) {
  if (radius_s < 0 || radius_t < 0) throw DomainError("grid radius must be non-negative");
  for (const auto& v : grid_indices(radius_s, radius_t)) {
    if (!views_.contains(v)) throw FormatError("incomplete grid: missing view " + to_string(v));
  }
  for (const auto& [idx, _] : views_) {
    if (std::abs(idx.s) > radius_s || std::abs(idx.t) > radius_t) {
      throw DomainError("view " + to_string(idx) + " lies outside the grid radius");
    }
  }
  const ViewImage& c = views_.at({0, 0});
  width_ = c.width();
  height_ = c.height();
  if (width_ <= 0 || height_ <= 0) throw DomainError("central view is empty");
  for (const auto& [idx, img] : views_) {
    if (!img.same_shape(c)) {
      throw FormatError("dimension mismatch at view " + to_string(idx) + ": " + std::to_string(img.width()) + "x" +
                        std::to_string(img.height()) + " vs " + std::to_string(width_) + "x" +
                        std::to_string(height_));
    }
    for (float v : img.data()) {
      if (!std::isfinite(v) || v < 0.0f || v > 1.0f) {
        throw DomainError("view " + to_string(idx) + " has a sample outside [0,1]");
      }
    }
  }
  if (depth_) {
    const auto& d = depth_->values;
    if (d.width() != width_ || d.height() != height_) {
      throw FormatError("depth map is " + std::to_string(d.width()) + "x" + std::to_string(d.height()) +
                        ", views are " + std::to_string(width_) + "x" + std::to_string(height_));
    }
  }
}

bool LightField::contains(ViewIndex v) const { return views_.contains(v); }

const ViewImage& LightField::view(ViewIndex v) const {
  auto it = views_.find(v);
  if (it == views_.end()) throw DomainError("no view " + to_string(v));
  return it->second;
}

LightField LightField::with_depth(std::optional<DepthMap> depth) const {
  return LightField(radius_s_, radius_t_, views_, std::move(depth));
}

// --- manifest --------------------------------------------------------------

namespace {

void check_pattern(const std::string& pattern) {
  // Exactly two integer conversions (s then t); %% escapes allowed.
  static const std::regex conv(R"(%(%|[-+ 0#]*[0-9]*[di]))");
  int count = 0;
  for (auto it = std::sregex_iterator(pattern.begin(), pattern.end(), conv); it != std::sregex_iterator(); ++it) {
    if ((*it)[1] != "%") ++count;
  }
  std::string stripped = std::regex_replace(pattern, conv, "");
  if (count != 2 || stripped.find('%') != std::string::npos) {
    throw FormatError("view_pattern must contain exactly two integer conversions for s and t: " + pattern);
  }
}

template <typename T>
T required(const json& j, const char* key, const fs::path& path) {
  if (!j.contains(key)) throw FormatError(path.string() + ": manifest missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": bad field '" + key + "': " + e.what());
  }
}

fs::path resolve(const fs::path& base_dir, const std::string& p) {
  fs::path q(p);
  return q.is_absolute() ? q : base_dir / q;
}

}  // namespace

std::string Manifest::view_filename(ViewIndex v) const {
  check_pattern(view_pattern);
  const int n = std::snprintf(nullptr, 0, view_pattern.c_str(), v.s, v.t);
  std::string out(static_cast<std::size_t>(n) + 1, '\0');
  std::snprintf(out.data(), out.size(), view_pattern.c_str(), v.s, v.t);
  out.resize(static_cast<std::size_t>(n));
  return out;
}

Manifest read_manifest(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": malformed manifest: " + e.what());
  }
  if (!j.is_object()) throw FormatError(path.string() + ": manifest must be a JSON object");

  Manifest m;
  m.grid_radius_s = required<int>(j, "grid_radius_s", path);
  m.grid_radius_t = required<int>(j, "grid_radius_t", path);
  m.view_pattern = required<std::string>(j, "view_pattern", path);
  m.width = required<int>(j, "width", path);
  m.height = required<int>(j, "height", path);
  if (j.contains("depth") && !j.at("depth").is_null()) m.depth = required<std::string>(j, "depth", path);
  if (m.grid_radius_s < 0 || m.grid_radius_t < 0 || m.width <= 0 || m.height <= 0) {
    throw FormatError(path.string() + ": grid radii must be >= 0 and dimensions > 0");
  }
  check_pattern(m.view_pattern);
  return m;
}

void write_manifest(const Manifest& m, const fs::path& path) {
  json j;
  j["grid_radius_s"] = m.grid_radius_s;
  j["grid_radius_t"] = m.grid_radius_t;
  j["view_pattern"] = m.view_pattern;
  j["width"] = m.width;
  j["height"] = m.height;
  if (m.depth) j["depth"] = *m.depth;
  std::ofstream out(path);
  if (!out) throw IoError("cannot write manifest: " + path.string());
  out << j.dump(2) << '\n';
}

LightField load_light_field(const fs::path& manifest_path) {
  const Manifest m = read_manifest(manifest_path);
  const fs::path dir = manifest_path.parent_path();

  ViewSet views;
  for (const auto& v : grid_indices(m.grid_radius_s, m.grid_radius_t)) {
    const fs::path p = resolve(dir, m.view_filename(v));
    if (!fs::exists(p)) {
      throw IoError("incomplete grid: missing view " + to_string(v) + " (" + p.string() + ")");
    }
    ViewImage img = png::read(p);
    if (img.width() != m.width || img.height() != m.height) {
      throw FormatError("dimension mismatch at view " + to_string(v) + " (" + p.string() + "): " +
                        std::to_string(img.width()) + "x" + std::to_string(img.height()) + ", manifest says " +
                        std::to_string(m.width) + "x" + std::to_string(m.height));
    }
    views.emplace(v, std::move(img));
  }

  std::optional<DepthMap> depth;
  if (m.depth) depth = load_depth(resolve(dir, *m.depth));
  return LightField(m.grid_radius_s, m.grid_radius_t, std::move(views), std::move(depth));
}

Manifest save_light_field(const LightField& lf, const fs::path& manifest_path, const std::string& view_pattern,
                          const std::string& depth_name) {
  Manifest m;
  m.grid_radius_s = lf.radius_s();
  m.grid_radius_t = lf.radius_t();
  m.view_pattern = view_pattern;
  m.width = lf.width();
  m.height = lf.height();
  const fs::path dir = manifest_path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  save_views(lf.views(), dir, view_pattern);
  if (lf.central_depth()) {
    m.depth = depth_name;
    save_map(*lf.central_depth(), dir / depth_name);
  }
  write_manifest(m, manifest_path);
  return m;
}

void save_views(const ViewSet& views, const fs::path& dir, const std::string& pattern) {
  Manifest naming;
  naming.view_pattern = pattern;
  for (const auto& [v, img] : views) png::write(img, dir / naming.view_filename(v));
}

// --- maps ------------------------------------------------------------------

void save_map(const ScalarMap& map, const fs::path& path) { pfm::write(map, path); }

void save_map(const DisparityField& field, const fs::path& path) {
  ScalarMap out = field.values;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!field.valid.data()[i]) out.data()[i] = std::numeric_limits<float>::quiet_NaN();
  }
  pfm::write(out, path);
}

void save_map(const ConfidenceMask& mask, const fs::path& path) { pfm::write(mask.values, path); }

void save_map(const DepthMap& depth, const fs::path& path) { pfm::write(depth.values, path); }

DisparityField load_disparity(const fs::path& path, ViewIndex view) {
  return DisparityField::from_nan_encoded(view, pfm::read(path));
}

ConfidenceMask load_mask(const fs::path& path, ViewIndex view) {
  ConfidenceMask m{view, pfm::read(path)};
  for (float v : m.values.data()) {
    if (!(v >= 0.0f && v <= 1.0f)) throw FormatError(path.string() + ": mask sample outside [0,1]");
  }
  return m;
}

DepthMap load_depth(const fs::path& path) { return DepthMap{pfm::read(path)}; }

std::string disparity_filename(ViewIndex v) {
  return "disp_s" + std::to_string(v.s) + "_t" + std::to_string(v.t) + ".pfm";
}

std::string mask_filename(ViewIndex v) {
  return "mask_s" + std::to_string(v.s) + "_t" + std::to_string(v.t) + ".pfm";
}

}  // namespace lfc
