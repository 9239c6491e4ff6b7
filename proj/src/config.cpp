// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include "aosim/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace aosim {

using nlohmann::json;

namespace {

json default_json() {
  return json{
      {"forest",
       {{"seed", 1},
        {"density", "medium"},
        {"extent_m", 150.0},
        {"params",
         {{"height_m", {20.0, 25.0}},
          {"trunk_length_m", {4.0, 8.0}},
          {"trunk_radius_m", {0.20, 0.50}},
          {"leaf_size_m", {0.05, 0.20}},
          {"branch_levels", 3},
          {"branches_per_level", 4},
          {"leaves_per_branch", 152},
          {"crown_radius_fraction", 0.17},
          {"min_spacing_m", 2.0},
          {"leaf_tilt", 1.0}}}}},
      {"sensor", {{"fov_deg", 50.0}, {"resolution_px", 512}}},
      {"flight",
       {{"altitude_m", 30.0},
        {"sample_dist_m", 1.0},
        {"mode", "grid"},
        {"aperture_m", 0.0}}},
      {"grid", {{"cell_m", 0.25}, {"roi_m", 20.0}}},
      {"sweep",
       {{"fovs_deg", {20, 30, 40, 50, 60, 70, 80, 90}},
        {"altitudes_m", {30, 40, 50}},
        {"sample_dists_m", {0.5, 1.0, 1.5, 2.0}},
        {"densities", {"sparse", "medium", "dense"}},
        {"seeds", {1, 2, 3, 4, 5}}}},
      {"workers", 0},
      {"out_dir", "out"}};
}

void apply_preset(json& j, const std::string& preset) {
  if (preset == "paper" || preset.empty()) return;
  if (preset == "desk") {
    j["forest"]["extent_m"] = 100.0;
    j["sensor"]["resolution_px"] = 128;
    j["flight"]["mode"] = "line";
    j["grid"]["roi_m"] = 9.2;
    return;
  }
  throw std::invalid_argument("preset: expected 'paper' or 'desk', got '" + preset +
                              "'");
}

json parse_override_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (...) {
    return json(text);  // bare strings stay strings
  }
}

void apply_override(json& j, const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("--set expects key.path=value, got '" + kv + "'");
  const std::string path = kv.substr(0, eq);
  const json value = parse_override_value(kv.substr(eq + 1));

  json* node = &j;
  std::size_t begin = 0;
  std::vector<std::string> parts;
  while (begin <= path.size()) {
    const auto dot = path.find('.', begin);
    parts.push_back(path.substr(begin, dot == std::string::npos ? dot : dot - begin));
    if (dot == std::string::npos) break;
    begin = dot + 1;
  }
  for (std::size_t p = 0; p + 1 < parts.size(); ++p) {
    if (!node->contains(parts[p]))
      throw std::invalid_argument("--set: unknown key '" + path + "' (at '" +
                                  parts[p] + "')");
    node = &(*node)[parts[p]];
  }
  if (!node->contains(parts.back()))
    throw std::invalid_argument("--set: unknown key '" + path + "'");
  (*node)[parts.back()] = value;
}

template <typename T>
T get_at(const json& j, const std::string& path, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const std::exception& e) {
    throw std::invalid_argument("config: invalid value at " + path + "." + key + ": " +
                                e.what());
  }
}

Interval interval_at(const json& j, const std::string& path, const char* key) {
  const auto v = get_at<std::vector<double>>(j, path, key);
  if (v.size() != 2)
    throw std::invalid_argument("config: " + path + "." + key + " expects [lo, hi]");
  return Interval{v[0], v[1]};
}

FlightMode mode_from(const std::string& text, const std::string& path) {
  if (text == "line") return FlightMode::line;
  if (text == "grid") return FlightMode::grid;
  throw std::invalid_argument("config: " + path + " expects 'line' or 'grid', got '" +
                              text + "'");
}

RunConfig from_json(const json& j) {
  RunConfig c;
  const json& forest = j.at("forest");
  c.seed = get_at<std::uint64_t>(forest, "forest", "seed");
  {
    const json& d = forest.at("density");
    c.density = d.is_number() ? DensitySpec::custom(d.get<double>())
                              : DensitySpec::parse(d.get<std::string>());
  }
  c.extent_m = get_at<double>(forest, "forest", "extent_m");
  const json& params = forest.at("params");
  c.params.height_m = interval_at(params, "forest.params", "height_m");
  c.params.trunk_length_m = interval_at(params, "forest.params", "trunk_length_m");
  c.params.trunk_radius_m = interval_at(params, "forest.params", "trunk_radius_m");
  c.params.leaf_size_m = interval_at(params, "forest.params", "leaf_size_m");
  c.params.branch_levels = get_at<int>(params, "forest.params", "branch_levels");
  c.params.branches_per_level =
      get_at<int>(params, "forest.params", "branches_per_level");
  c.params.leaves_per_branch =
      get_at<int>(params, "forest.params", "leaves_per_branch");
  c.params.crown_radius_fraction =
      get_at<double>(params, "forest.params", "crown_radius_fraction");
  c.params.min_spacing_m = get_at<double>(params, "forest.params", "min_spacing_m");
  c.params.leaf_tilt = get_at<double>(params, "forest.params", "leaf_tilt");

  const json& sensor = j.at("sensor");
  c.sensor.fov_deg = get_at<double>(sensor, "sensor", "fov_deg");
  c.sensor.resolution_px = get_at<int>(sensor, "sensor", "resolution_px");

  const json& flight = j.at("flight");
  c.altitude_m = get_at<double>(flight, "flight", "altitude_m");
  c.sample_dist_m = get_at<double>(flight, "flight", "sample_dist_m");
  c.mode = mode_from(get_at<std::string>(flight, "flight", "mode"), "flight.mode");
  c.aperture_m = get_at<double>(flight, "flight", "aperture_m");

  const json& grid = j.at("grid");
  c.cell_m = get_at<double>(grid, "grid", "cell_m");
  c.roi_m = get_at<double>(grid, "grid", "roi_m");

  const json& sweep = j.at("sweep");
  c.sweep.fovs_deg = get_at<std::vector<double>>(sweep, "sweep", "fovs_deg");
  c.sweep.altitudes_m = get_at<std::vector<double>>(sweep, "sweep", "altitudes_m");
  c.sweep.sample_dists_m =
      get_at<std::vector<double>>(sweep, "sweep", "sample_dists_m");
  c.sweep.densities.clear();
  for (const json& d : sweep.at("densities"))
    c.sweep.densities.push_back(d.is_number()
                                    ? DensitySpec::custom(d.get<double>())
                                    : DensitySpec::parse(d.get<std::string>()));
  c.sweep.seeds = get_at<std::vector<std::uint64_t>>(sweep, "sweep", "seeds");

  c.workers = get_at<int>(j, "(root)", "workers");
  c.out_dir = get_at<std::string>(j, "(root)", "out_dir");
  return c;
}

}  // namespace

void RunConfig::validate() const {
  params.validate();
  sensor.validate();
  if (!(extent_m > 0.0))
    throw std::invalid_argument("config: forest.extent_m must be > 0");
  if (density.trees_per_ha() < 0.0)
    throw std::invalid_argument("config: forest.density must be >= 0");
  if (!(altitude_m > 0.0))
    throw std::invalid_argument("config: flight.altitude_m must be > 0");
  if (!(sample_dist_m > 0.0))
    throw std::invalid_argument("config: flight.sample_dist_m must be > 0");
  if (aperture_m < 0.0)
    throw std::invalid_argument("config: flight.aperture_m must be >= 0");
  if (!(cell_m > 0.0)) throw std::invalid_argument("config: grid.cell_m must be > 0");
  if (!(roi_m > 0.0)) throw std::invalid_argument("config: grid.roi_m must be > 0");
  if (workers < 0) throw std::invalid_argument("config: workers must be >= 0");
  sweep_config().validate();
}

SweepConfig RunConfig::sweep_config() const {
  SweepConfig s = sweep;
  s.params = params;
  s.extent_m = extent_m;
  s.resolution_px = sensor.resolution_px;
  s.mode = mode;
  s.cell_m = cell_m;
  s.roi_m = roi_m;
  s.workers = workers;
  return s;
}

RunConfig make_config(const std::string& config_path, const std::string& preset,
                      const std::vector<std::string>& overrides) {
  json j = default_json();
  apply_preset(j, preset);
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw std::invalid_argument("config: cannot open " + config_path);
    json file_j;
    try {
      in >> file_j;
    } catch (const std::exception& e) {
      throw std::invalid_argument("config: parse error in " + config_path + ": " +
                                  e.what());
    }
    j.merge_patch(file_j);
  }
  for (const std::string& kv : overrides) apply_override(j, kv);
  RunConfig c = from_json(j);
  c.preset = preset.empty() ? "paper" : preset;
  c.validate();
  return c;
}

std::string config_json(const RunConfig& c) {
  json j = default_json();
  j["forest"]["seed"] = c.seed;
  j["forest"]["density"] = c.density.name();
  j["forest"]["extent_m"] = c.extent_m;
  json& p = j["forest"]["params"];
  p["height_m"] = {c.params.height_m.lo, c.params.height_m.hi};
  p["trunk_length_m"] = {c.params.trunk_length_m.lo, c.params.trunk_length_m.hi};
  p["trunk_radius_m"] = {c.params.trunk_radius_m.lo, c.params.trunk_radius_m.hi};
  p["leaf_size_m"] = {c.params.leaf_size_m.lo, c.params.leaf_size_m.hi};
  p["branch_levels"] = c.params.branch_levels;
  p["branches_per_level"] = c.params.branches_per_level;
  p["leaves_per_branch"] = c.params.leaves_per_branch;
  p["crown_radius_fraction"] = c.params.crown_radius_fraction;
  p["min_spacing_m"] = c.params.min_spacing_m;
  p["leaf_tilt"] = c.params.leaf_tilt;
  j["sensor"]["fov_deg"] = c.sensor.fov_deg;
  j["sensor"]["resolution_px"] = c.sensor.resolution_px;
  j["flight"]["altitude_m"] = c.altitude_m;
  j["flight"]["sample_dist_m"] = c.sample_dist_m;
  j["flight"]["mode"] = to_string(c.mode);
  j["flight"]["aperture_m"] = c.aperture_m;
  j["grid"]["cell_m"] = c.cell_m;
  j["grid"]["roi_m"] = c.roi_m;
  j["sweep"]["fovs_deg"] = c.sweep.fovs_deg;
  j["sweep"]["altitudes_m"] = c.sweep.altitudes_m;
  j["sweep"]["sample_dists_m"] = c.sweep.sample_dists_m;
  std::vector<std::string> dens;
  for (const DensitySpec& d : c.sweep.densities) dens.push_back(d.name());
  j["sweep"]["densities"] = dens;
  j["sweep"]["seeds"] = c.sweep.seeds;
  j["workers"] = c.workers;
  j["out_dir"] = c.out_dir;
  j["preset"] = c.preset;
  return j.dump(2);
}

}  // namespace aosim
