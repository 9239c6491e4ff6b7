// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
//
// aosim: simulate drone scans over procedural forests and measure how much
// of the ground an averaged (synthetic-aperture) integral image reveals.
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "aosim/config.hpp"
#include "aosim/oracle.hpp"
#include "aosim/parallel.hpp"
#include "aosim/plot.hpp"
#include "aosim/scene.hpp"
#include "aosim/version.hpp"

namespace fs = std::filesystem;
using namespace aosim;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitPartial = 3;

struct CommonOpts {
  std::string config_path;
  std::string preset;
  std::vector<std::string> overrides;
  std::string out_dir;
  int workers = -1;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("-c,--config", opts.config_path, "JSON config file");
  cmd->add_option("--preset", opts.preset, "Parameter preset: paper | desk");
  cmd->add_option("--set", opts.overrides,
                  "Override a config key, e.g. --set sensor.fov_deg=70");
  cmd->add_option("-o,--out", opts.out_dir, "Output directory");
  cmd->add_option("--workers", opts.workers, "Worker threads (0 = all cores)");
}

RunConfig load_config(const CommonOpts& opts) {
  RunConfig cfg = make_config(opts.config_path, opts.preset, opts.overrides);
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.workers >= 0) cfg.workers = opts.workers;
  return cfg;
}

int effective_workers(const RunConfig& cfg) {
  return cfg.workers > 0 ? cfg.workers : default_workers();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
}

void write_manifest(const RunConfig& cfg, const fs::path& dir,
                    const std::string& command) {
  std::string j = config_json(cfg);
  j.pop_back();  // strip trailing '}' to splice command and version in
  j += ",\n  \"command\": \"" + command + "\",\n  \"version\": \"" + kVersion +
       "\"\n}";
  write_text(dir / "manifest.json", j);
}

Rect forest_extent(const RunConfig& cfg) { return Rect::square(cfg.extent_m); }

double auto_aperture(const RunConfig& cfg) {
  const double c = ground_coverage(cfg.altitude_m, cfg.sensor.fov_deg);
  return cfg.aperture_m > 0.0 ? cfg.aperture_m : aperture_side_for(cfg.roi_m, c);
}

FlightPlan make_plan(const RunConfig& cfg, const Rect& extent) {
  const double side = auto_aperture(cfg);
  const Rect aperture = Rect::centered(
      extent.center(), side, cfg.mode == FlightMode::line ? 0.0 : side);
  return plan_flight(aperture, cfg.sample_dist_m, cfg.altitude_m, cfg.mode);
}

GroundGrid make_grid(const RunConfig& cfg, const Rect& region) {
  const double gsd =
      ground_coverage(cfg.altitude_m, cfg.sensor.fov_deg) / cfg.sensor.resolution_px;
  return GroundGrid::covering(region, std::min(cfg.cell_m, gsd));
}

int cmd_forest(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  const Forest forest =
      generate_forest(cfg.seed, cfg.density, forest_extent(cfg), cfg.params);
  save_forest(forest, (dir / "forest.json").string());

  const Scene scene = build_scene(forest);
  const Bitmap occ = ortho_occupancy(scene, forest.extent, cfg.sensor.resolution_px,
                                     effective_workers(cfg));
  write_pgm(occ, (dir / "occupancy.pgm").string());
  write_manifest(cfg, dir, "forest");

  std::cout << "trees: " << forest.trees.size() << " ("
            << forest.realized_per_ha() << "/ha)\n";
  std::cout << "occupancy_white_ratio: " << white_ratio(occ) << "\n";
  if (forest.trees.size() >= 2) {
    const ForestStats stats = forest_stats(forest);
    std::cout << "h_t: " << stats.h_t_m << " m, d_t: " << stats.d_t_m << " m\n";
  }
  std::cout << "wrote " << (dir / "forest.json").string() << ", "
            << (dir / "occupancy.pgm").string() << "\n";
  return 0;
}

int cmd_render(const RunConfig& cfg, double pose_x, double pose_y, bool has_pose) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  const Forest forest =
      generate_forest(cfg.seed, cfg.density, forest_extent(cfg), cfg.params);
  const Scene scene = build_scene(forest);

  CameraPose pose;
  pose.xy = has_pose ? Vector2d(pose_x, pose_y) : forest.extent.center();
  pose.altitude_m = cfg.altitude_m;
  const BinaryAerialImage img =
      render_aerial(scene, pose, cfg.sensor, effective_workers(cfg));
  write_pgm(img.pixels, (dir / "aerial.pgm").string());
  write_manifest(cfg, dir, "render");
  std::cout << "white_ratio: " << white_ratio(img.pixels) << "\n";
  std::cout << "wrote " << (dir / "aerial.pgm").string() << "\n";
  return 0;
}

int cmd_integrate(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  const Forest forest =
      generate_forest(cfg.seed, cfg.density, forest_extent(cfg), cfg.params);
  const Scene scene = build_scene(forest);
  const FlightPlan plan = make_plan(cfg, forest.extent);

  const double c = ground_coverage(cfg.altitude_m, cfg.sensor.fov_deg);
  Rect region = Rect::centered(forest.extent.center(), auto_aperture(cfg),
                               cfg.mode == FlightMode::line ? c : auto_aperture(cfg));
  const GroundGrid grid = make_grid(cfg, region);
  const IntegralImage integral =
      integrate(scene, plan, cfg.sensor, grid, effective_workers(cfg));

  write_integral_pgm(integral, (dir / "integral.pgm").string());
  write_text(dir / "integral_meta.json",
             integral_metadata(integral, plan, cfg.sensor, cfg.seed, "integrate"));
  write_manifest(cfg, dir, "integrate");

  const RegionOfInterest roi = roi_for(plan, cfg.sensor, std::max(0.3, grid.cell_m));
  std::cout << "poses: " << plan.poses.size() << ", coverage_m: " << c << "\n";
  std::cout << "visibility: " << visibility(integral, roi)
            << " (fraction over fully sampled region)\n";
  std::cout << "integral_mean: " << integral_mean(integral, region)
            << " (scan-area average)\n";
  std::cout << "wrote " << (dir / "integral.pgm").string() << "\n";
  return 0;
}

int cmd_sweep(const RunConfig& cfg, bool with_timings) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  const SweepConfig sweep_cfg = cfg.sweep_config();
  const std::vector<SweepRecord> records = run_sweep(sweep_cfg);

  write_text(dir / "sweep.csv", sweep_csv(records, with_timings));
  std::size_t failed = 0;
  for (const SweepRecord& r : records)
    if (!r.ok()) ++failed;
  write_text(dir / "run_manifest.json",
             sweep_manifest(sweep_cfg, records.size(), failed));
  write_manifest(cfg, dir, "sweep");
  write_text(dir / "fig_visibility_vs_fov.svg", fig_visibility_vs_fov(records));
  write_text(dir / "fig_visibility_vs_n.svg", fig_visibility_vs_n(records));

  for (const DensitySpec& d : sweep_cfg.densities) {
    try {
      const double fov = find_optimal_fov(records, d.name(), sweep_cfg.altitudes_m[0],
                                          sweep_cfg.sample_dists_m[0]);
      std::cout << "optimal_fov[" << d.name() << ", h=" << sweep_cfg.altitudes_m[0]
                << ", d=" << sweep_cfg.sample_dists_m[0] << "]: " << fov << " deg\n";
    } catch (const std::exception&) {
      // not enough ok records for this slice; the CSV still carries the rows
    }
  }
  std::cout << "records: " << records.size() << ", failed: " << failed << "\n";
  std::cout << "wrote " << (dir / "sweep.csv").string() << "\n";
  if (failed > 0) {
    std::cout << "exit " << kExitPartial << ": " << failed << " failed rows\n";
    return kExitPartial;
  }
  return 0;
}

int cmd_predict(const RunConfig& cfg, double h_t, double d_t,
                const std::string& forest_file) {
  if (!forest_file.empty()) {
    const Forest forest = load_forest(forest_file);
    const ForestStats stats = forest_stats(forest);
    h_t = stats.h_t_m;
    d_t = stats.d_t_m;
    std::cout << "forest stats: h_t=" << h_t << " m, d_t=" << d_t << " m, density="
              << stats.trees_per_ha << "/ha\n";
  }
  if (!(h_t > 0.0) || !(d_t > 0.0)) {
    std::cerr << "predict: provide --ht and --dt (or --forest <file>)\n";
    return kExitConfig;
  }
  const double fov = optimal_fov(d_t, h_t);
  std::cout << "optimal_fov: " << fov << " deg\n";
  std::cout << "altitude_m,sample_dist_m,coverage_m,samples_n\n";
  for (double h : cfg.sweep.altitudes_m) {
    const double c = ground_coverage(h, fov);
    for (double d : cfg.sweep.sample_dists_m)
      std::cout << h << "," << d << "," << c << "," << samples_per_point(c, d) << "\n";
  }
  return 0;
}

int cmd_oracle(const RunConfig& cfg) {
  const fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  const Forest forest =
      generate_forest(cfg.seed, cfg.density, forest_extent(cfg), cfg.params);
  const Scene scene = build_scene(forest);
  const FlightPlan plan = make_plan(cfg, forest.extent);

  const double c = ground_coverage(cfg.altitude_m, cfg.sensor.fov_deg);
  Rect region = Rect::centered(forest.extent.center(), auto_aperture(cfg),
                               cfg.mode == FlightMode::line ? c : auto_aperture(cfg));
  const GroundGrid grid = make_grid(cfg, region);

  const int workers = effective_workers(cfg);
  const IntegralImage integral = integrate(scene, plan, cfg.sensor, grid, workers);
  const IntegralImage oracle = oracle_integral(scene, plan, cfg.sensor, grid, workers);

  write_integral_pgm(integral, (dir / "integral.pgm").string());
  write_integral_pgm(oracle, (dir / "oracle.pgm").string());
  write_text(dir / "oracle_meta.json",
             integral_metadata(oracle, plan, cfg.sensor, cfg.seed, "oracle"));
  write_manifest(cfg, dir, "oracle");

  const double diff = mean_abs_diff(integral, oracle);
  std::cout << "mean_abs_diff: " << diff << "\n";
  std::cout << "wrote " << (dir / "integral.pgm").string() << " and "
            << (dir / "oracle.pgm").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AOS forest occlusion-removal simulator"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOpts forest_opts, render_opts, integrate_opts, sweep_opts, predict_opts,
      oracle_opts;

  CLI::App* forest_cmd =
      app.add_subcommand("forest", "Generate a forest; write JSON + occupancy map");
  add_common(forest_cmd, forest_opts);

  CLI::App* render_cmd =
      app.add_subcommand("render", "Render one binarized nadir aerial image");
  add_common(render_cmd, render_opts);
  double pose_x = 0.0, pose_y = 0.0;
  CLI::Option* px = render_cmd->add_option("--pose-x", pose_x, "Camera x (m)");
  CLI::Option* py = render_cmd->add_option("--pose-y", pose_y, "Camera y (m)");

  CLI::App* integrate_cmd = app.add_subcommand(
      "integrate", "Fly a plan, integrate images, write the integral");
  add_common(integrate_cmd, integrate_opts);

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Full factorial parameter sweep; CSV + plots");
  add_common(sweep_cmd, sweep_opts);
  bool with_timings = false;
  sweep_cmd->add_flag("--timings", with_timings,
                      "Record wall-clock runtimes in the CSV (off keeps reruns "
                      "byte-identical)");

  CLI::App* predict_cmd = app.add_subcommand(
      "predict", "Optimal FOV from forest stats (Eq. 4) plus a c/n table");
  add_common(predict_cmd, predict_opts);
  double h_t = 0.0, d_t = 0.0;
  std::string forest_file;
  predict_cmd->add_option("--ht", h_t, "Mean trunk-part height h_t (m)");
  predict_cmd->add_option("--dt", d_t, "Mean tree distance d_t (m)");
  predict_cmd->add_option("--forest", forest_file, "Forest JSON to measure instead");

  CLI::App* oracle_cmd = app.add_subcommand(
      "oracle", "Integrate and compare against the brute-force oracle");
  add_common(oracle_cmd, oracle_opts);

  CLI11_PARSE(app, argc, argv);

  try {
    if (forest_cmd->parsed()) return cmd_forest(load_config(forest_opts));
    if (render_cmd->parsed())
      return cmd_render(load_config(render_opts), pose_x, pose_y,
                        px->count() > 0 && py->count() > 0);
    if (integrate_cmd->parsed()) return cmd_integrate(load_config(integrate_opts));
    if (sweep_cmd->parsed()) return cmd_sweep(load_config(sweep_opts), with_timings);
    if (predict_cmd->parsed())
      return cmd_predict(load_config(predict_opts), h_t, d_t, forest_file);
    if (oracle_cmd->parsed()) return cmd_oracle(load_config(oracle_opts));
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
