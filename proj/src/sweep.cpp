// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include "aosim/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "aosim/parallel.hpp"
#include "aosim/scene.hpp"
#include "aosim/version.hpp"

namespace aosim {

void SweepConfig::validate() const {
  if (fovs_deg.empty() || altitudes_m.empty() || sample_dists_m.empty() ||
      densities.empty() || seeds.empty())
    throw std::invalid_argument("SweepConfig: all factor lists must be nonempty");
  for (double f : fovs_deg) alpha_max(f);
  for (double h : altitudes_m)
    if (!(h > 0.0)) throw std::invalid_argument("SweepConfig: altitudes must be > 0");
  for (double d : sample_dists_m)
    if (!(d > 0.0)) throw std::invalid_argument("SweepConfig: distances must be > 0");
  for (const DensitySpec& ds : densities)
    if (ds.trees_per_ha() < 0.0)
      throw std::invalid_argument("SweepConfig: density must be >= 0");
  if (!(extent_m > 0.0)) throw std::invalid_argument("SweepConfig: extent_m must be > 0");
  if (resolution_px < 2)
    throw std::invalid_argument("SweepConfig: resolution_px must be >= 2");
  if (!(cell_m > 0.0)) throw std::invalid_argument("SweepConfig: cell_m must be > 0");
  if (!(roi_m > 0.0)) throw std::invalid_argument("SweepConfig: roi_m must be > 0");
  params.validate();
}

namespace {

SweepRecord run_cell(const Scene& scene, const SweepConfig& cfg,
                     const DensitySpec& density, double realized_per_ha,
                     std::uint64_t seed, double fov, double alt, double dist,
                     int workers) {
  SweepRecord rec;
  rec.density_class = density.name();
  rec.trees_per_ha = realized_per_ha;
  rec.seed = seed;
  rec.fov_deg = fov;
  rec.altitude_m = alt;
  rec.sample_dist_m = dist;
  rec.coverage_m = ground_coverage(alt, fov);
  rec.samples_n = samples_per_point(rec.coverage_m, dist);

  const auto t_begin = std::chrono::steady_clock::now();
  try {
    const Rect extent = scene.extent();
    const double aperture_side = aperture_side_for(cfg.roi_m, rec.coverage_m);
    if (aperture_side > std::min(extent.span().x(), extent.span().y()) + 1e-9) {
      rec.status = "footprint_exceeds_extent";
      return rec;
    }
    const Rect aperture = Rect::centered(extent.center(), aperture_side,
                                         cfg.mode == FlightMode::line
                                             ? 0.0
                                             : aperture_side);
    FlightPlan plan = plan_flight(aperture, dist, alt, cfg.mode);

    SensorConfig sensor{fov, cfg.resolution_px};
    const double gsd = rec.coverage_m / cfg.resolution_px;
    const double cell = std::min(cfg.cell_m, gsd);

    // The grid spans the aperture region; in line mode the covered band.
    Rect grid_rect = cfg.mode == FlightMode::line
                         ? Rect::centered(extent.center(), aperture_side,
                                          rec.coverage_m)
                         : Rect::centered(extent.center(), aperture_side,
                                          aperture_side);
    const GroundGrid grid = GroundGrid::covering(grid_rect, cell);

    const IntegralImage integral = integrate(scene, plan, sensor, grid, workers);
    const RegionOfInterest roi = roi_for(plan, sensor, std::max(0.3, cell));
    rec.visibility_mean = visibility(integral, roi);
    rec.visibility_std = visibility_std(integral, roi);
    rec.integral_mean = integral_mean(integral, grid_rect);
  } catch (const CoverageError& e) {
    rec.status = std::string("footprint_exceeds_extent");
  } catch (const std::exception& e) {
    std::string reason = e.what();
    std::replace(reason.begin(), reason.end(), ',', ';');
    std::replace(reason.begin(), reason.end(), '\n', ' ');
    rec.status = "error:" + reason;
  }
  rec.runtime_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin)
          .count();
  return rec;
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  const int workers = config.workers > 0 ? config.workers : default_workers();

  std::vector<SweepRecord> records;
  const std::size_t cells_per_scene =
      config.fovs_deg.size() * config.altitudes_m.size() * config.sample_dists_m.size();
  records.reserve(config.densities.size() * config.seeds.size() * cells_per_scene);

  const Rect extent = Rect::square(config.extent_m);
  for (const DensitySpec& density : config.densities) {
    for (std::uint64_t seed : config.seeds) {
      const Forest forest = generate_forest(seed, density, extent, config.params);
      const Scene scene = build_scene(forest);
      const double realized = forest.realized_per_ha();

      // Cells of one scene run concurrently; results land in canonical order.
      struct Cell {
        double fov, alt, dist;
      };
      std::vector<Cell> cells;
      cells.reserve(cells_per_scene);
      for (double fov : config.fovs_deg)
        for (double alt : config.altitudes_m)
          for (double dist : config.sample_dists_m) cells.push_back({fov, alt, dist});

      std::vector<SweepRecord> scene_records(cells.size());
      parallel_for(cells.size(), workers, [&](std::size_t k) {
        scene_records[k] = run_cell(scene, config, density, realized, seed,
                                    cells[k].fov, cells[k].alt, cells[k].dist, 1);
      });
      for (SweepRecord& r : scene_records) records.push_back(std::move(r));
    }
  }
  return records;
}

double find_optimal_fov(const std::vector<SweepRecord>& records,
                        const std::string& density_class, double altitude_m,
                        double sample_dist_m) {
  std::map<double, std::pair<double, int>> by_fov;  // fov -> (sum, n)
  for (const SweepRecord& r : records) {
    if (!r.ok() || r.density_class != density_class) continue;
    if (std::abs(r.altitude_m - altitude_m) > 1e-9) continue;
    if (std::abs(r.sample_dist_m - sample_dist_m) > 1e-9) continue;
    auto& acc = by_fov[r.fov_deg];
    acc.first += r.integral_mean;
    acc.second += 1;
  }
  if (by_fov.size() < 2)
    throw std::invalid_argument(
        "find_optimal_fov: need records for at least 2 distinct FOVs");
  double best_fov = 0.0;
  double best = -1.0;
  for (const auto& [fov, acc] : by_fov) {  // ascending fov: ties keep narrower
    const double mean = acc.first / acc.second;
    if (mean > best) {
      best = mean;
      best_fov = fov;
    }
  }
  return best_fov;
}

namespace {

std::string fmt(double v, int precision) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << v;
  return os.str();
}

std::string fmt_param(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRecord>& records, bool with_timings) {
  std::ostringstream os;
  os << "density_class,trees_per_ha,seed,fov_deg,altitude_m,sample_dist_m,"
        "coverage_m,samples_n,visibility_mean,visibility_std,integral_mean,"
        "runtime_s,status\n";
  for (const SweepRecord& r : records) {
    os << r.density_class << ',' << fmt_param(r.trees_per_ha) << ',' << r.seed << ','
       << fmt_param(r.fov_deg) << ',' << fmt_param(r.altitude_m) << ','
       << fmt_param(r.sample_dist_m) << ',' << fmt(r.coverage_m, 6) << ','
       << fmt(r.samples_n, 6) << ',';
    if (r.ok())
      os << fmt(r.visibility_mean, 6) << ',' << fmt(r.visibility_std, 6) << ','
         << fmt(r.integral_mean, 6) << ',';
    else
      os << ",,,";
    os << fmt(with_timings ? r.runtime_s : 0.0, 3) << ',' << r.status << '\n';
  }
  return os.str();
}

std::string sweep_manifest(const SweepConfig& config, std::size_t n_records,
                           std::size_t n_failed) {
  nlohmann::json j;
  j["format"] = "aosim-sweep-manifest/1";
  j["version"] = kVersion;
  j["fovs_deg"] = config.fovs_deg;
  j["altitudes_m"] = config.altitudes_m;
  j["sample_dists_m"] = config.sample_dists_m;
  std::vector<std::string> dens;
  for (const DensitySpec& d : config.densities) dens.push_back(d.name());
  j["densities"] = dens;
  j["seeds"] = config.seeds;
  j["extent_m"] = config.extent_m;
  j["resolution_px"] = config.resolution_px;
  j["mode"] = to_string(config.mode);
  j["cell_m"] = config.cell_m;
  j["roi_m"] = config.roi_m;
  const TreeParams& p = config.params;
  j["tree_params"] = {{"height_m", {p.height_m.lo, p.height_m.hi}},
                      {"trunk_length_m", {p.trunk_length_m.lo, p.trunk_length_m.hi}},
                      {"trunk_radius_m", {p.trunk_radius_m.lo, p.trunk_radius_m.hi}},
                      {"leaf_size_m", {p.leaf_size_m.lo, p.leaf_size_m.hi}},
                      {"branch_levels", p.branch_levels},
                      {"branches_per_level", p.branches_per_level},
                      {"leaves_per_branch", p.leaves_per_branch},
                      {"crown_radius_fraction", p.crown_radius_fraction},
                      {"min_spacing_m", p.min_spacing_m},
                      {"leaf_tilt", p.leaf_tilt}};
  j["records"] = n_records;
  j["failed"] = n_failed;
  return j.dump(2);
}

}  // namespace aosim
