// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
//
// Full factorial experiment harness over FOV x altitude x sampling distance
// x density x seed. Emits a fixed-header CSV, a run manifest, and locates
// empirical optimal FOVs.
#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aosim/forest.hpp"
#include "aosim/integration.hpp"

namespace aosim {

/// Synthetic-aperture side for a target fully-sampled region and coverage,
/// rounded up to whole 2 m so the standard distance ladder {2, 1.5, 1, 0.5}
/// spans apertures without floor-phase jitter in the pose lattice.
inline double aperture_side_for(double roi_m, double coverage_m) {
  return std::ceil((roi_m + coverage_m) / 2.0) * 2.0;
}

struct SweepConfig {
  std::vector<double> fovs_deg = {20, 30, 40, 50, 60, 70, 80, 90};
  std::vector<double> altitudes_m = {30, 40, 50};
  std::vector<double> sample_dists_m = {0.5, 1.0, 1.5, 2.0};
  std::vector<DensitySpec> densities = {DensitySpec::sparse(), DensitySpec::medium(),
                                        DensitySpec::dense()};
  std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
  TreeParams params;
  double extent_m = 150.0;
  int resolution_px = 512;
  FlightMode mode = FlightMode::grid;
  double cell_m = 0.25;   // upper bound; per cell the grid uses min(cell_m, c/res)
  double roi_m = 20.0;    // target side of the fully sampled evaluation region
  int workers = 0;        // 0 = hardware concurrency

  void validate() const;
};

struct SweepRecord {
  std::string density_class;
  double trees_per_ha = 0.0;  // realized
  std::uint64_t seed = 0;
  double fov_deg = 0.0;
  double altitude_m = 0.0;
  double sample_dist_m = 0.0;
  double coverage_m = 0.0;       // Eq. 2 from (altitude, fov)
  double samples_n = 0.0;        // Eq. 3 from (coverage, distance)
  double visibility_mean = 0.0;  // per-point fraction over the full-coverage ROI
  double visibility_std = 0.0;
  double integral_mean = 0.0;    // fixed-denominator scan-area integral brightness
  double runtime_s = 0.0;
  std::string status = "ok";     // ok | footprint_exceeds_extent | error:<reason>

  bool ok() const { return status == "ok"; }
};

/// One record per factorial element, in canonical order (density, seed, fov,
/// altitude, distance). Failed cells are recorded, not thrown.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// FOV maximizing the seed-averaged integral_mean for the given filter; exact
/// ties break toward the narrower FOV. Requires at least 2 distinct FOVs with
/// ok records.
double find_optimal_fov(const std::vector<SweepRecord>& records,
                        const std::string& density_class, double altitude_m,
                        double sample_dist_m);

/// Fixed, documented header; one column per SweepRecord field, '.' decimals.
/// runtime_s is written as 0.000 unless with_timings (reruns stay
/// byte-identical by default).
std::string sweep_csv(const std::vector<SweepRecord>& records,
                      bool with_timings = false);

std::string sweep_manifest(const SweepConfig& config, std::size_t n_records,
                           std::size_t n_failed);

}  // namespace aosim
