// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
//
// CLI run configuration: JSON file + preset + dotted-path overrides, validated
// before any work starts.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aosim/sweep.hpp"

namespace aosim {

struct RunConfig {
  // forest
  std::uint64_t seed = 1;
  DensitySpec density = DensitySpec::medium();
  double extent_m = 150.0;
  TreeParams params;

  // sensor
  SensorConfig sensor{50.0, 512};  // integrate default FOV is 50 deg

  // flight
  double altitude_m = 30.0;
  double sample_dist_m = 1.0;
  FlightMode mode = FlightMode::grid;
  double aperture_m = 0.0;  // 0 = auto: roi_m + ground coverage

  // ground grid
  double cell_m = 0.25;
  double roi_m = 20.0;

  // sweep factor lists
  SweepConfig sweep;

  int workers = 0;  // 0 = hardware concurrency
  std::string out_dir = "out";
  std::string preset = "paper";

  void validate() const;

  /// Sweep configuration with the shared knobs copied in.
  SweepConfig sweep_config() const;
};

/// Build a config from an optional JSON file, an optional preset name
/// ("paper" or "desk"), and `--set key=value` dotted-path overrides. Unknown
/// keys and invalid values are rejected with the offending key path.
RunConfig make_config(const std::string& config_path, const std::string& preset,
                      const std::vector<std::string>& overrides);

std::string config_json(const RunConfig& config);

}  // namespace aosim
