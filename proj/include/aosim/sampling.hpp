// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
//
// Closed-form sampling geometry of a nadir camera scan: maximal viewing
// angle, ground coverage, per-point sample count, and the optimal
// field-of-view predictor for a two-layer (trunk/crown) forest.
#pragma once

#include <cmath>
#include <stdexcept>

#include "aosim/common.hpp"

namespace aosim {

/// Square-frustum nadir camera: one full field-of-view angle applied to both
/// image axes, square image.
struct SensorConfig {
  double fov_deg = 50.0;
  int resolution_px = 512;

  void validate() const {
    if (!(fov_deg > 0.0 && fov_deg < 180.0))
      throw std::domain_error("SensorConfig: fov_deg must be in (0, 180)");
    if (resolution_px < 2)
      throw std::invalid_argument("SensorConfig: resolution_px must be >= 2");
  }
};

/// Half the field of view; the maximal off-nadir viewing angle. Degrees.
inline double alpha_max(double fov_deg) {
  if (!(fov_deg > 0.0 && fov_deg < 180.0))
    throw std::domain_error("alpha_max: fov_deg must be in (0, 180)");
  return fov_deg / 2.0;
}

/// Ground footprint width c = 2 h tan(fov/2) of one image, meters.
inline double ground_coverage(double altitude_m, double fov_deg) {
  const double a = deg2rad(alpha_max(fov_deg));
  if (altitude_m < 0.0)
    throw std::domain_error("ground_coverage: altitude_m must be >= 0");
  return 2.0 * altitude_m * std::tan(a);
}

/// How often the same ground point is captured: n = c / d. Fractional; the
/// flight planner floors it when counting discrete poses.
inline double samples_per_point(double coverage_m, double sample_dist_m) {
  if (!(sample_dist_m > 0.0))
    throw std::domain_error("samples_per_point: sample_dist_m must be > 0");
  if (coverage_m < 0.0)
    throw std::domain_error("samples_per_point: coverage_m must be >= 0");
  return coverage_m / sample_dist_m;
}

/// Optimal field of view 2 atan(d_t / h_t) for a forest with mean tree
/// distance d_t and mean trunk-part height h_t. Degrees, in (0, 180).
inline double optimal_fov(double d_t_m, double h_t_m) {
  if (!(d_t_m > 0.0) || !(h_t_m > 0.0))
    throw std::domain_error("optimal_fov: d_t_m and h_t_m must be > 0");
  return rad2deg(2.0 * std::atan(d_t_m / h_t_m));
}

/// Derived scan geometry for one (sensor, altitude, spacing) configuration.
struct SamplingGeometry {
  double altitude_m = 0.0;
  double sample_dist_m = 0.0;
  double coverage_m = 0.0;
  double samples_n = 0.0;
};

inline SamplingGeometry make_sampling_geometry(const SensorConfig& sensor,
                                               double altitude_m,
                                               double sample_dist_m) {
  if (!(altitude_m > 0.0))
    throw std::domain_error("SamplingGeometry: altitude_m must be > 0");
  SamplingGeometry g;
  g.altitude_m = altitude_m;
  g.sample_dist_m = sample_dist_m;
  g.coverage_m = ground_coverage(altitude_m, sensor.fov_deg);
  g.samples_n = samples_per_point(g.coverage_m, sample_dist_m);
  return g;
}

/// Mean forest descriptors entering the optimal-FOV predictor.
struct ForestStats {
  double h_t_m = 0.0;        ///< mean trunk-part height
  double d_t_m = 0.0;        ///< mean nearest-neighbor trunk distance
  double trees_per_ha = 0.0;
};

}  // namespace aosim
