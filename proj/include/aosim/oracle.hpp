// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force ground truth: per-point visibility fractions by direct ray
// casting against the scene, bypassing image formation and registration.
// Shares only occluded() with the main pipeline.
#pragma once

#include <vector>

#include "aosim/integration.hpp"

namespace aosim {

/// Fraction of covering poses whose sight line to the point is clear.
/// Throws CoverageError when no pose footprint contains the point.
double point_visibility(const Scene& scene, const Vector2d& ground_point,
                        const std::vector<CameraPose>& poses,
                        const SensorConfig& sensor);

/// IntegralImage whose per-cell value is point_visibility at the cell center
/// and whose count is the number of covering poses. Never rasterizes, so the
/// result is independent of sensor.resolution_px.
IntegralImage oracle_integral(const Scene& scene, const FlightPlan& plan,
                              const SensorConfig& sensor, const GroundGrid& grid,
                              int workers = 1);

/// Mean absolute per-cell difference between two integrals on the same grid,
/// over cells covered in both.
double mean_abs_diff(const IntegralImage& a, const IntegralImage& b);

}  // namespace aosim
