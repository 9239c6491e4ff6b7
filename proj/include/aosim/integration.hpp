// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
//
// AOS core: plan flight poses, geo-register binarized aerial images onto a
// ground grid, average them into an integral image, and score visibility.
#pragma once

#include <string>
#include <vector>

#include "aosim/common.hpp"
#include "aosim/imaging.hpp"

namespace aosim {

enum class FlightMode { line, grid };

inline std::string to_string(FlightMode m) {
  return m == FlightMode::line ? "line" : "grid";
}

struct FlightPlan {
  std::vector<CameraPose> poses;  // canonical order: y-major, then x ascending
  FlightMode mode = FlightMode::grid;
  double spacing_m = 1.0;
  Rect aperture;  // rectangle the poses span (degenerate in y for line mode)

  double altitude_m() const { return poses.empty() ? 0.0 : poses.front().altitude_m; }
};

/// Poses on a regular lattice with step spacing_m, centered in `extent`:
/// a 1D line through the extent center (mode=line) or a 2D grid (mode=grid).
/// Pose count per axis is floor(span/d) + 1; a span smaller than d yields a
/// single pose on that axis.
FlightPlan plan_flight(const Rect& extent, double spacing_m, double altitude_m,
                       FlightMode mode);

struct GroundGrid {
  Vector2d origin{0.0, 0.0};  // outer corner of cell (0, 0)
  double cell_m = 0.25;
  int nx = 1;
  int ny = 1;

  void validate() const {
    if (!(cell_m > 0.0) || nx < 1 || ny < 1)
      throw std::invalid_argument("GroundGrid: cell_m > 0 and nx, ny >= 1 required");
  }
  Vector2d cell_center(int ix, int iy) const {
    return origin + Vector2d((ix + 0.5) * cell_m, (iy + 0.5) * cell_m);
  }
  static GroundGrid covering(const Rect& r, double cell_m);
};

/// Per-cell (sum, count) accumulators; value = sum/count is the AOS integral
/// in [0,1], undefined where count = 0.
struct IntegralImage {
  GroundGrid grid;
  Eigen::ArrayXXd sum;    // (ny, nx)
  Eigen::ArrayXXi count;  // (ny, nx)
  int poses_integrated = 0;

  double value(int ix, int iy) const {
    const int c = count(iy, ix);
    if (c == 0) throw CoverageError("IntegralImage::value: cell has no samples");
    return sum(iy, ix) / c;
  }
};

/// One image's contribution: for every cell whose center lies inside the
/// footprint, (pixel value at the nearest back-projected pixel, 1).
void register_to_ground(const BinaryAerialImage& image, const GroundGrid& grid,
                        Eigen::ArrayXXd& sum, Eigen::ArrayXXi& count);

/// Renders every pose and accumulates registered contributions in plan order.
/// Renders may run on `workers` threads; the accumulated result is identical
/// for every worker count.
IntegralImage integrate(const Scene& scene, const FlightPlan& plan,
                        const SensorConfig& sensor, const GroundGrid& grid,
                        int workers = 1);

struct RegionOfInterest {
  Rect rect;
};

/// The aperture extent shrunk on each side by coverage/2 (plus a small cell
/// margin), so every ROI cell receives the full per-axis sample window. For
/// line plans the cross-track side is the covered band of width c instead.
RegionOfInterest roi_for(const FlightPlan& plan, const SensorConfig& sensor,
                         double margin_m = 0.3);

/// Arithmetic mean of value(cell) over cells whose centers fall in the ROI.
/// Throws CoverageError if any such cell has count = 0 (or none exist).
double visibility(const IntegralImage& integral, const RegionOfInterest& roi);

/// Population standard deviation of value(cell) over the ROI.
double visibility_std(const IntegralImage& integral, const RegionOfInterest& roi);

/// Mean brightness of the integral over `region` when averaging all
/// integrated images with a fixed denominator: mean over cells of
/// sum / poses_integrated. Cells no image covers count as fully dark, so the
/// score couples per-line clearness with how much of the region each
/// configuration actually samples (the figure-style visibility of the scan).
double integral_mean(const IntegralImage& integral, const Rect& region);

/// PGM export quantized by round(value * 255); uncovered cells write 0.
void write_integral_pgm(const IntegralImage& integral, const std::string& path);

/// Sidecar metadata (grid, plan, sensor, seed, tag) as JSON text.
std::string integral_metadata(const IntegralImage& integral, const FlightPlan& plan,
                              const SensorConfig& sensor, std::uint64_t seed,
                              const std::string& tag);

}  // namespace aosim
