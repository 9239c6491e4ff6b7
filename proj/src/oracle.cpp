// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include "aosim/oracle.hpp"

#include "aosim/parallel.hpp"

namespace aosim {

double point_visibility(const Scene& scene, const Vector2d& ground_point,
                        const std::vector<CameraPose>& poses,
                        const SensorConfig& sensor) {
  if (poses.empty()) throw std::invalid_argument("point_visibility: no poses");
  const Vector3d target(ground_point.x(), ground_point.y(), 0.0);
  int covering = 0;
  int clear = 0;
  for (const CameraPose& pose : poses) {
    if (!in_footprint(pose, sensor, ground_point)) continue;
    ++covering;
    if (!scene.occluded(pose.position(), target)) ++clear;
  }
  if (covering == 0)
    throw CoverageError("point_visibility: point outside every footprint");
  return static_cast<double>(clear) / covering;
}

IntegralImage oracle_integral(const Scene& scene, const FlightPlan& plan,
                              const SensorConfig& sensor, const GroundGrid& grid,
                              int workers) {
  if (plan.poses.empty())
    throw std::invalid_argument("oracle_integral: empty flight plan");
  grid.validate();

  IntegralImage out;
  out.grid = grid;
  out.sum = Eigen::ArrayXXd::Zero(grid.ny, grid.nx);
  out.count = Eigen::ArrayXXi::Zero(grid.ny, grid.nx);
  out.poses_integrated = static_cast<int>(plan.poses.size());

  parallel_for(static_cast<std::size_t>(grid.ny), workers, [&](std::size_t row) {
    const int iy = static_cast<int>(row);
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Vector2d center = grid.cell_center(ix, iy);
      const Vector3d target(center.x(), center.y(), 0.0);
      int covering = 0;
      int clear = 0;
      for (const CameraPose& pose : plan.poses) {
        if (!in_footprint(pose, sensor, center)) continue;
        ++covering;
        if (!scene.occluded(pose.position(), target)) ++clear;
      }
      out.count(iy, ix) = covering;
      out.sum(iy, ix) = clear;
    }
  });
  return out;
}

double mean_abs_diff(const IntegralImage& a, const IntegralImage& b) {
  if (a.grid.nx != b.grid.nx || a.grid.ny != b.grid.ny)
    throw std::invalid_argument("mean_abs_diff: grid shape mismatch");
  double acc = 0.0;
  long cells = 0;
  for (int iy = 0; iy < a.grid.ny; ++iy)
    for (int ix = 0; ix < a.grid.nx; ++ix) {
      if (a.count(iy, ix) == 0 || b.count(iy, ix) == 0) continue;
      const double va = a.sum(iy, ix) / a.count(iy, ix);
      const double vb = b.sum(iy, ix) / b.count(iy, ix);
      acc += std::abs(va - vb);
      ++cells;
    }
  if (cells == 0) throw CoverageError("mean_abs_diff: no commonly covered cells");
  return acc / static_cast<double>(cells);
}

}  // namespace aosim
