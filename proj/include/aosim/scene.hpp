// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
//
// Immutable ray-queryable scene: all occluder primitives of a forest in a
// uniform 3D grid, plus the flat ground plane z = 0. occluded() is a pure
// read and safe to call from any number of threads.
#pragma once

#include <cstdint>
#include <vector>

#include "aosim/common.hpp"
#include "aosim/forest.hpp"
#include "aosim/geometry.hpp"

namespace aosim {

struct Ray {
  Vector3d origin{0, 0, 0};
  Vector3d direction{0, 0, -1};  // unit
  double t_max = 1.0;
};

class Scene {
 public:
  /// True iff any primitive intersects the open segment (from, to).
  /// Endpoints are inset by kEndpointEps so a camera exactly on a primitive
  /// boundary or a ground point on the plane never self-occludes.
  bool occluded(const Vector3d& from, const Vector3d& to) const;

  /// Reference implementation: exhaustive scan over all primitives. The
  /// uniform grid must agree with this on every segment.
  bool occluded_linear(const Vector3d& from, const Vector3d& to) const;

  std::size_t primitive_count() const { return cylinders_.size() + discs_.size(); }
  double max_z() const { return bounds_.hi.z(); }
  const Rect& extent() const { return extent_; }
  double ground_z() const { return 0.0; }

  const std::vector<Cylinder>& cylinders() const { return cylinders_; }
  const std::vector<Disc>& discs() const { return discs_; }

  static constexpr double kEndpointEps = 1e-4;  // meters

  friend Scene build_scene(const Forest& forest);

 private:
  bool test_cell(std::size_t cell, const Vector3d& a, const Vector3d& b) const;
  void build_grid();

  std::vector<Cylinder> cylinders_;
  std::vector<Disc> discs_;
  Rect extent_;
  Aabb bounds_;

  // Uniform grid in CSR layout. Entry = disc index | (1<<31) for cylinders.
  Eigen::Vector3i dims_{1, 1, 1};
  Vector3d cell_size_{1, 1, 1};
  std::vector<std::uint32_t> cell_start_;
  std::vector<std::uint32_t> entries_;
};

Scene build_scene(const Forest& forest);

}  // namespace aosim
