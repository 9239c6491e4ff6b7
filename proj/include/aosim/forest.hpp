// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
//
// Seeded procedural generation of trees and forest patches. Trees are a
// simplified ProcTree analog: one trunk cylinder, a few generations of branch
// cylinders, and opaque leaf discs concentrated in the crown. Forests place
// trees by dart throwing with a minimum trunk spacing.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aosim/common.hpp"
#include "aosim/geometry.hpp"
#include "aosim/sampling.hpp"

namespace aosim {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  void validate(const char* name) const;
};

struct TreeParams {
  Interval height_m{20.0, 25.0};
  Interval trunk_length_m{4.0, 8.0};
  Interval trunk_radius_m{0.20, 0.50};
  Interval leaf_size_m{0.05, 0.20};
  int branch_levels = 3;
  int branches_per_level = 4;
  int leaves_per_branch = 152;
  double crown_radius_fraction = 0.17;  ///< crown lateral extent / crown height
  double min_spacing_m = 2.0;           ///< dart-throwing hard core between trunks
  double leaf_tilt = 1.0;               ///< 0 = horizontal leaves, 1 = tumbled

  void validate() const;
};

enum class Species { conifer, broadleaf };

struct TreeGeometry {
  Cylinder trunk;                 // base at local origin, axis +z
  std::vector<Cylinder> branches;
  std::vector<Disc> leaves;
  Species species = Species::broadleaf;
  double height_m = 0.0;
  double crown_radius_m = 0.0;

  std::size_t primitive_count() const { return 1 + branches.size() + leaves.size(); }
};

enum class DensityClass { sparse, medium, dense, custom };

struct DensitySpec {
  DensityClass cls = DensityClass::medium;
  double custom_per_ha = 0.0;     // used when cls == custom

  double trees_per_ha() const;
  std::string name() const;
  static DensitySpec sparse() { return {DensityClass::sparse, 0.0}; }
  static DensitySpec medium() { return {DensityClass::medium, 0.0}; }
  static DensitySpec dense() { return {DensityClass::dense, 0.0}; }
  static DensitySpec custom(double per_ha) { return {DensityClass::custom, per_ha}; }
  static DensitySpec parse(const std::string& text);
};

struct PlacedTree {
  Vector2d position{0.0, 0.0};
  TreeGeometry geometry;
};

struct Forest {
  Rect extent = Rect::square(150.0);
  DensitySpec density;
  std::uint64_t seed = 0;
  TreeParams params;
  std::vector<PlacedTree> trees;

  double area_ha() const { return extent.area() / 10000.0; }
  double realized_per_ha() const {
    return area_ha() > 0 ? static_cast<double>(trees.size()) / area_ha() : 0.0;
  }
};

TreeGeometry generate_tree(std::uint64_t seed, const TreeParams& params);

Forest generate_forest(std::uint64_t seed, const DensitySpec& density,
                       const Rect& extent, const TreeParams& params);

/// h_t = mean trunk length, d_t = mean nearest-neighbor trunk distance
/// (O(n^2) scan, summed in tree order). Needs at least two trees.
ForestStats forest_stats(const Forest& forest);

/// Self-describing JSON text, geometry rounded to 1e-6 m. Stable byte-for-byte
/// for a given forest.
std::string serialize_forest(const Forest& forest);
Forest deserialize_forest(const std::string& text);
void save_forest(const Forest& forest, const std::string& path);
Forest load_forest(const std::string& path);

}  // namespace aosim
