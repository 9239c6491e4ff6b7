// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

#include "aosim/forest.hpp"

using namespace aosim;

namespace {

TreeParams point_params() {
  // All ranges collapsed so every scalar draw is forced.
  TreeParams p;
  p.height_m = {22.0, 22.0};
  p.trunk_length_m = {6.0, 6.0};
  p.trunk_radius_m = {0.3, 0.3};
  p.leaf_size_m = {0.1, 0.1};
  return p;
}

}  // namespace

TEST_CASE("degenerate ranges force the tree scalars") {
  const TreeGeometry t = generate_tree(7, point_params());
  CHECK(t.height_m == doctest::Approx(22.0));
  CHECK(t.trunk.length == doctest::Approx(6.0));
  CHECK(t.trunk.radius == doctest::Approx(0.3));
  CHECK(t.trunk.base.z() == doctest::Approx(0.0));
  for (const Disc& leaf : t.leaves) CHECK(leaf.radius == doctest::Approx(0.05));
}

TEST_CASE("same seed twice gives structurally identical geometry") {
  const TreeParams p;
  const TreeGeometry a = generate_tree(1234, p);
  const TreeGeometry b = generate_tree(1234, p);
  REQUIRE(a.branches.size() == b.branches.size());
  REQUIRE(a.leaves.size() == b.leaves.size());
  CHECK(a.height_m == b.height_m);
  for (std::size_t i = 0; i < a.branches.size(); ++i) {
    CHECK(a.branches[i].base == b.branches[i].base);
    CHECK(a.branches[i].length == b.branches[i].length);
  }
  for (std::size_t i = 0; i < a.leaves.size(); ++i)
    CHECK(a.leaves[i].center == b.leaves[i].center);
}

TEST_CASE("tree geometry invariants hold across seeds") {
  const TreeParams p;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const TreeGeometry t = generate_tree(seed, p);
    CHECK(t.trunk.length < t.height_m);
    for (const Disc& leaf : t.leaves) {
      CHECK(leaf.center.z() > t.trunk.length);
      CHECK(leaf.center.z() <= t.height_m);
      CHECK(leaf.center.head<2>().norm() <= t.crown_radius_m + leaf.radius + 1e-9);
    }
    for (const Cylinder& b : t.branches) {
      CHECK(b.base.z() >= t.trunk.length - 1e-9);
      CHECK(b.base.head<2>().norm() <= t.crown_radius_m + 1e-9);
      CHECK(b.tip().head<2>().norm() <= t.crown_radius_m + 1e-9);
    }
  }
}

TEST_CASE("Monte-Carlo trunk length mean sits at the uniform midpoint") {
  const TreeParams p;
  double sum = 0.0;
  const int n = 1000;
  for (int i = 0; i < n; ++i) sum += generate_tree(9000 + i, p).trunk.length;
  const double mean = sum / n;
  CHECK(mean > 4.0);
  CHECK(mean < 8.0);
  CHECK(mean == doctest::Approx(6.0).epsilon(0.034));  // 6 +/- 0.2
}

TEST_CASE("forest tree counts follow round(density * area)") {
  const TreeParams p;
  const Rect extent = Rect::square(150.0);
  CHECK(generate_forest(1, DensitySpec::sparse(), extent, p).trees.size() == 299);
  CHECK(generate_forest(2, DensitySpec::dense(), extent, p).trees.size() == 900);
  CHECK(generate_forest(3, DensitySpec::custom(0.0), extent, p).trees.empty());

  // count law over several densities and extents
  for (double per_ha : {50.0, 133.0, 266.0}) {
    for (double side : {60.0, 100.0}) {
      const Forest f = generate_forest(4, DensitySpec::custom(per_ha),
                                       Rect::square(side), p);
      const double expected = per_ha * side * side / 10000.0;
      CHECK(std::abs(static_cast<double>(f.trees.size()) - expected) <= 0.5);
    }
  }
}

TEST_CASE("placement respects extent and minimum spacing") {
  TreeParams p;
  p.min_spacing_m = 2.0;
  const Rect extent = Rect::square(100.0);
  const Forest f = generate_forest(11, DensitySpec::dense(), extent, p);
  REQUIRE(f.trees.size() == 400);
  for (const PlacedTree& t : f.trees) CHECK(extent.contains(t.position));
  double min_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.trees.size(); ++i)
    for (std::size_t j = i + 1; j < f.trees.size(); ++j)
      min_d = std::min(min_d, (f.trees[i].position - f.trees[j].position).norm());
  CHECK(min_d >= 2.0);
}

TEST_CASE("impossible packing reports a parameter error") {
  TreeParams p;
  p.min_spacing_m = 30.0;
  CHECK_THROWS_AS(
      generate_forest(1, DensitySpec::custom(2000.0), Rect::square(50.0), p),
      std::invalid_argument);
}

TEST_CASE("forest_stats two-point case and failure modes") {
  TreeParams p = point_params();
  Forest f;
  f.extent = Rect::square(50.0);
  f.params = p;
  PlacedTree a, b;
  a.position = {0.0, 0.0};
  a.geometry = generate_tree(1, p);
  a.geometry.trunk.length = 6.0;
  b.position = {0.0, 6.0};
  b.geometry = generate_tree(2, p);
  b.geometry.trunk.length = 8.0;
  f.trees = {a, b};

  const ForestStats s = forest_stats(f);
  CHECK(s.d_t_m == doctest::Approx(6.0));
  CHECK(s.h_t_m == doctest::Approx(7.0));

  f.trees.pop_back();
  CHECK_THROWS_AS(forest_stats(f), std::invalid_argument);
}

TEST_CASE("forest_stats matches an independent all-pairs scan exactly") {
  const Forest f =
      generate_forest(21, DensitySpec::dense(), Rect::square(80.0), TreeParams{});
  const ForestStats s = forest_stats(f);

  // independent brute force, same index order
  const std::size_t n = f.trees.size();
  double nn_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j)
      if (j != i)
        best = std::min(best, (f.trees[i].position - f.trees[j].position).norm());
    nn_sum += best;
  }
  CHECK(s.d_t_m == nn_sum / static_cast<double>(n));  // bitwise equal
  CHECK(s.d_t_m >= f.params.min_spacing_m);
  CHECK(s.d_t_m <= 5.0);
  CHECK(s.trees_per_ha == doctest::Approx(400.0));
}

TEST_CASE("serialization is deterministic and round-trips") {
  const Forest f =
      generate_forest(5, DensitySpec::custom(40.0), Rect::square(60.0), TreeParams{});
  const std::string text_a = serialize_forest(f);
  const std::string text_b = serialize_forest(f);
  CHECK(text_a == text_b);

  const Forest g = deserialize_forest(text_a);
  CHECK(g.trees.size() == f.trees.size());
  CHECK(g.seed == f.seed);
  CHECK(g.density.name() == f.density.name());
  // serialize(load(serialize(f))) is stable: rounding is idempotent
  CHECK(serialize_forest(g) == text_a);
}

TEST_CASE("regenerating from the same seed serializes byte-identically") {
  const TreeParams p;
  const auto make = [&] {
    return generate_forest(31, DensitySpec::sparse(), Rect::square(100.0), p);
  };
  CHECK(serialize_forest(make()) == serialize_forest(make()));
}

TEST_CASE("species mix is an even coin flip") {
  int conifer = 0;
  const int n = 600;
  for (int i = 0; i < n; ++i)
    if (generate_tree(50000 + i, TreeParams{}).species == Species::conifer) ++conifer;
  CHECK(conifer > n / 2 - 60);
  CHECK(conifer < n / 2 + 60);
}

TEST_CASE("parameter validation rejects broken ranges") {
  TreeParams p;
  p.height_m = {25.0, 20.0};
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = TreeParams{};
  p.trunk_length_m = {4.0, 21.0};  // trunk may not reach into min height
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p = TreeParams{};
  p.crown_radius_fraction = 1.5;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  CHECK_THROWS_AS(generate_tree(1, p), std::invalid_argument);
  CHECK_THROWS_AS(
      generate_forest(1, DensitySpec::custom(-5.0), Rect::square(10.0), TreeParams{}),
      std::invalid_argument);
}

TEST_CASE("density classes carry the published per-hectare values") {
  CHECK(DensitySpec::sparse().trees_per_ha() == 133.0);
  CHECK(DensitySpec::medium().trees_per_ha() == 266.0);
  CHECK(DensitySpec::dense().trees_per_ha() == 400.0);
  CHECK(DensitySpec::parse("custom:250").trees_per_ha() == 250.0);
  CHECK(DensitySpec::parse("250").trees_per_ha() == 250.0);
  CHECK_THROWS_AS(DensitySpec::parse("forest"), std::invalid_argument);
}
