// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <algorithm>
#include <random>

#include "aosim/oracle.hpp"

using namespace aosim;

namespace {

Forest single_trunk_at_origin() {
  Forest f;
  f.extent = Rect{{-30, -30}, {30, 30}};
  PlacedTree t;
  t.position = {0.0, 0.0};
  t.geometry.trunk = Cylinder{{0, 0, 0}, {0, 0, 1}, 6.0, 0.3};
  t.geometry.height_m = 6.0;
  f.trees = {t};
  return f;
}

std::vector<CameraPose> line_poses_11() {
  std::vector<CameraPose> poses;
  for (int k = -5; k <= 5; ++k) poses.push_back(CameraPose{{double(k), 0.0}, 30.0});
  return poses;
}

}  // namespace

TEST_CASE("point visibility trivial cases") {
  Forest empty;
  empty.extent = Rect::square(40.0);
  const Scene scene = build_scene(empty);
  const SensorConfig sensor{60.0, 64};
  std::vector<CameraPose> poses = {CameraPose{{20, 20}, 30.0}};
  CHECK(point_visibility(scene, {20, 20}, poses, sensor) == 1.0);
  CHECK_THROWS_AS(point_visibility(scene, {200, 200}, poses, sensor), CoverageError);
  CHECK_THROWS_AS(point_visibility(scene, {20, 20}, {}, sensor),
                  std::invalid_argument);

  // opaque slab spanning every sight line
  Forest slab;
  slab.extent = Rect::square(40.0);
  PlacedTree t;
  t.position = {20, 20};
  t.geometry.trunk = Cylinder{{0, 0, 0}, {0, 0, 1}, 0.01, 0.001};
  t.geometry.leaves.push_back(Disc{{0, 0, 10.0}, {0, 0, 1}, 50.0});
  t.geometry.height_m = 10.0;
  slab.trees = {t};
  CHECK(point_visibility(build_scene(slab), {20, 20}, poses, sensor) == 0.0);
}

TEST_CASE("frozen 11-pose trunk fixtures") {
  const Scene scene = build_scene(single_trunk_at_origin());
  const SensorConfig sensor{90.0, 64};  // footprint half-width 30: all poses cover
  const std::vector<CameraPose> poses = line_poses_11();

  // Ground point at the trunk base center: every segment ends inside the
  // trunk, so no sight line is clear.
  CHECK(point_visibility(scene, {0, 0}, poses, sensor) == 0.0);

  // Ground point 1 m east of the trunk. Exact enumeration: the segment from
  // (x,0,30) to (1,0,0) grazes the r=0.3 trunk (z < 6) only for x in
  // {-5,-4,-3}; 8 of 11 lines are clear.
  CHECK(point_visibility(scene, {1.0, 0.0}, poses, sensor) ==
        doctest::Approx(8.0 / 11.0).epsilon(1e-12));
}

TEST_CASE("point visibility is invariant under pose permutation") {
  const Forest f =
      generate_forest(61, DensitySpec::custom(150.0), Rect::square(50.0), TreeParams{});
  const Scene scene = build_scene(f);
  const SensorConfig sensor{70.0, 64};
  std::vector<CameraPose> poses;
  for (int k = 0; k < 15; ++k) poses.push_back(CameraPose{{10.0 + 2.0 * k, 25.0}, 32.0});

  const double before = point_visibility(scene, {25, 25}, poses, sensor);
  std::mt19937 rng(2);
  std::shuffle(poses.begin(), poses.end(), rng);
  CHECK(point_visibility(scene, {25, 25}, poses, sensor) == before);
}

TEST_CASE("oracle integral: empty scene and construction agreement") {
  Forest empty;
  empty.extent = Rect::square(60.0);
  const Scene scene = build_scene(empty);
  const SensorConfig sensor{50.0, 128};
  const FlightPlan plan =
      plan_flight(Rect::centered({30, 30}, 12.0, 0.0), 2.0, 30.0, FlightMode::line);
  const GroundGrid grid = GroundGrid::covering(Rect::centered({30, 30}, 20, 20), 0.5);

  const IntegralImage oracle = oracle_integral(scene, plan, sensor, grid);
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix)
      if (oracle.count(iy, ix) > 0) CHECK(oracle.value(ix, iy) == 1.0);
}

TEST_CASE("oracle is independent of sensor resolution") {
  const Scene scene = build_scene(single_trunk_at_origin());
  const FlightPlan plan =
      plan_flight(Rect::centered({0, 0}, 10.0, 0.0), 1.0, 30.0, FlightMode::line);
  const GroundGrid grid = GroundGrid::covering(Rect::centered({0, 0}, 14, 14), 0.25);

  const IntegralImage lo = oracle_integral(scene, plan, SensorConfig{50.0, 16}, grid);
  const IntegralImage hi = oracle_integral(scene, plan, SensorConfig{50.0, 1024}, grid);
  CHECK((lo.count == hi.count).all());
  CHECK((lo.sum == hi.sum).all());
}

TEST_CASE("single-pose oracle equals the registered image where cells align") {
  // Grid cell centers coincide with pixel-center ground points: pixel width
  // chosen as the cell size and the pose centered on the grid.
  const Scene scene = build_scene(single_trunk_at_origin());
  const double h = 30.0;
  const double fov = 90.0;  // half-width 30 -> pixel width 60/240 = 0.25
  const SensorConfig sensor{fov, 240};
  FlightPlan plan;
  plan.mode = FlightMode::line;
  plan.spacing_m = 1.0;
  plan.poses = {CameraPose{{0, 0}, h}};
  plan.aperture = Rect::centered({0, 0}, 0.0, 0.0);

  GroundGrid grid;
  grid.cell_m = 0.25;
  grid.nx = grid.ny = 40;
  grid.origin = {-5.0, -5.0};

  const IntegralImage by_rays = oracle_integral(scene, plan, sensor, grid);
  const IntegralImage by_image = integrate(scene, plan, sensor, grid);
  CHECK((by_rays.count == by_image.count).all());
  CHECK((by_rays.sum == by_image.sum).all());
}

TEST_CASE("integrate matches the oracle on a small forest") {
  const Forest f =
      generate_forest(71, DensitySpec::custom(100.0), Rect::square(60.0), TreeParams{});
  const Scene scene = build_scene(f);
  const SensorConfig sensor{50.0, 256};
  const FlightPlan plan =
      plan_flight(Rect::centered({30, 30}, 12.0, 0.0), 1.0, 30.0, FlightMode::line);
  const GroundGrid grid =
      GroundGrid::covering(Rect::centered({30, 30}, 12.0, 12.0), 0.1);
  const IntegralImage a = integrate(scene, plan, sensor, grid);
  const IntegralImage b = oracle_integral(scene, plan, sensor, grid);
  CHECK(mean_abs_diff(a, b) <= 0.05);
}
