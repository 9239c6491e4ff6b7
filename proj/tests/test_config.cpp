// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "aosim/config.hpp"

using namespace aosim;

TEST_CASE("defaults match the documented paper-scale run") {
  const RunConfig cfg = make_config("", "", {});
  CHECK(cfg.sensor.fov_deg == 50.0);  // integrate default FOV
  CHECK(cfg.sensor.resolution_px == 512);
  CHECK(cfg.extent_m == 150.0);
  CHECK(cfg.density.name() == "medium");
  CHECK(cfg.mode == FlightMode::grid);
  CHECK(cfg.sweep.fovs_deg.size() == 8);
  CHECK(cfg.sweep.seeds.size() == 5);
}

TEST_CASE("desk preset shrinks the run") {
  const RunConfig cfg = make_config("", "desk", {});
  CHECK(cfg.extent_m == 100.0);
  CHECK(cfg.sensor.resolution_px == 128);
  CHECK(cfg.mode == FlightMode::line);
  CHECK_THROWS_AS(make_config("", "garage", {}), std::invalid_argument);
}

TEST_CASE("dotted --set overrides reach nested keys") {
  const RunConfig cfg = make_config(
      "", "desk",
      {"sensor.fov_deg=70", "forest.density=dense", "forest.params.branch_levels=2",
       "sweep.seeds=[7,8]", "flight.mode=grid"});
  CHECK(cfg.sensor.fov_deg == 70.0);
  CHECK(cfg.density.name() == "dense");
  CHECK(cfg.params.branch_levels == 2);
  REQUIRE(cfg.sweep.seeds.size() == 2);
  CHECK(cfg.sweep.seeds[0] == 7);
  CHECK(cfg.mode == FlightMode::grid);
}

TEST_CASE("unknown keys and bad values name the offending path") {
  CHECK_THROWS_WITH_AS(make_config("", "", {"sensor.zoom=3"}),
                       doctest::Contains("sensor.zoom"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_config("", "", {"typo=1"}), doctest::Contains("typo"),
                       std::invalid_argument);
  CHECK_THROWS_AS(make_config("", "", {"sensor.fov_deg=200"}), std::domain_error);
  CHECK_THROWS_AS(make_config("", "", {"flight.mode=diagonal"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_config("", "", {"grid.cell_m=0"}), std::invalid_argument);
}

TEST_CASE("config files merge over defaults") {
  const auto path = std::filesystem::temp_directory_path() / "aosim_cfg_test.json";
  {
    std::ofstream out(path);
    out << R"({"sensor": {"resolution_px": 96}, "forest": {"seed": 42}})";
  }
  const RunConfig cfg = make_config(path.string(), "", {});
  CHECK(cfg.sensor.resolution_px == 96);
  CHECK(cfg.seed == 42);
  CHECK(cfg.sensor.fov_deg == 50.0);  // untouched default
  std::filesystem::remove(path);

  CHECK_THROWS_AS(make_config("/nonexistent/cfg.json", "", {}),
                  std::invalid_argument);
}

TEST_CASE("config json reproduces the effective settings") {
  const RunConfig cfg = make_config("", "desk", {"sensor.fov_deg=60"});
  const std::string text = config_json(cfg);
  CHECK(text.find("\"fov_deg\": 60.0") != std::string::npos);
  CHECK(text.find("\"preset\": \"desk\"") != std::string::npos);
}

TEST_CASE("numeric density in config") {
  const RunConfig cfg = make_config("", "", {"forest.density=250"});
  CHECK(cfg.density.trees_per_ha() == 250.0);
  const RunConfig cfg2 = make_config("", "", {"forest.density=\"sparse\""});
  CHECK(cfg2.density.trees_per_ha() == 133.0);
}

TEST_CASE("sweep_config copies the shared knobs") {
  const RunConfig cfg =
      make_config("", "desk", {"grid.roi_m=25", "forest.params.leaves_per_branch=9"});
  const SweepConfig s = cfg.sweep_config();
  CHECK(s.roi_m == 25.0);
  CHECK(s.extent_m == 100.0);
  CHECK(s.resolution_px == 128);
  CHECK(s.params.leaves_per_branch == 9);
  CHECK(s.mode == FlightMode::line);
}
