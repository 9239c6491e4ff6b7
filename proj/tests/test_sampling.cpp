// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "aosim/rng.hpp"
#include "aosim/sampling.hpp"

using namespace aosim;

TEST_CASE("alpha_max halves the field of view") {
  CHECK(alpha_max(90.0) == doctest::Approx(45.0).epsilon(1e-12));
  CHECK(alpha_max(20.0) == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(alpha_max(179.9) < 90.0);
  CHECK_THROWS_AS(alpha_max(180.0), std::domain_error);
  CHECK_THROWS_AS(alpha_max(0.0), std::domain_error);
  CHECK_THROWS_AS(alpha_max(-10.0), std::domain_error);
}

TEST_CASE("ground_coverage matches hand-computed values") {
  CHECK(ground_coverage(30.0, 90.0) == doctest::Approx(60.0).epsilon(1e-9));
  CHECK(ground_coverage(0.0, 60.0) == doctest::Approx(0.0));
  // independent high-precision evaluation of 60 tan(30 deg)
  CHECK(ground_coverage(30.0, 60.0) ==
        doctest::Approx(34.64101615137754587).epsilon(1e-12));
  CHECK_THROWS_AS(ground_coverage(30.0, 180.0), std::domain_error);
  CHECK_THROWS_AS(ground_coverage(-1.0, 60.0), std::domain_error);
}

TEST_CASE("samples_per_point is the fractional ratio c/d") {
  CHECK(samples_per_point(60.0, 2.0) == doctest::Approx(30.0).epsilon(1e-12));
  CHECK(samples_per_point(60.0, 0.5) == doctest::Approx(120.0).epsilon(1e-12));
  CHECK(samples_per_point(34.641016, 1.5) ==
        doctest::Approx(23.094010666666666).epsilon(1e-12));
  CHECK_THROWS_AS(samples_per_point(60.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(samples_per_point(60.0, -1.0), std::domain_error);
}

TEST_CASE("optimal_fov reproduces the worked example") {
  CHECK(optimal_fov(3.0, 7.0) == doctest::Approx(46.39718102729638).epsilon(1e-12));
  CHECK(optimal_fov(3.5, 7.0) == doctest::Approx(53.13010235415598).epsilon(1e-12));
  CHECK(optimal_fov(4.9, 7.0) == doctest::Approx(69.98404039711732).epsilon(1e-12));
  CHECK(optimal_fov(7.0, 7.0) == doctest::Approx(90.0).epsilon(1e-12));
  CHECK_THROWS_AS(optimal_fov(0.0, 7.0), std::domain_error);
  CHECK_THROWS_AS(optimal_fov(3.0, -1.0), std::domain_error);
}

TEST_CASE("monotonicity and round-trip properties") {
  Rng rng(42);
  for (int k = 0; k < 500; ++k) {
    const double h = rng.uniform(1.0, 120.0);
    const double fov = rng.uniform(1.0, 175.0);
    const double d = rng.uniform(0.05, 10.0);

    const double c = ground_coverage(h, fov);
    CHECK(ground_coverage(h + 1.0, fov) > c);
    CHECK(ground_coverage(h, std::min(fov + 1.0, 179.5)) > c);

    const double n = samples_per_point(c, d);
    CHECK(samples_per_point(c, d * 0.5) > n);
    CHECK(samples_per_point(c + 1.0, d) > n);

    // round trip: n * d recovers c to 1e-12 relative error
    CHECK(n * d == doctest::Approx(c).epsilon(1e-12));

    const double dt = rng.uniform(0.1, 30.0), ht = rng.uniform(0.1, 30.0);
    const double f = optimal_fov(dt, ht);
    CHECK(f > 0.0);
    CHECK(f < 180.0);
    CHECK(optimal_fov(dt + 0.1, ht) > f);
    CHECK(optimal_fov(dt, ht + 0.1) < f);
  }
  CHECK(optimal_fov(1e-9, 7.0) < 1e-6);
}

TEST_CASE("sampling geometry bundles the derived quantities") {
  SensorConfig sensor{60.0, 512};
  const SamplingGeometry g = make_sampling_geometry(sensor, 30.0, 1.5);
  CHECK(g.coverage_m == doctest::Approx(34.64101615137754587));
  CHECK(g.samples_n == doctest::Approx(g.coverage_m / 1.5));
  CHECK_THROWS_AS(make_sampling_geometry(sensor, 0.0, 1.5), std::domain_error);

  SensorConfig bad{200.0, 512};
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  SensorConfig bad_res{60.0, 1};
  CHECK_THROWS_AS(bad_res.validate(), std::invalid_argument);
}
