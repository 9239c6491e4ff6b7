// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <numbers>
#include <stdexcept>
#include <string>

namespace aosim {

using Eigen::Vector2d;
using Eigen::Vector3d;

inline constexpr double kPi = std::numbers::pi;

inline double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline double rad2deg(double rad) { return rad * (180.0 / kPi); }

/// Axis-aligned ground rectangle in meters.
struct Rect {
  Vector2d lo{0.0, 0.0};
  Vector2d hi{0.0, 0.0};

  static Rect centered(const Vector2d& center, double side_x, double side_y) {
    Rect r;
    r.lo = center - Vector2d(side_x, side_y) / 2.0;
    r.hi = center + Vector2d(side_x, side_y) / 2.0;
    return r;
  }
  static Rect square(double side) { return Rect{{0.0, 0.0}, {side, side}}; }

  Vector2d center() const { return (lo + hi) / 2.0; }
  Vector2d span() const { return hi - lo; }
  double area() const { return span().x() * span().y(); }
  bool contains(const Vector2d& p) const {
    return p.x() >= lo.x() && p.x() <= hi.x() && p.y() >= lo.y() && p.y() <= hi.y();
  }
  Rect shrunk(double margin_x, double margin_y) const {
    return Rect{lo + Vector2d(margin_x, margin_y), hi - Vector2d(margin_x, margin_y)};
  }
  bool empty() const { return hi.x() <= lo.x() || hi.y() <= lo.y(); }
};

/// A ground cell or point was queried where no image sample exists.
struct CoverageError : std::runtime_error {
  explicit CoverageError(const std::string& what) : std::runtime_error(what) {}
};

/// Camera pose violates a rendering precondition (e.g. inside geometry).
struct PoseError : std::runtime_error {
  explicit PoseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aosim
