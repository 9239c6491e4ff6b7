// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>

#include "aosim/common.hpp"

namespace aosim {

/// Solid finite cylinder: base center, unit axis, length, radius.
struct Cylinder {
  Vector3d base{0, 0, 0};
  Vector3d axis{0, 0, 1};
  double length = 1.0;
  double radius = 0.1;

  Vector3d tip() const { return base + axis * length; }
};

/// Opaque one-sided-thin disc.
struct Disc {
  Vector3d center{0, 0, 0};
  Vector3d normal{0, 0, 1};
  double radius = 0.05;
};

struct Aabb {
  Vector3d lo{0, 0, 0};
  Vector3d hi{0, 0, 0};

  void expand(const Aabb& o) {
    lo = lo.cwiseMin(o.lo);
    hi = hi.cwiseMax(o.hi);
  }
};

inline Aabb bounds_of(const Cylinder& c) {
  // Conservative: box around both cap centers padded by the radius.
  const Vector3d a = c.base, b = c.tip();
  Aabb box;
  box.lo = a.cwiseMin(b).array() - c.radius;
  box.hi = a.cwiseMax(b).array() + c.radius;
  return box;
}

inline Aabb bounds_of(const Disc& d) {
  Aabb box;
  box.lo = d.center.array() - d.radius;
  box.hi = d.center.array() + d.radius;
  return box;
}

/// Does the segment a + t(b-a), t in [0,1], pass through the solid cylinder?
inline bool segment_hits_cylinder(const Vector3d& a, const Vector3d& b,
                                  const Cylinder& cyl) {
  const Vector3d d = b - a;
  const Vector3d m = a - cyl.base;
  const double s0 = m.dot(cyl.axis);
  const double s1 = d.dot(cyl.axis);

  double t_lo = 0.0, t_hi = 1.0;

  // Axial slab: s0 + t*s1 in [0, length].
  constexpr double kTiny = 1e-12;
  if (std::abs(s1) < kTiny) {
    if (s0 < 0.0 || s0 > cyl.length) return false;
  } else {
    double ta = (0.0 - s0) / s1;
    double tb = (cyl.length - s0) / s1;
    if (ta > tb) std::swap(ta, tb);
    t_lo = std::max(t_lo, ta);
    t_hi = std::min(t_hi, tb);
    if (t_lo > t_hi) return false;
  }

  // Radial quadratic on the axis-perpendicular components.
  const Vector3d mp = m - s0 * cyl.axis;
  const Vector3d dp = d - s1 * cyl.axis;
  const double A = dp.squaredNorm();
  const double C = mp.squaredNorm() - cyl.radius * cyl.radius;
  if (A < kTiny) return C <= 0.0;  // parallel to axis: inside or out for all t
  const double B = 2.0 * mp.dot(dp);
  const double disc = B * B - 4.0 * A * C;
  if (disc < 0.0) return false;
  const double sq = std::sqrt(disc);
  const double r_lo = (-B - sq) / (2.0 * A);
  const double r_hi = (-B + sq) / (2.0 * A);
  t_lo = std::max(t_lo, r_lo);
  t_hi = std::min(t_hi, r_hi);
  return t_lo <= t_hi;
}

/// Does the segment cross the disc? Rays parallel to the disc plane miss.
inline bool segment_hits_disc(const Vector3d& a, const Vector3d& b,
                              const Disc& disc) {
  const Vector3d d = b - a;
  const double denom = d.dot(disc.normal);
  if (std::abs(denom) < 1e-12) return false;
  const double t = (disc.center - a).dot(disc.normal) / denom;
  if (t < 0.0 || t > 1.0) return false;
  const Vector3d hit = a + t * d;
  return (hit - disc.center).squaredNorm() <= disc.radius * disc.radius;
}

}  // namespace aosim
