// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include "aosim/scene.hpp"

#include <algorithm>
#include <cmath>

namespace aosim {

namespace {

constexpr std::uint32_t kCylinderFlag = 0x80000000u;

// Endpoint-inset segment; returns false when the segment is too short to test.
bool inset_segment(const Vector3d& from, const Vector3d& to, Vector3d& a,
                   Vector3d& b) {
  const Vector3d d = to - from;
  const double len = d.norm();
  if (len <= 2.5 * Scene::kEndpointEps) return false;
  const Vector3d unit = d / len;
  a = from + unit * Scene::kEndpointEps;
  b = to - unit * Scene::kEndpointEps;
  return true;
}

}  // namespace

Scene build_scene(const Forest& forest) {
  Scene scene;
  scene.extent_ = forest.extent;
  scene.bounds_.lo = Vector3d(forest.extent.lo.x(), forest.extent.lo.y(), 0.0);
  scene.bounds_.hi = Vector3d(forest.extent.hi.x(), forest.extent.hi.y(), 1.0);

  for (const PlacedTree& t : forest.trees) {
    const Vector3d shift(t.position.x(), t.position.y(), 0.0);
    Cylinder trunk = t.geometry.trunk;
    trunk.base += shift;
    scene.cylinders_.push_back(trunk);
    for (Cylinder c : t.geometry.branches) {
      c.base += shift;
      scene.cylinders_.push_back(c);
    }
    for (Disc d : t.geometry.leaves) {
      d.center += shift;
      scene.discs_.push_back(d);
    }
  }

  for (const Cylinder& c : scene.cylinders_) scene.bounds_.expand(bounds_of(c));
  for (const Disc& d : scene.discs_) scene.bounds_.expand(bounds_of(d));

  scene.build_grid();
  return scene;
}

void Scene::build_grid() {
  const Vector3d span = (bounds_.hi - bounds_.lo).cwiseMax(1e-6);
  const double target_cell = 0.5;  // meters; a leaf cluster spans a cell or two
  for (int k = 0; k < 3; ++k)
    dims_[k] = std::clamp(static_cast<int>(std::ceil(span[k] / target_cell)), 1, 512);
  cell_size_ = span.cwiseQuotient(dims_.cast<double>());

  const std::size_t n_cells =
      static_cast<std::size_t>(dims_.x()) * dims_.y() * dims_.z();

  auto cell_range = [&](const Aabb& box, Eigen::Vector3i& lo, Eigen::Vector3i& hi) {
    for (int k = 0; k < 3; ++k) {
      lo[k] = std::clamp(
          static_cast<int>(std::floor((box.lo[k] - bounds_.lo[k]) / cell_size_[k])),
          0, dims_[k] - 1);
      hi[k] = std::clamp(
          static_cast<int>(std::floor((box.hi[k] - bounds_.lo[k]) / cell_size_[k])),
          0, dims_[k] - 1);
    }
  };
  auto cell_index = [&](int ix, int iy, int iz) {
    return (static_cast<std::size_t>(iz) * dims_.y() + iy) * dims_.x() + ix;
  };

  std::vector<std::uint32_t> counts(n_cells + 1, 0);
  auto count_box = [&](const Aabb& box) {
    Eigen::Vector3i lo, hi;
    cell_range(box, lo, hi);
    for (int iz = lo.z(); iz <= hi.z(); ++iz)
      for (int iy = lo.y(); iy <= hi.y(); ++iy)
        for (int ix = lo.x(); ix <= hi.x(); ++ix) ++counts[cell_index(ix, iy, iz) + 1];
  };
  for (const Cylinder& c : cylinders_) count_box(bounds_of(c));
  for (const Disc& d : discs_) count_box(bounds_of(d));

  for (std::size_t i = 1; i <= n_cells; ++i) counts[i] += counts[i - 1];
  cell_start_ = counts;
  entries_.resize(cell_start_.back());

  std::vector<std::uint32_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
  auto fill_box = [&](const Aabb& box, std::uint32_t entry) {
    Eigen::Vector3i lo, hi;
    cell_range(box, lo, hi);
    for (int iz = lo.z(); iz <= hi.z(); ++iz)
      for (int iy = lo.y(); iy <= hi.y(); ++iy)
        for (int ix = lo.x(); ix <= hi.x(); ++ix)
          entries_[cursor[cell_index(ix, iy, iz)]++] = entry;
  };
  for (std::uint32_t i = 0; i < cylinders_.size(); ++i)
    fill_box(bounds_of(cylinders_[i]), i | kCylinderFlag);
  for (std::uint32_t i = 0; i < discs_.size(); ++i) fill_box(bounds_of(discs_[i]), i);
}

bool Scene::test_cell(std::size_t cell, const Vector3d& a, const Vector3d& b) const {
  const std::uint32_t begin = cell_start_[cell];
  const std::uint32_t end = cell_start_[cell + 1];
  for (std::uint32_t e = begin; e < end; ++e) {
    const std::uint32_t entry = entries_[e];
    if (entry & kCylinderFlag) {
      if (segment_hits_cylinder(a, b, cylinders_[entry & ~kCylinderFlag])) return true;
    } else {
      if (segment_hits_disc(a, b, discs_[entry])) return true;
    }
  }
  return false;
}

bool Scene::occluded(const Vector3d& from, const Vector3d& to) const {
  if (entries_.empty()) return false;
  Vector3d a, b;
  if (!inset_segment(from, to, a, b)) return false;

  // Clip the segment to the grid bounds; everything outside is empty space.
  const Vector3d d = b - a;
  double t0 = 0.0, t1 = 1.0;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(d[k]) < 1e-12) {
      if (a[k] < bounds_.lo[k] || a[k] > bounds_.hi[k]) return false;
      continue;
    }
    double ta = (bounds_.lo[k] - a[k]) / d[k];
    double tb = (bounds_.hi[k] - a[k]) / d[k];
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return false;
  }

  const Vector3d p0 = a + t0 * d;
  auto cell_of = [&](const Vector3d& p, int k) {
    return std::clamp(
        static_cast<int>(std::floor((p[k] - bounds_.lo[k]) / cell_size_[k])), 0,
        dims_[k] - 1);
  };
  Eigen::Vector3i idx(cell_of(p0, 0), cell_of(p0, 1), cell_of(p0, 2));

  // Amanatides-Woo traversal from t0 to t1 in segment parameter t.
  Eigen::Vector3i step;
  Vector3d t_max, t_delta;
  for (int k = 0; k < 3; ++k) {
    if (std::abs(d[k]) < 1e-12) {
      step[k] = 0;
      t_max[k] = std::numeric_limits<double>::infinity();
      t_delta[k] = std::numeric_limits<double>::infinity();
    } else if (d[k] > 0) {
      step[k] = 1;
      const double next = bounds_.lo[k] + (idx[k] + 1) * cell_size_[k];
      t_max[k] = (next - a[k]) / d[k];
      t_delta[k] = cell_size_[k] / d[k];
    } else {
      step[k] = -1;
      const double next = bounds_.lo[k] + idx[k] * cell_size_[k];
      t_max[k] = (next - a[k]) / d[k];
      t_delta[k] = -cell_size_[k] / d[k];
    }
  }

  auto cell_index = [&](const Eigen::Vector3i& c) {
    return (static_cast<std::size_t>(c.z()) * dims_.y() + c.y()) * dims_.x() + c.x();
  };

  double t = t0;
  while (t <= t1 + 1e-12) {
    if (test_cell(cell_index(idx), a, b)) return true;
    int axis = 0;
    if (t_max.y() < t_max.x()) axis = 1;
    if (t_max.z() < t_max[axis]) axis = 2;
    t = t_max[axis];
    idx[axis] += step[axis];
    if (idx[axis] < 0 || idx[axis] >= dims_[axis]) break;
    t_max[axis] += t_delta[axis];
  }
  return false;
}

bool Scene::occluded_linear(const Vector3d& from, const Vector3d& to) const {
  Vector3d a, b;
  if (!inset_segment(from, to, a, b)) return false;
  for (const Cylinder& c : cylinders_)
    if (segment_hits_cylinder(a, b, c)) return true;
  for (const Disc& d : discs_)
    if (segment_hits_disc(a, b, d)) return true;
  return false;
}

}  // namespace aosim
