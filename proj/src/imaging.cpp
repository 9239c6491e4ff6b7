// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include "aosim/imaging.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "aosim/parallel.hpp"

namespace aosim {

Vector2d pixel_to_ground(const CameraPose& pose, const SensorConfig& sensor, int i,
                         int j) {
  sensor.validate();
  const int res = sensor.resolution_px;
  if (i < 0 || i >= res || j < 0 || j >= res)
    throw std::invalid_argument("pixel_to_ground: pixel index out of range");
  const double tan_a = std::tan(deg2rad(alpha_max(sensor.fov_deg)));
  const double ui = (i + 0.5) / res;
  const double uj = (j + 0.5) / res;
  return pose.xy + pose.altitude_m * tan_a *
                       Vector2d(2.0 * ui - 1.0, 2.0 * uj - 1.0);
}

bool ground_to_pixel(const CameraPose& pose, const SensorConfig& sensor,
                     const Vector2d& ground, int& i, int& j) {
  const int res = sensor.resolution_px;
  const double half = pose.altitude_m * std::tan(deg2rad(alpha_max(sensor.fov_deg)));
  const Vector2d delta = ground - pose.xy;
  if (std::abs(delta.x()) > half || std::abs(delta.y()) > half) return false;
  const double ux = (delta.x() / half + 1.0) / 2.0;
  const double uy = (delta.y() / half + 1.0) / 2.0;
  i = std::clamp(static_cast<int>(std::floor(ux * res)), 0, res - 1);
  j = std::clamp(static_cast<int>(std::floor(uy * res)), 0, res - 1);
  return true;
}

bool in_footprint(const CameraPose& pose, const SensorConfig& sensor,
                  const Vector2d& ground) {
  const double half = pose.altitude_m * std::tan(deg2rad(alpha_max(sensor.fov_deg)));
  const Vector2d delta = ground - pose.xy;
  return std::abs(delta.x()) <= half && std::abs(delta.y()) <= half;
}

BinaryAerialImage render_aerial(const Scene& scene, const CameraPose& pose,
                                const SensorConfig& sensor, int workers) {
  sensor.validate();
  if (!(pose.altitude_m > scene.max_z()))
    throw PoseError("render_aerial: camera altitude must exceed the tallest primitive");

  const int res = sensor.resolution_px;
  BinaryAerialImage img;
  img.pose = pose;
  img.sensor = sensor;
  img.pixels.resize(res, res);

  const double tan_a = std::tan(deg2rad(alpha_max(sensor.fov_deg)));
  const Vector3d cam = pose.position();
  parallel_for(res, workers, [&](std::size_t j) {
    const double uj = (static_cast<double>(j) + 0.5) / res;
    const double gy = pose.xy.y() + pose.altitude_m * tan_a * (2.0 * uj - 1.0);
    for (int i = 0; i < res; ++i) {
      const double ui = (i + 0.5) / res;
      const double gx = pose.xy.x() + pose.altitude_m * tan_a * (2.0 * ui - 1.0);
      img.pixels(static_cast<Eigen::Index>(j), i) =
          scene.occluded(cam, Vector3d(gx, gy, 0.0)) ? 0 : 1;
    }
  });
  return img;
}

Bitmap ortho_occupancy(const Scene& scene, const Rect& extent, int res, int workers) {
  if (res < 2) throw std::invalid_argument("ortho_occupancy: res must be >= 2");
  Bitmap bm(res, res);
  const Vector2d span = extent.span();
  const double z_top = scene.max_z() + 1.0;
  parallel_for(res, workers, [&](std::size_t j) {
    const double gy = extent.lo.y() + span.y() * (static_cast<double>(j) + 0.5) / res;
    for (int i = 0; i < res; ++i) {
      const double gx = extent.lo.x() + span.x() * (i + 0.5) / res;
      bm(static_cast<Eigen::Index>(j), i) =
          scene.occluded(Vector3d(gx, gy, z_top), Vector3d(gx, gy, 0.0)) ? 0 : 1;
    }
  });
  return bm;
}

void write_pgm(const Bitmap& bm, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
  out << "P5\n" << bm.cols() << " " << bm.rows() << "\n255\n";
  for (Eigen::Index j = 0; j < bm.rows(); ++j)
    for (Eigen::Index i = 0; i < bm.cols(); ++i) {
      const unsigned char v = bm(j, i) ? 255 : 0;
      out.put(static_cast<char>(v));
    }
}

Bitmap read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_pgm: cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5") throw std::runtime_error("read_pgm: not a P5 file: " + path);
  long w = 0, h = 0, maxval = 0;
  in >> w >> h >> maxval;
  in.get();
  if (w <= 0 || h <= 0 || maxval != 255)
    throw std::runtime_error("read_pgm: unsupported header in " + path);
  Bitmap bm(h, w);
  for (Eigen::Index j = 0; j < h; ++j)
    for (Eigen::Index i = 0; i < w; ++i) {
      const int c = in.get();
      if (c == EOF) throw std::runtime_error("read_pgm: truncated file " + path);
      bm(j, i) = c >= 128 ? 1 : 0;
    }
  return bm;
}

}  // namespace aosim
