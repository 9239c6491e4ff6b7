// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
//
// Pinhole nadir camera: perspective projection with pixel centers uniform on
// the image plane (tangent-uniform), one ray per pixel, binarized output.
// Pixel (i, j) maps to ground via u = (i + 0.5)/res per axis; image x-axis is
// world x, row index j runs along world y (row 0 = smallest y).
#pragma once

#include <cstdint>
#include <string>

#include "aosim/common.hpp"
#include "aosim/sampling.hpp"
#include "aosim/scene.hpp"

namespace aosim {

struct CameraPose {
  Vector2d xy{0.0, 0.0};
  double altitude_m = 30.0;  // above ground, camera looks straight down

  Vector3d position() const { return {xy.x(), xy.y(), altitude_m}; }
};

using Bitmap =
    Eigen::Array<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct BinaryAerialImage {
  Bitmap pixels;  // (row j, col i); 1 = unoccluded ground, 0 = occluder
  CameraPose pose;
  SensorConfig sensor;
};

/// Ground intersection of the pixel-center ray, z = 0 plane.
Vector2d pixel_to_ground(const CameraPose& pose, const SensorConfig& sensor, int i,
                         int j);

/// Inverse map with nearest-pixel rounding. Returns false when the ground
/// point lies outside the image footprint (|delta| > c/2 on either axis).
bool ground_to_pixel(const CameraPose& pose, const SensorConfig& sensor,
                     const Vector2d& ground, int& i, int& j);

/// Footprint membership alone, same closed boundary as ground_to_pixel.
bool in_footprint(const CameraPose& pose, const SensorConfig& sensor,
                  const Vector2d& ground);

BinaryAerialImage render_aerial(const Scene& scene, const CameraPose& pose,
                                const SensorConfig& sensor, int workers = 1);

/// Orthographic top-down occupancy over `extent`: cell = 1 iff the vertical
/// ray through the cell center reaches the ground.
Bitmap ortho_occupancy(const Scene& scene, const Rect& extent, int res,
                       int workers = 1);

inline double white_ratio(const Bitmap& bm) {
  return bm.size() == 0 ? 1.0
                        : bm.cast<double>().sum() / static_cast<double>(bm.size());
}

/// Binary PGM (P5, maxval 255); pixel value 1 maps to 255.
void write_pgm(const Bitmap& bm, const std::string& path);
Bitmap read_pgm(const std::string& path);

}  // namespace aosim
