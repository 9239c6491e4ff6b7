// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include "aosim/integration.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "aosim/parallel.hpp"

namespace aosim {

FlightPlan plan_flight(const Rect& extent, double spacing_m, double altitude_m,
                       FlightMode mode) {
  if (!(spacing_m > 0.0))
    throw std::invalid_argument("plan_flight: spacing_m must be > 0");
  if (extent.empty() && extent.span().x() < 0.0)
    throw std::invalid_argument("plan_flight: extent must be nonempty");
  if (!(altitude_m > 0.0))
    throw std::invalid_argument("plan_flight: altitude_m must be > 0");

  const Vector2d span = extent.span().cwiseMax(0.0);
  const Vector2d center = extent.center();
  auto axis_count = [&](double s) {
    return static_cast<int>(std::floor(s / spacing_m + 1e-9)) + 1;
  };
  const int nxp = axis_count(span.x());
  const int nyp = mode == FlightMode::line ? 1 : axis_count(span.y());

  FlightPlan plan;
  plan.mode = mode;
  plan.spacing_m = spacing_m;
  plan.poses.reserve(static_cast<std::size_t>(nxp) * nyp);
  const double x0 = center.x() - (nxp - 1) * spacing_m / 2.0;
  const double y0 = center.y() - (nyp - 1) * spacing_m / 2.0;
  for (int jy = 0; jy < nyp; ++jy)
    for (int ix = 0; ix < nxp; ++ix) {
      CameraPose pose;
      pose.xy = Vector2d(x0 + ix * spacing_m, y0 + jy * spacing_m);
      pose.altitude_m = altitude_m;
      plan.poses.push_back(pose);
    }
  plan.aperture = Rect{{x0, y0},
                       {x0 + (nxp - 1) * spacing_m, y0 + (nyp - 1) * spacing_m}};
  return plan;
}

GroundGrid GroundGrid::covering(const Rect& r, double cell_m) {
  GroundGrid g;
  g.cell_m = cell_m;
  g.origin = r.lo;
  g.nx = std::max(1, static_cast<int>(std::ceil(r.span().x() / cell_m - 1e-9)));
  g.ny = std::max(1, static_cast<int>(std::ceil(r.span().y() / cell_m - 1e-9)));
  g.validate();
  return g;
}

void register_to_ground(const BinaryAerialImage& image, const GroundGrid& grid,
                        Eigen::ArrayXXd& sum, Eigen::ArrayXXi& count) {
  grid.validate();
  if (sum.rows() != grid.ny || sum.cols() != grid.nx)
    throw std::invalid_argument("register_to_ground: sum shape mismatch");
  if (count.rows() != grid.ny || count.cols() != grid.nx)
    throw std::invalid_argument("register_to_ground: count shape mismatch");

  // Restrict the scan to cells that can lie inside the footprint.
  const double half =
      image.pose.altitude_m * std::tan(deg2rad(alpha_max(image.sensor.fov_deg)));
  const auto clamp_ix = [&](double x) {
    return std::clamp(static_cast<int>(std::floor((x - grid.origin.x()) / grid.cell_m)),
                      0, grid.nx - 1);
  };
  const auto clamp_iy = [&](double y) {
    return std::clamp(static_cast<int>(std::floor((y - grid.origin.y()) / grid.cell_m)),
                      0, grid.ny - 1);
  };
  const int ix0 = clamp_ix(image.pose.xy.x() - half);
  const int ix1 = clamp_ix(image.pose.xy.x() + half);
  const int iy0 = clamp_iy(image.pose.xy.y() - half);
  const int iy1 = clamp_iy(image.pose.xy.y() + half);

  for (int iy = iy0; iy <= iy1; ++iy)
    for (int ix = ix0; ix <= ix1; ++ix) {
      int pi = 0, pj = 0;
      if (!ground_to_pixel(image.pose, image.sensor, grid.cell_center(ix, iy), pi, pj))
        continue;
      sum(iy, ix) += image.pixels(pj, pi);
      count(iy, ix) += 1;
    }
}

IntegralImage integrate(const Scene& scene, const FlightPlan& plan,
                        const SensorConfig& sensor, const GroundGrid& grid,
                        int workers) {
  if (plan.poses.empty()) throw std::invalid_argument("integrate: empty flight plan");
  grid.validate();

  IntegralImage out;
  out.grid = grid;
  out.sum = Eigen::ArrayXXd::Zero(grid.ny, grid.nx);
  out.count = Eigen::ArrayXXi::Zero(grid.ny, grid.nx);
  out.poses_integrated = static_cast<int>(plan.poses.size());

  // Render in batches (parallel), then accumulate in plan order so the
  // reduction is deterministic for any worker count.
  const std::size_t n = plan.poses.size();
  const std::size_t batch = 32;
  std::vector<BinaryAerialImage> images(std::min(batch, n));
  for (std::size_t start = 0; start < n; start += batch) {
    const std::size_t m = std::min(batch, n - start);
    parallel_for(m, workers, [&](std::size_t k) {
      images[k] = render_aerial(scene, plan.poses[start + k], sensor, 1);
    });
    for (std::size_t k = 0; k < m; ++k)
      register_to_ground(images[k], grid, out.sum, out.count);
  }
  return out;
}

RegionOfInterest roi_for(const FlightPlan& plan, const SensorConfig& sensor,
                         double margin_m) {
  if (plan.poses.empty()) throw std::invalid_argument("roi_for: empty flight plan");
  const double c = ground_coverage(plan.altitude_m(), sensor.fov_deg);
  const Rect& ap = plan.aperture;
  Rect roi;
  roi.lo.x() = ap.lo.x() + c / 2.0 + margin_m;
  roi.hi.x() = ap.hi.x() - c / 2.0 - margin_m;
  if (plan.mode == FlightMode::line) {
    const double cy = ap.center().y();
    roi.lo.y() = cy - c / 2.0 + margin_m;
    roi.hi.y() = cy + c / 2.0 - margin_m;
  } else {
    roi.lo.y() = ap.lo.y() + c / 2.0 + margin_m;
    roi.hi.y() = ap.hi.y() - c / 2.0 - margin_m;
  }
  if (roi.empty())
    throw CoverageError(
        "roi_for: footprint_exceeds_extent (coverage leaves no fully sampled region)");
  return RegionOfInterest{roi};
}

namespace {

template <typename Fn>
void for_roi_cells(const IntegralImage& integral, const Rect& rect, Fn&& fn) {
  const GroundGrid& g = integral.grid;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      if (rect.contains(g.cell_center(ix, iy))) fn(ix, iy);
}

}  // namespace

double visibility(const IntegralImage& integral, const RegionOfInterest& roi) {
  double total = 0.0;
  long cells = 0;
  for_roi_cells(integral, roi.rect, [&](int ix, int iy) {
    if (integral.count(iy, ix) == 0)
      throw CoverageError("visibility: ROI contains a cell with no samples");
    total += integral.sum(iy, ix) / integral.count(iy, ix);
    ++cells;
  });
  if (cells == 0) throw CoverageError("visibility: ROI contains no grid cells");
  return total / static_cast<double>(cells);
}

double visibility_std(const IntegralImage& integral, const RegionOfInterest& roi) {
  const double mean = visibility(integral, roi);
  double acc = 0.0;
  long cells = 0;
  for_roi_cells(integral, roi.rect, [&](int ix, int iy) {
    const double v = integral.sum(iy, ix) / integral.count(iy, ix);
    acc += (v - mean) * (v - mean);
    ++cells;
  });
  return std::sqrt(acc / static_cast<double>(cells));
}

double integral_mean(const IntegralImage& integral, const Rect& region) {
  if (integral.poses_integrated <= 0)
    throw std::invalid_argument("integral_mean: integral holds no poses");
  double total = 0.0;
  long cells = 0;
  for_roi_cells(integral, region, [&](int ix, int iy) {
    total += integral.sum(iy, ix);
    ++cells;
  });
  if (cells == 0) throw CoverageError("integral_mean: region contains no grid cells");
  return total / (static_cast<double>(cells) * integral.poses_integrated);
}

void write_integral_pgm(const IntegralImage& integral, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_integral_pgm: cannot open " + path);
  out << "P5\n" << integral.grid.nx << " " << integral.grid.ny << "\n255\n";
  for (int iy = 0; iy < integral.grid.ny; ++iy)
    for (int ix = 0; ix < integral.grid.nx; ++ix) {
      const int c = integral.count(iy, ix);
      const double v = c == 0 ? 0.0 : integral.sum(iy, ix) / c;
      out.put(static_cast<char>(static_cast<int>(std::lround(v * 255.0))));
    }
}

std::string integral_metadata(const IntegralImage& integral, const FlightPlan& plan,
                              const SensorConfig& sensor, std::uint64_t seed,
                              const std::string& tag) {
  nlohmann::json j;
  j["format"] = "aosim-integral-meta/1";
  j["tag"] = tag;
  j["grid"] = {{"origin", {integral.grid.origin.x(), integral.grid.origin.y()}},
               {"cell_m", integral.grid.cell_m},
               {"nx", integral.grid.nx},
               {"ny", integral.grid.ny}};
  j["plan"] = {{"mode", to_string(plan.mode)},
               {"spacing_m", plan.spacing_m},
               {"altitude_m", plan.altitude_m()},
               {"poses", plan.poses.size()},
               {"aperture", {{"lo", {plan.aperture.lo.x(), plan.aperture.lo.y()}},
                             {"hi", {plan.aperture.hi.x(), plan.aperture.hi.y()}}}}};
  j["sensor"] = {{"fov_deg", sensor.fov_deg}, {"resolution_px", sensor.resolution_px}};
  j["seed"] = seed;
  return j.dump(2);
}

}  // namespace aosim
