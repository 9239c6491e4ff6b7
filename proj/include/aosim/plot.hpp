// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
//
// Minimal static SVG line charts for sweep results.
#pragma once

#include <string>
#include <vector>

#include "aosim/sweep.hpp"

namespace aosim {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

std::string render_svg_chart(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<PlotSeries>& series);

/// Visibility vs FOV, one series per (density, altitude) at the smallest
/// sampling distance present.
std::string fig_visibility_vs_fov(const std::vector<SweepRecord>& records);

/// Visibility vs n = c/d at the lowest altitude present, one series per
/// (density, sampling distance); n varies along each series with FOV.
std::string fig_visibility_vs_n(const std::vector<SweepRecord>& records);

}  // namespace aosim
