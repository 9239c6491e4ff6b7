// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include "aosim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace aosim {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 540;
constexpr int kMarginL = 70, kMarginR = 190, kMarginT = 50, kMarginB = 60;

const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                         "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
                         "#3b5b92", "#c49c94"};

std::string fnum(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::string render_svg_chart(const std::string& title, const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<PlotSeries>& series) {
  double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
  double y_min = 0.0, y_max = -std::numeric_limits<double>::infinity();
  for (const PlotSeries& s : series)
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      x_min = std::min(x_min, s.x[k]);
      x_max = std::max(x_max, s.x[k]);
      y_max = std::max(y_max, s.y[k]);
    }
  if (!(x_max > x_min)) {
    x_min = 0;
    x_max = 1;
  }
  if (!(y_max > 0)) y_max = 1.0;
  y_max = std::min(1.0, y_max * 1.08 + 0.02);

  const double px0 = kMarginL, px1 = kWidth - kMarginR;
  const double py0 = kHeight - kMarginB, py1 = kMarginT;
  auto X = [&](double x) { return px0 + (x - x_min) / (x_max - x_min) * (px1 - px0); };
  auto Y = [&](double y) { return py0 + (y - y_min) / (y_max - y_min) * (py1 - py0); };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kWidth << "' height='"
      << kHeight << "' viewBox='0 0 " << kWidth << " " << kHeight << "'>\n"
      << "<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << kWidth / 2 << "' y='24' text-anchor='middle' "
      << "font-family='sans-serif' font-size='16'>" << title << "</text>\n";

  // Axes and ticks.
  svg << "<g stroke='#444' stroke-width='1' font-family='sans-serif' font-size='11'>\n";
  svg << "<line x1='" << px0 << "' y1='" << py0 << "' x2='" << px1 << "' y2='" << py0
      << "'/>\n<line x1='" << px0 << "' y1='" << py0 << "' x2='" << px0 << "' y2='"
      << py1 << "'/>\n";
  const int n_ticks = 6;
  for (int t = 0; t <= n_ticks; ++t) {
    const double xv = x_min + (x_max - x_min) * t / n_ticks;
    const double yv = y_min + (y_max - y_min) * t / n_ticks;
    svg << "<line x1='" << X(xv) << "' y1='" << py0 << "' x2='" << X(xv) << "' y2='"
        << py0 + 4 << "'/>\n"
        << "<text x='" << X(xv) << "' y='" << py0 + 18
        << "' text-anchor='middle' stroke='none' fill='#222'>" << fnum(xv)
        << "</text>\n";
    svg << "<line x1='" << px0 - 4 << "' y1='" << Y(yv) << "' x2='" << px0 << "' y2='"
        << Y(yv) << "'/>\n"
        << "<text x='" << px0 - 8 << "' y='" << Y(yv) + 4
        << "' text-anchor='end' stroke='none' fill='#222'>" << fnum(yv) << "</text>\n";
    if (t > 0)
      svg << "<line x1='" << px0 << "' y1='" << Y(yv) << "' x2='" << px1 << "' y2='"
          << Y(yv) << "' stroke='#ddd'/>\n";
  }
  svg << "</g>\n";
  svg << "<text x='" << (px0 + px1) / 2 << "' y='" << kHeight - 16
      << "' text-anchor='middle' font-family='sans-serif' font-size='13'>" << x_label
      << "</text>\n";
  svg << "<text x='18' y='" << (py0 + py1) / 2
      << "' text-anchor='middle' font-family='sans-serif' font-size='13' "
      << "transform='rotate(-90 18 " << (py0 + py1) / 2 << ")'>" << y_label
      << "</text>\n";

  int ci = 0;
  double legend_y = kMarginT + 10;
  for (const PlotSeries& s : series) {
    const char* color = kColors[ci % (sizeof(kColors) / sizeof(kColors[0]))];
    std::ostringstream pts;
    for (std::size_t k = 0; k < s.x.size(); ++k)
      pts << X(s.x[k]) << ',' << Y(s.y[k]) << ' ';
    svg << "<polyline fill='none' stroke='" << color << "' stroke-width='2' points='"
        << pts.str() << "'/>\n";
    for (std::size_t k = 0; k < s.x.size(); ++k)
      svg << "<circle cx='" << X(s.x[k]) << "' cy='" << Y(s.y[k])
          << "' r='3' fill='" << color << "'/>\n";
    svg << "<line x1='" << px1 + 12 << "' y1='" << legend_y << "' x2='" << px1 + 34
        << "' y2='" << legend_y << "' stroke='" << color << "' stroke-width='2'/>\n"
        << "<text x='" << px1 + 40 << "' y='" << legend_y + 4
        << "' font-family='sans-serif' font-size='11'>" << s.label << "</text>\n";
    legend_y += 18;
    ++ci;
  }
  svg << "</svg>\n";
  return svg.str();
}

namespace {

// Seed-averaged metric keyed by (density, fov, alt, dist).
struct Key {
  std::string density;
  double fov, alt, dist;
  bool operator<(const Key& o) const {
    if (density != o.density) return density < o.density;
    if (fov != o.fov) return fov < o.fov;
    if (alt != o.alt) return alt < o.alt;
    return dist < o.dist;
  }
};

std::map<Key, double> seed_averaged(const std::vector<SweepRecord>& records) {
  std::map<Key, std::pair<double, int>> acc;
  for (const SweepRecord& r : records) {
    if (!r.ok()) continue;
    auto& a = acc[{r.density_class, r.fov_deg, r.altitude_m, r.sample_dist_m}];
    a.first += r.integral_mean;
    a.second += 1;
  }
  std::map<Key, double> out;
  for (const auto& [k, a] : acc) out[k] = a.first / a.second;
  return out;
}

}  // namespace

std::string fig_visibility_vs_fov(const std::vector<SweepRecord>& records) {
  const auto avg = seed_averaged(records);
  double d_min = std::numeric_limits<double>::infinity();
  for (const auto& [k, v] : avg) d_min = std::min(d_min, k.dist);

  std::map<std::pair<std::string, double>, PlotSeries> by_curve;
  for (const auto& [k, v] : avg) {
    if (k.dist != d_min) continue;
    PlotSeries& s = by_curve[{k.density, k.alt}];
    if (s.label.empty()) {
      std::ostringstream lab;
      lab << k.density << ", h=" << k.alt << "m";
      s.label = lab.str();
    }
    s.x.push_back(k.fov);
    s.y.push_back(v);
  }
  std::vector<PlotSeries> series;
  for (auto& [key, s] : by_curve) series.push_back(std::move(s));
  std::ostringstream title;
  title << "AOS visibility vs field of view (d=" << d_min << "m)";
  return render_svg_chart(title.str(), "field of view [deg]",
                          "integral visibility", series);
}

std::string fig_visibility_vs_n(const std::vector<SweepRecord>& records) {
  const auto avg = seed_averaged(records);
  double h_min = std::numeric_limits<double>::infinity();
  for (const auto& [k, v] : avg) h_min = std::min(h_min, k.alt);

  std::map<std::pair<std::string, double>, PlotSeries> by_curve;
  for (const auto& [k, v] : avg) {
    if (k.alt != h_min) continue;
    PlotSeries& s = by_curve[{k.density, k.dist}];
    if (s.label.empty()) {
      std::ostringstream lab;
      lab << k.density << ", d=" << k.dist << "m";
      s.label = lab.str();
    }
    const double c = ground_coverage(k.alt, k.fov);
    s.x.push_back(samples_per_point(c, k.dist));
    s.y.push_back(v);
  }
  std::vector<PlotSeries> series;
  for (auto& [key, s] : by_curve) {
    // Order points along the curve by n.
    std::vector<std::size_t> idx(s.x.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return s.x[a] < s.x[b]; });
    PlotSeries sorted;
    sorted.label = s.label;
    for (std::size_t i : idx) {
      sorted.x.push_back(s.x[i]);
      sorted.y.push_back(s.y[i]);
    }
    series.push_back(std::move(sorted));
  }
  std::ostringstream title;
  title << "AOS visibility vs integrated samples n (h=" << h_min << "m)";
  return render_svg_chart(title.str(), "samples per ground point n",
                          "integral visibility", series);
}

}  // namespace aosim
