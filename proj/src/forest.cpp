// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#include "aosim/forest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "aosim/rng.hpp"

namespace aosim {

using nlohmann::json;

void Interval::validate(const char* name) const {
  if (!(lo > 0.0) || !(hi >= lo))
    throw std::invalid_argument(std::string("TreeParams.") + name +
                                ": need 0 < lo <= hi");
}

void TreeParams::validate() const {
  height_m.validate("height_m");
  trunk_length_m.validate("trunk_length_m");
  trunk_radius_m.validate("trunk_radius_m");
  leaf_size_m.validate("leaf_size_m");
  if (trunk_length_m.hi >= height_m.lo)
    throw std::invalid_argument(
        "TreeParams: trunk_length_m.hi must stay below height_m.lo so a crown exists");
  if (branch_levels < 0 || branch_levels > 6)
    throw std::invalid_argument("TreeParams.branch_levels: expected 0..6");
  if (branches_per_level < 1 || branches_per_level > 16)
    throw std::invalid_argument("TreeParams.branches_per_level: expected 1..16");
  if (leaves_per_branch < 0 || leaves_per_branch > 4096)
    throw std::invalid_argument("TreeParams.leaves_per_branch: expected 0..4096");
  if (!(crown_radius_fraction > 0.0 && crown_radius_fraction < 1.0))
    throw std::invalid_argument("TreeParams.crown_radius_fraction: expected (0,1)");
  if (!(min_spacing_m >= 0.0))
    throw std::invalid_argument("TreeParams.min_spacing_m: expected >= 0");
  if (!(leaf_tilt >= 0.0 && leaf_tilt <= 2.0))
    throw std::invalid_argument("TreeParams.leaf_tilt: expected 0..2");
}

double DensitySpec::trees_per_ha() const {
  switch (cls) {
    case DensityClass::sparse: return 133.0;
    case DensityClass::medium: return 266.0;
    case DensityClass::dense: return 400.0;
    case DensityClass::custom: return custom_per_ha;
  }
  return 0.0;
}

std::string DensitySpec::name() const {
  switch (cls) {
    case DensityClass::sparse: return "sparse";
    case DensityClass::medium: return "medium";
    case DensityClass::dense: return "dense";
    case DensityClass::custom: {
      std::ostringstream os;
      os << "custom:" << custom_per_ha;
      return os.str();
    }
  }
  return "?";
}

DensitySpec DensitySpec::parse(const std::string& text) {
  if (text == "sparse") return sparse();
  if (text == "medium") return medium();
  if (text == "dense") return dense();
  std::string t = text;
  if (t.rfind("custom:", 0) == 0) t = t.substr(7);
  try {
    const double v = std::stod(t);
    if (v < 0.0) throw std::invalid_argument("");
    return custom(v);
  } catch (...) {
    throw std::invalid_argument("density: expected sparse|medium|dense|<trees/ha>, got '" +
                                text + "'");
  }
}

namespace {

// Crown lateral profile at relative height zt in [0,1] above the crown base.
double crown_profile(Species sp, double crown_radius, double zt) {
  zt = std::clamp(zt, 0.0, 1.0);
  if (sp == Species::conifer) return crown_radius * (1.0 - 0.85 * zt);
  const double e = 2.0 * zt - 1.0;
  return crown_radius * std::sqrt(std::max(1.0 - e * e, 0.0));
}

struct BranchFrame {
  Vector3d p0;
  Vector3d dir;   // unit
  double length;
  double radius;
};

}  // namespace

TreeGeometry generate_tree(std::uint64_t seed, const TreeParams& params) {
  params.validate();
  Rng rng(seed);

  TreeGeometry tree;
  tree.height_m = rng.uniform(params.height_m.lo, params.height_m.hi);
  const double trunk_len = rng.uniform(params.trunk_length_m.lo, params.trunk_length_m.hi);
  const double trunk_rad = rng.uniform(params.trunk_radius_m.lo, params.trunk_radius_m.hi);
  tree.species = rng.coin() ? Species::conifer : Species::broadleaf;

  tree.trunk.base = Vector3d::Zero();
  tree.trunk.axis = Vector3d::UnitZ();
  tree.trunk.length = trunk_len;
  tree.trunk.radius = trunk_rad;

  const double crown_h = tree.height_m - trunk_len;
  const double species_scale = tree.species == Species::conifer ? 0.42 : 1.25;
  const double crown_r = params.crown_radius_fraction * species_scale * crown_h;
  tree.crown_radius_m = crown_r;

  const double z_lo = trunk_len;
  const double z_hi = tree.height_m;

  auto clamp_into_crown = [&](Vector3d& p) {
    p.z() = std::clamp(p.z(), z_lo + 1e-3, z_hi);
    const double rad = p.head<2>().norm();
    const double rad_max = 0.97 * crown_r;
    if (rad > rad_max) p.head<2>() *= rad_max / rad;
  };

  // First-level branches sprout from the stem axis across the crown span.
  std::vector<BranchFrame> level;
  const int b1 = params.branch_levels >= 1 ? params.branches_per_level : 0;
  for (int b = 0; b < b1; ++b) {
    BranchFrame f;
    const double zt = rng.uniform(0.05, 0.90);
    const double az = rng.uniform(0.0, 2.0 * kPi);
    const double incl = tree.species == Species::conifer ? rng.uniform(-0.15, 0.10)
                                                         : rng.uniform(0.25, 0.60);
    f.p0 = Vector3d(0.0, 0.0, z_lo + zt * crown_h);
    f.dir = Vector3d(std::cos(az) * std::cos(incl), std::sin(az) * std::cos(incl),
                     std::sin(incl));
    const double reach = crown_profile(tree.species, crown_r, zt);
    f.length = std::max(0.4, reach * rng.uniform(0.65, 1.0) /
                                 std::max(std::cos(incl), 0.35));
    f.radius = trunk_rad * rng.uniform(0.25, 0.40);
    Vector3d tip = f.p0 + f.dir * f.length;
    clamp_into_crown(tip);
    f.length = (tip - f.p0).norm();
    f.dir = f.length > 1e-9 ? Vector3d((tip - f.p0) / f.length) : Vector3d::UnitZ();
    level.push_back(f);
  }

  std::vector<BranchFrame> all = level;
  for (int lvl = 2; lvl <= params.branch_levels; ++lvl) {
    std::vector<BranchFrame> next;
    for (const BranchFrame& parent : level) {
      for (int b = 0; b < params.branches_per_level; ++b) {
        BranchFrame f;
        f.p0 = parent.p0 + parent.dir * (parent.length * rng.uniform(0.35, 0.95));
        const double az = std::atan2(parent.dir.y(), parent.dir.x()) +
                          rng.uniform(-1.2, 1.2);
        const double incl0 = std::asin(std::clamp(parent.dir.z(), -1.0, 1.0));
        const double incl = std::clamp(incl0 + rng.uniform(-0.35, 0.50), -0.4, 1.3);
        f.dir = Vector3d(std::cos(az) * std::cos(incl), std::sin(az) * std::cos(incl),
                         std::sin(incl));
        f.length = parent.length * rng.uniform(0.45, 0.75);
        f.radius = parent.radius * 0.65;
        Vector3d tip = f.p0 + f.dir * f.length;
        clamp_into_crown(tip);
        Vector3d p0 = f.p0;
        clamp_into_crown(p0);
        f.p0 = p0;
        f.length = std::max((tip - f.p0).norm(), 0.05);
        f.dir = (tip - f.p0).norm() > 1e-9 ? Vector3d((tip - f.p0).normalized())
                                           : Vector3d::UnitZ();
        next.push_back(f);
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }

  tree.branches.reserve(all.size());
  for (const BranchFrame& f : all) {
    Cylinder c;
    c.base = f.p0;
    c.axis = f.dir;
    c.length = f.length;
    c.radius = f.radius;
    tree.branches.push_back(c);
  }

  // Leaves hang off the terminal branch generation (the trunk when there are
  // no branches). leaf_tilt blends the normal from horizontal-leaf (0) toward
  // a fully tumbled orientation (>= 1).
  const std::vector<BranchFrame>& terminals = level;
  const double tilt = std::min(params.leaf_tilt, 1.0);
  auto leaf_normal = [&]() {
    const Vector3d random = rng.unit_vector();
    Vector3d n = (1.0 - tilt) * Vector3d::UnitZ() +
                 tilt * Vector3d(random.x(), random.y(), std::abs(random.z()));
    const double norm = n.norm();
    return norm > 1e-9 ? Vector3d(n / norm) : Vector3d::UnitZ();
  };
  const double leaf_spread = std::max(0.35, 0.28 * crown_r);
  if (!terminals.empty()) {
    tree.leaves.reserve(terminals.size() * params.leaves_per_branch);
    for (const BranchFrame& f : terminals) {
      for (int l = 0; l < params.leaves_per_branch; ++l) {
        Disc leaf;
        Vector3d p = f.p0 + f.dir * (f.length * rng.uniform(0.15, 1.0)) +
                     rng.unit_vector() * rng.uniform(0.0, leaf_spread);
        clamp_into_crown(p);
        leaf.center = p;
        leaf.normal = leaf_normal();
        leaf.radius = rng.uniform(params.leaf_size_m.lo, params.leaf_size_m.hi) / 2.0;
        tree.leaves.push_back(leaf);
      }
    }
  } else if (params.branch_levels == 0 && params.leaves_per_branch > 0) {
    for (int l = 0; l < params.leaves_per_branch; ++l) {
      Disc leaf;
      const double zt = rng.uniform(0.05, 1.0);
      const double reach = crown_profile(tree.species, crown_r, zt);
      const double az = rng.uniform(0.0, 2.0 * kPi);
      Vector3d p(std::cos(az) * reach * rng.uniform(0.0, 1.0),
                 std::sin(az) * reach * rng.uniform(0.0, 1.0), z_lo + zt * crown_h);
      clamp_into_crown(p);
      leaf.center = p;
      leaf.normal = leaf_normal();
      leaf.radius = rng.uniform(params.leaf_size_m.lo, params.leaf_size_m.hi) / 2.0;
      tree.leaves.push_back(leaf);
    }
  }

  return tree;
}

Forest generate_forest(std::uint64_t seed, const DensitySpec& density,
                       const Rect& extent, const TreeParams& params) {
  params.validate();
  if (!(extent.area() > 0.0))
    throw std::invalid_argument("generate_forest: extent area must be > 0");
  const double per_ha = density.trees_per_ha();
  if (per_ha < 0.0)
    throw std::invalid_argument("generate_forest: density must be >= 0");

  Forest forest;
  forest.extent = extent;
  forest.density = density;
  forest.seed = seed;
  forest.params = params;

  const long long count = std::llround(per_ha * extent.area() / 10000.0);
  Rng rng(seed);

  // Dart throwing with a hash grid over occupied positions.
  const double spacing = params.min_spacing_m;
  const double cell = std::max(spacing, 1e-3);
  std::unordered_map<long long, std::vector<Vector2d>> occupied;
  auto key = [&](double x, double y) {
    const long long ix = static_cast<long long>(std::floor(x / cell));
    const long long iy = static_cast<long long>(std::floor(y / cell));
    return ix * 73856093LL ^ iy * 19349663LL;
  };
  auto conflicts = [&](const Vector2d& p) {
    if (spacing <= 0.0) return false;
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        auto it = occupied.find(key(p.x() + di * cell, p.y() + dj * cell));
        if (it == occupied.end()) continue;
        for (const Vector2d& q : it->second)
          if ((p - q).squaredNorm() < spacing * spacing) return true;
      }
    return false;
  };

  std::vector<Vector2d> positions;
  positions.reserve(static_cast<std::size_t>(count));
  int consecutive_failures = 0;
  while (static_cast<long long>(positions.size()) < count) {
    Vector2d p(rng.uniform(extent.lo.x(), extent.hi.x()),
               rng.uniform(extent.lo.y(), extent.hi.y()));
    if (conflicts(p)) {
      if (++consecutive_failures >= 10000)
        throw std::invalid_argument(
            "generate_forest: placement failed after 10000 consecutive rejections; "
            "density too high for min_spacing_m");
      continue;
    }
    consecutive_failures = 0;
    occupied[key(p.x(), p.y())].push_back(p);
    positions.push_back(p);
  }

  forest.trees.reserve(positions.size());
  for (const Vector2d& p : positions) {
    PlacedTree t;
    t.position = p;
    t.geometry = generate_tree(rng.raw(), params);
    forest.trees.push_back(std::move(t));
  }
  return forest;
}

ForestStats forest_stats(const Forest& forest) {
  const std::size_t n = forest.trees.size();
  if (n < 2)
    throw std::invalid_argument("forest_stats: need at least 2 trees for d_t");

  ForestStats s;
  double trunk_sum = 0.0;
  double nn_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    trunk_sum += forest.trees[i].geometry.trunk.length;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = (forest.trees[i].position - forest.trees[j].position).norm();
      best = std::min(best, d);
    }
    nn_sum += best;
  }
  s.h_t_m = trunk_sum / static_cast<double>(n);
  s.d_t_m = nn_sum / static_cast<double>(n);
  s.trees_per_ha = forest.realized_per_ha();
  return s;
}

namespace {

double round6(double v) { return std::round(v * 1e6) / 1e6; }

json vec3_json(const Vector3d& v) {
  return json::array({round6(v.x()), round6(v.y()), round6(v.z())});
}

Vector3d vec3_from(const json& j) { return Vector3d(j.at(0), j.at(1), j.at(2)); }

json interval_json(const Interval& i) { return json::array({i.lo, i.hi}); }

Interval interval_from(const json& j) { return Interval{j.at(0), j.at(1)}; }

}  // namespace

std::string serialize_forest(const Forest& forest) {
  json j;
  j["format"] = "aosim-forest/1";
  j["seed"] = forest.seed;
  j["density"] = forest.density.name();
  j["trees_per_ha"] = forest.density.trees_per_ha();
  j["extent"] = {{"lo", {forest.extent.lo.x(), forest.extent.lo.y()}},
                 {"hi", {forest.extent.hi.x(), forest.extent.hi.y()}}};
  const TreeParams& p = forest.params;
  j["params"] = {{"height_m", interval_json(p.height_m)},
                 {"trunk_length_m", interval_json(p.trunk_length_m)},
                 {"trunk_radius_m", interval_json(p.trunk_radius_m)},
                 {"leaf_size_m", interval_json(p.leaf_size_m)},
                 {"branch_levels", p.branch_levels},
                 {"branches_per_level", p.branches_per_level},
                 {"leaves_per_branch", p.leaves_per_branch},
                 {"crown_radius_fraction", p.crown_radius_fraction},
                 {"min_spacing_m", p.min_spacing_m},
                 {"leaf_tilt", p.leaf_tilt}};
  json trees = json::array();
  for (const PlacedTree& t : forest.trees) {
    json tj;
    tj["position"] = {round6(t.position.x()), round6(t.position.y())};
    tj["species"] = t.geometry.species == Species::conifer ? "conifer" : "broadleaf";
    tj["height_m"] = round6(t.geometry.height_m);
    tj["crown_radius_m"] = round6(t.geometry.crown_radius_m);
    tj["trunk"] = {{"length", round6(t.geometry.trunk.length)},
                   {"radius", round6(t.geometry.trunk.radius)}};
    json branches = json::array();
    for (const Cylinder& c : t.geometry.branches)
      branches.push_back(json::array({vec3_json(c.base), vec3_json(c.axis),
                                      round6(c.length), round6(c.radius)}));
    tj["branches"] = std::move(branches);
    json leaves = json::array();
    for (const Disc& d : t.geometry.leaves)
      leaves.push_back(json::array(
          {vec3_json(d.center), vec3_json(d.normal), round6(d.radius)}));
    tj["leaves"] = std::move(leaves);
    trees.push_back(std::move(tj));
  }
  j["trees"] = std::move(trees);
  return j.dump();
}

Forest deserialize_forest(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("format") != "aosim-forest/1")
    throw std::invalid_argument("deserialize_forest: unknown format tag");
  Forest f;
  f.seed = j.at("seed");
  f.density = DensitySpec::parse(j.at("density"));
  if (f.density.cls == DensityClass::custom)
    f.density.custom_per_ha = j.at("trees_per_ha");
  f.extent.lo = Vector2d(j.at("extent").at("lo").at(0), j.at("extent").at("lo").at(1));
  f.extent.hi = Vector2d(j.at("extent").at("hi").at(0), j.at("extent").at("hi").at(1));
  const json& p = j.at("params");
  f.params.height_m = interval_from(p.at("height_m"));
  f.params.trunk_length_m = interval_from(p.at("trunk_length_m"));
  f.params.trunk_radius_m = interval_from(p.at("trunk_radius_m"));
  f.params.leaf_size_m = interval_from(p.at("leaf_size_m"));
  f.params.branch_levels = p.at("branch_levels");
  f.params.branches_per_level = p.at("branches_per_level");
  f.params.leaves_per_branch = p.at("leaves_per_branch");
  f.params.crown_radius_fraction = p.at("crown_radius_fraction");
  f.params.min_spacing_m = p.at("min_spacing_m");
  f.params.leaf_tilt = p.at("leaf_tilt");
  for (const json& tj : j.at("trees")) {
    PlacedTree t;
    t.position = Vector2d(tj.at("position").at(0), tj.at("position").at(1));
    t.geometry.species =
        tj.at("species") == "conifer" ? Species::conifer : Species::broadleaf;
    t.geometry.height_m = tj.at("height_m");
    t.geometry.crown_radius_m = tj.at("crown_radius_m");
    t.geometry.trunk.base = Vector3d::Zero();
    t.geometry.trunk.axis = Vector3d::UnitZ();
    t.geometry.trunk.length = tj.at("trunk").at("length");
    t.geometry.trunk.radius = tj.at("trunk").at("radius");
    for (const json& bj : tj.at("branches")) {
      Cylinder c;
      c.base = vec3_from(bj.at(0));
      c.axis = vec3_from(bj.at(1));
      c.length = bj.at(2);
      c.radius = bj.at(3);
      t.geometry.branches.push_back(c);
    }
    for (const json& lj : tj.at("leaves")) {
      Disc d;
      d.center = vec3_from(lj.at(0));
      d.normal = vec3_from(lj.at(1));
      d.radius = lj.at(2);
      t.geometry.leaves.push_back(d);
    }
    f.trees.push_back(std::move(t));
  }
  return f;
}

void save_forest(const Forest& forest, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_forest: cannot open " + path);
  out << serialize_forest(forest);
}

Forest load_forest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_forest: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_forest(ss.str());
}

}  // namespace aosim
