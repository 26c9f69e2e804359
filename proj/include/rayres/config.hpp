#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "rayres/analysis.hpp"
#include "rayres/medium.hpp"
#include "rayres/pm_transform.hpp"
#include "rayres/spectral.hpp"

namespace rayres {

/// One run of the tool: medium, transform-side data, numerical knobs, and
/// the per-subcommand parameters. Parsed from a JSON file.
struct RunConfig {
  HalfSpaceConstants constants;

  std::string profile_kind = "constant";  // constant | polynomial-bump | table+spline
  double bump_amp_mu = 0.0;
  double bump_amp_lambda = 0.0;
  int bump_power = 2;
  std::vector<double> table_z, table_mu, table_lambda;

  bool transform_given = false;
  double g11 = 1.0, g12 = 0.0, g21 = 0.0, g22 = 1.0;
  std::string transform_preset = "identity";  // identity | surface-normalized | explicit

  std::string potential_kind = "zero";  // zero | bump
  Mat2d potential_amplitudes = Mat2d::Zero();
  double potential_x0 = 0.0, potential_x1 = 0.0;
  double potential_epsilon = 0.1;
  bool potential_generic = false;

  std::map<std::string, double> tolerances;
  int quad_nodes_per_panel = 32;
  int quad_panels = 16;
  std::string volterra_mode = "auto";  // auto | iterates | ode
  std::uint64_t seed = 20260808;

  // eval
  std::vector<Complex> eval_points;
  std::vector<std::string> eval_sheets = {"++"};

  // roots
  std::string roots_target = "delta";  // delta | F
  std::string roots_sheet = "++";
  Rect roots_rect{0.0, 0.0, 0.0, 0.0};

  // analyze
  std::vector<double> analyze_radii = {2.0, 5.0, 10.0, 20.0};
  std::vector<double> count_radii = {5.0, 10.0, 20.0};
  double count_search_radius = 20.0;

  std::string out_dir = "out";

  double tol(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
};

RunConfig load_config(const std::string& path);
RunConfig parse_config_json(const std::string& text);

/// Canonical serialization used for the reproducibility hash.
std::string canonical_config(const RunConfig& cfg);
std::uint64_t config_hash(const RunConfig& cfg);

/// Assembled working objects for a run.
struct Problem {
  HalfSpaceConstants constants;
  ElasticProfile profile;
  TransformData transform;
  PotentialSpec potential;
  ThetaMatrix theta;
  VolterraMode mode = VolterraMode::Auto;
  VolterraOptions volterra;
};

Problem build_problem(const RunConfig& cfg);

namespace cli {

int run_eval(const RunConfig& cfg);
int run_verify(const RunConfig& cfg);
int run_roots(const RunConfig& cfg);
int run_analyze(const RunConfig& cfg);

}  // namespace cli

}  // namespace rayres
