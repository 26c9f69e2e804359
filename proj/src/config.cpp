#include "rayres/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rayres {

using nlohmann::json;

namespace {

Complex parse_complex(const json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2)
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw std::invalid_argument("complex values must be numbers or [re, im] pairs");
}

}  // namespace

RunConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  RunConfig cfg;
  if (j.contains("constants")) {
    const auto& c = j["constants"];
    cfg.constants.mu_I = c.value("mu_I", 1.0);
    cfg.constants.lambda_I = c.value("lambda_I", 1.0);
    cfg.constants.omega = c.value("omega", 1.0);
    cfg.constants.H = c.value("H", 1.0);
  }
  if (j.contains("profile")) {
    const auto& p = j["profile"];
    cfg.profile_kind = p.value("kind", "constant");
    if (p.contains("params")) {
      const auto& q = p["params"];
      cfg.bump_amp_mu = q.value("amp_mu", 0.0);
      cfg.bump_amp_lambda = q.value("amp_lambda", 0.0);
      cfg.bump_power = q.value("power", 2);
      if (q.contains("z")) cfg.table_z = q["z"].get<std::vector<double>>();
      if (q.contains("mu")) cfg.table_mu = q["mu"].get<std::vector<double>>();
      if (q.contains("lambda")) cfg.table_lambda = q["lambda"].get<std::vector<double>>();
    }
  }
  if (j.contains("transform")) {
    const auto& t = j["transform"];
    cfg.transform_given = true;
    if (t.is_string()) {
      cfg.transform_preset = t.get<std::string>();
    } else {
      cfg.transform_preset = t.value("preset", "explicit");
      cfg.g11 = t.value("G11H", 1.0);
      cfg.g12 = t.value("G12H", 0.0);
      cfg.g21 = t.value("G21H", 0.0);
      cfg.g22 = t.value("G22H", 1.0);
    }
  }
  if (j.contains("potential")) {
    const auto& v = j["potential"];
    cfg.potential_kind = v.value("kind", "zero");
    cfg.potential_epsilon = v.value("epsilon", 0.1);
    cfg.potential_generic = v.value("generic", false);
    if (v.contains("params")) {
      const auto& q = v["params"];
      cfg.potential_x0 = q.value("x0", 0.0);
      cfg.potential_x1 = q.value("x1", cfg.constants.H);
      if (q.contains("amplitudes")) {
        const auto& a = q["amplitudes"];
        for (int r = 0; r < 2; ++r)
          for (int c = 0; c < 2; ++c) cfg.potential_amplitudes(r, c) = a[r][c].get<double>();
      }
    }
  }
  if (j.contains("tolerances"))
    for (auto& [k, v] : j["tolerances"].items()) {
      const double tol = v.get<double>();
      if (!(tol > 0.0))
        throw std::invalid_argument("tolerance '" + k + "' must be positive");
      cfg.tolerances[k] = tol;
    }
  if (j.contains("quadrature")) {
    cfg.quad_nodes_per_panel = j["quadrature"].value("nodes_per_panel", 32);
    cfg.quad_panels = j["quadrature"].value("panels", 16);
  }
  cfg.volterra_mode = j.value("volterra_mode", "auto");
  cfg.seed = j.value("seed", static_cast<std::uint64_t>(20260808));
  cfg.out_dir = j.value("out", "out");

  if (j.contains("eval")) {
    const auto& e = j["eval"];
    if (e.contains("xi"))
      for (const auto& p : e["xi"]) cfg.eval_points.push_back(parse_complex(p));
    if (e.contains("sheets")) cfg.eval_sheets = e["sheets"].get<std::vector<std::string>>();
  }
  if (j.contains("roots")) {
    const auto& r = j["roots"];
    cfg.roots_target = r.value("target", "delta");
    cfg.roots_sheet = r.value("sheet", "++");
    if (r.contains("rect")) {
      const auto& b = r["rect"];
      cfg.roots_rect = Rect{b[0].get<double>(), b[1].get<double>(), b[2].get<double>(),
                            b[3].get<double>()};
    }
  }
  if (j.contains("analyze")) {
    const auto& a = j["analyze"];
    if (a.contains("radii")) cfg.analyze_radii = a["radii"].get<std::vector<double>>();
    if (a.contains("count_radii")) cfg.count_radii = a["count_radii"].get<std::vector<double>>();
    cfg.count_search_radius = a.value("count_search_radius", cfg.count_radii.empty()
                                                                 ? 20.0
                                                                 : cfg.count_radii.back());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_json(ss.str());
}

std::string canonical_config(const RunConfig& cfg) {
  json j;
  j["constants"] = {{"mu_I", cfg.constants.mu_I},
                    {"lambda_I", cfg.constants.lambda_I},
                    {"omega", cfg.constants.omega},
                    {"H", cfg.constants.H}};
  j["profile"] = {{"kind", cfg.profile_kind},
                  {"amp_mu", cfg.bump_amp_mu},
                  {"amp_lambda", cfg.bump_amp_lambda},
                  {"power", cfg.bump_power},
                  {"z", cfg.table_z},
                  {"mu", cfg.table_mu},
                  {"lambda", cfg.table_lambda}};
  j["transform"] = {{"preset", cfg.transform_preset},
                    {"G11H", cfg.g11},
                    {"G12H", cfg.g12},
                    {"G21H", cfg.g21},
                    {"G22H", cfg.g22}};
  j["potential"] = {{"kind", cfg.potential_kind},
                    {"x0", cfg.potential_x0},
                    {"x1", cfg.potential_x1},
                    {"epsilon", cfg.potential_epsilon},
                    {"generic", cfg.potential_generic},
                    {"amplitudes",
                     {{cfg.potential_amplitudes(0, 0), cfg.potential_amplitudes(0, 1)},
                      {cfg.potential_amplitudes(1, 0), cfg.potential_amplitudes(1, 1)}}}};
  j["tolerances"] = cfg.tolerances;
  j["quadrature"] = {{"nodes_per_panel", cfg.quad_nodes_per_panel}, {"panels", cfg.quad_panels}};
  j["volterra_mode"] = cfg.volterra_mode;
  j["seed"] = cfg.seed;
  return j.dump();
}

std::uint64_t config_hash(const RunConfig& cfg) {
  // FNV-1a over the canonical serialization
  const std::string s = canonical_config(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

Problem build_problem(const RunConfig& cfg) {
  Problem pr;
  pr.constants = cfg.constants;
  pr.constants.validate();

  if (cfg.profile_kind == "constant") {
    pr.profile = make_constant_profile(cfg.constants);
  } else if (cfg.profile_kind == "polynomial-bump") {
    pr.profile = make_polynomial_bump_profile(cfg.constants, cfg.bump_amp_mu,
                                              cfg.bump_amp_lambda, cfg.bump_power);
  } else if (cfg.profile_kind == "table+spline") {
    pr.profile = make_spline_profile(cfg.constants, cfg.table_z, cfg.table_mu, cfg.table_lambda);
  } else {
    throw std::invalid_argument("unknown profile kind: " + cfg.profile_kind);
  }

  if (cfg.transform_preset == "identity") {
    pr.transform = TransformData::identity_anchor(cfg.constants);
  } else if (cfg.transform_preset == "surface-normalized") {
    pr.transform = TransformData::surface_normalized(cfg.constants);
  } else {
    pr.transform =
        TransformData::from_matrix(cfg.constants, cfg.g11, cfg.g12, cfg.g21, cfg.g22);
  }

  if (cfg.potential_kind == "zero") {
    pr.potential = PotentialSpec::zero(cfg.constants.H);
  } else if (cfg.potential_kind == "bump") {
    pr.potential = PotentialSpec::bump(cfg.potential_amplitudes, cfg.potential_x0,
                                       cfg.potential_x1, cfg.constants.H, cfg.potential_epsilon,
                                       cfg.potential_generic);
  } else {
    throw std::invalid_argument("unknown potential kind: " + cfg.potential_kind);
  }

  pr.theta = ThetaMatrix::from_profile(pr.profile);
  if (cfg.volterra_mode == "auto")
    pr.mode = VolterraMode::Auto;
  else if (cfg.volterra_mode == "iterates")
    pr.mode = VolterraMode::Iterates;
  else if (cfg.volterra_mode == "ode")
    pr.mode = VolterraMode::Ode;
  else
    throw std::invalid_argument("unknown volterra mode: " + cfg.volterra_mode);

  pr.volterra.nodes_per_panel = cfg.quad_nodes_per_panel;
  pr.volterra.panels = cfg.quad_panels;
  return pr;
}

}  // namespace rayres
