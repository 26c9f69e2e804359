#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "rayres/analysis.hpp"
#include "rayres/config.hpp"

namespace rayres {
namespace cli {

namespace {

using nlohmann::json;

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
  std::filesystem::create_directories(cfg.out_dir);
  std::ofstream out(std::filesystem::path(cfg.out_dir) / name);
  out << std::setprecision(12);
  return out;
}

std::string hash_line(const RunConfig& cfg) {
  std::ostringstream os;
  os << "# config_hash=" << std::hex << config_hash(cfg) << std::dec << " seed=" << cfg.seed;
  return os.str();
}

struct Check {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

json check_json(const Check& c) {
  return json{{"name", c.name}, {"measured", c.measured}, {"tolerance", c.tolerance},
              {"pass", c.pass}};
}

Complex random_off_cut_point(std::mt19937_64& rng, const HalfSpaceConstants& c, double rmax) {
  std::uniform_real_distribution<double> u(-rmax, rmax);
  for (;;) {
    const Complex z(u(rng), u(rng));
    if (std::abs(z.imag()) < 1e-3 || std::abs(z.real()) < 1e-3) continue;
    if (near_branch_point(z, c, 1e-3)) continue;
    return z;
  }
}

}  // namespace

int run_eval(const RunConfig& cfg) {
  Problem pr;
  try {
    pr = build_problem(cfg);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  auto out = open_output(cfg, "eval.csv");
  out << hash_line(cfg) << "\n";
  out << "xi_re,xi_im,sheet,qP_re,qP_im,qS_re,qS_im,delta_re,delta_im,F_re,F_im\n";
  const bool use_pm = !pr.potential.is_zero();
  const FEvaluator ev = use_pm
                            ? pm_evaluator(pr.potential, pr.transform, pr.constants, pr.theta,
                                           pr.mode, pr.volterra)
                            : displacement_evaluator(pr.profile);
  for (Complex xi : cfg.eval_points) {
    for (const std::string& sname : cfg.eval_sheets) {
      const SheetTag sheet = SheetTag::parse(sname);
      out << xi.real() << "," << xi.imag() << "," << sname << ",";
      try {
        const SpectralPoint pt{xi, sheet, CutSide::Below};
        const QuasiMomenta q = quasi_momenta(pt, pr.constants);
        const Complex delta = ev.delta(xi, sheet, CutSide::Below).to_complex();
        const Complex F = ev.F(xi).to_complex();
        out << q.qp.real() << "," << q.qp.imag() << "," << q.qs.real() << "," << q.qs.imag()
            << "," << delta.real() << "," << delta.imag() << "," << F.real() << "," << F.imag()
            << "\n";
      } catch (const BranchPointError&) {
        out << "nan,nan,nan,nan,nan,nan,nan,nan\n";
      }
    }
  }
  return 0;
}

namespace {

void riemann_checks(const Problem& pr, std::mt19937_64& rng, std::vector<Check>& checks) {
  const HalfSpaceConstants& c = pr.constants;
  // sheet sign consistency, mapping identities, conjugation, reflection
  double worst_map = 0.0, worst_conj = 0.0, worst_refl = 0.0;
  int sign_errors = 0, pattern_errors = 0, classify_errors = 0, zeta_errors = 0;
  for (const SheetTag& s : kAllSheets) {
    for (int k = 0; k < 1000; ++k) {
      const SpectralPoint p{random_off_cut_point(rng, c, 4.0), s, CutSide::Below};
      const QuasiMomenta q = quasi_momenta(p, c);
      if ((q.qp.imag() > 0) != (s.sp > 0) || (q.qs.imag() > 0) != (s.ss > 0)) ++sign_errors;
      const double ipm = (q.qp + q.qs).imag(), imm = (q.qp - q.qs).imag();
      if (s.sp > 0 && !(ipm > 0 && imm > 0)) ++pattern_errors;
      if (s.sp < 0 && !(ipm < 0 && imm < 0)) ++pattern_errors;
      const auto cls = classify_sheet(q);
      if (!cls || !(*cls == s)) ++classify_errors;
      if (zeta_p(q) < 0 || zeta_p_minus_s(q) < 0) ++zeta_errors;
      if (s.sp < 0 && zeta_p_minus_s(q) != 0.0) ++zeta_errors;

      const QuasiMomenta qp_map = quasi_momenta(apply_mapping(p, Mapping::P), c);
      const QuasiMomenta qs_map = quasi_momenta(apply_mapping(p, Mapping::S), c);
      const QuasiMomenta qps_map = quasi_momenta(apply_mapping(p, Mapping::PS), c);
      worst_map = std::max({worst_map, std::abs(qp_map.qp + q.qp), std::abs(qp_map.qs - q.qs),
                            std::abs(qs_map.qs + q.qs), std::abs(qs_map.qp - q.qp),
                            std::abs(qps_map.qp + q.qp), std::abs(qps_map.qs + q.qs)});

      const QuasiMomenta qr = quasi_momenta(reflect(p), c);
      worst_refl = std::max({worst_refl, std::abs(qr.qp - q.qp), std::abs(qr.qs - q.qs)});

      const QuasiMomenta qc = quasi_momenta(conjugate(p, c), c);
      worst_conj = std::max({worst_conj, std::abs(qc.qp + std::conj(q.qp)),
                             std::abs(qc.qs + std::conj(q.qs))});
    }
  }
  checks.push_back({"riemann.sheet_sign_consistency", double(sign_errors), 0.0, sign_errors == 0});
  checks.push_back({"riemann.im_sum_diff_sign_pattern", double(pattern_errors), 0.0, pattern_errors == 0});
  checks.push_back({"riemann.classify_roundtrip", double(classify_errors), 0.0, classify_errors == 0});
  checks.push_back({"riemann.zeta_nonnegative", double(zeta_errors), 0.0, zeta_errors == 0});
  checks.push_back({"riemann.mapping_identities", worst_map, 1e-14, worst_map <= 1e-14});
  checks.push_back({"riemann.reflection_identity", worst_refl, 1e-14, worst_refl <= 1e-14});
  checks.push_back({"riemann.conjugation_identity", worst_conj, 1e-12, worst_conj <= 1e-12});

  double worst_asym = 0.0;
  for (int k = 0; k < 50; ++k) {
    std::uniform_real_distribution<double> u(10.0, 40.0), a(-0.45 * kPi, 0.45 * kPi);
    const double r = u(rng) * branch_radii(c).r_minus;
    const Complex xi = std::polar(r, a(rng));
    for (const SheetTag& s : kAllSheets) {
      const auto res = asymptotic_check({xi, s, CutSide::Below}, c);
      worst_asym = std::max(worst_asym, res.residual / res.bound);
    }
  }
  checks.push_back({"riemann.large_xi_asymptotics", worst_asym, 1.0, worst_asym <= 1.0});
}

void medium_checks(const Problem& pr, std::vector<Check>& checks) {
  const auto rep = validate_profile(pr.profile);
  checks.push_back({"medium.profile_valid", double(rep.issues.size()), 0.0, rep.valid()});
  const auto radii = branch_radii(pr.constants);
  checks.push_back({"medium.branch_radii_order", radii.r_minus - radii.r_plus, 0.0,
                    radii.r_plus < radii.r_minus});
  const double det = pr.transform.g11 * pr.transform.g22 - pr.transform.g12 * pr.transform.g21;
  checks.push_back({"medium.transform_unimodular", std::abs(det - 1.0), 1e-12,
                    std::abs(det - 1.0) <= 1e-12});
  // boundary values against finite differences at the documented step
  const auto& p = pr.profile;
  const double h = 1e-5;
  const double fd1 = (p.mu(h) - p.mu(-h)) / (2 * h);
  const double fd2 = (p.mu(h) - 2 * p.mu(0.0) + p.mu(-h)) / (h * h);
  const double inv_fd2 =
      (1.0 / p.mu(h) - 2.0 / p.mu(0.0) + 1.0 / p.mu(-h)) / (h * h);
  const double e1 = std::abs(fd1 - p.mu_dz(0.0)) / std::max(1.0, std::abs(fd1));
  const double e2 = std::abs(fd2 - p.mu_dzz(0.0)) / std::max(1.0, std::abs(fd2));
  const double e3 = std::abs(inv_fd2 - p.inv_mu_dxx0()) / std::max(1.0, std::abs(inv_fd2));
  const double worst = std::max({e1, e2, e3});
  checks.push_back({"medium.boundary_fd_consistency", worst, 1e-5, worst <= 1e-5});
  const auto vrep = validate_potential(pr.potential);
  checks.push_back({"medium.potential_valid", double(vrep.issues.size()), 0.0, vrep.valid()});
}

void rayleigh_checks(const Problem& pr, std::mt19937_64& rng, std::vector<Check>& checks) {
  const HalfSpaceConstants& c = pr.constants;
  OdeOptions tight{1e-12, 1e-14};
  double worst_parity = 0.0, worst_recon = 0.0, worst_cross = 0.0, worst_prod = 0.0;
  for (int k = 0; k < 25; ++k) {
    const Complex xi = random_off_cut_point(rng, c, 2.0);
    // mapping parity of the propagated columns
    for (const SheetTag& s : {SheetTag{+1, +1}, SheetTag{-1, +1}}) {
      const SpectralPoint p{xi, s, CutSide::Below};
      const auto plus_at_wp = propagate_jost(pr.profile, apply_mapping(p, Mapping::P), Branch::P,
                                             Sign::Plus, tight);
      const auto minus_at_p = propagate_jost(pr.profile, p, Branch::P, Sign::Minus, tight);
      const double sc = std::exp(plus_at_wp.log_scale);
      const double sm = std::exp(minus_at_p.log_scale);
      worst_parity = std::max(
          worst_parity,
          static_cast<double>(
              std::abs(plus_at_wp.frame.a * sc - minus_at_p.frame.a * sm) /
              std::max(1.0, std::abs(minus_at_p.frame.a) * sm)));
    }
    // reconstruction f+/- = theta +- q phi at the surface
    const SpectralPoint phys{xi, SheetTag{+1, +1}, CutSide::Below};
    const QuasiMomenta q = quasi_momenta(phys, c);
    const auto tf = theta_phi(pr.profile, xi, tight);
    const auto fplus = propagate_jost(pr.profile, phys, Branch::P, Sign::Plus, tight);
    const Complex recon = tf.theta_p.a + q.qp * tf.phi_p.a;
    const Complex direct = fplus.frame.a * std::exp(fplus.log_scale);
    worst_recon = std::max(worst_recon,
                           std::abs(recon - direct) / std::max(1.0, std::abs(direct)));
    // determinant against the coefficient expansion, all four sheets
    const DCoefficients dc = d_coefficients(pr.profile, xi, tight);
    for (const SheetTag& s : kAllSheets) {
      const SpectralPoint p{xi, s, CutSide::Below};
      const ScaledComplex direct_det = rayleigh_determinant_scaled(pr.profile, p, tight);
      const ScaledComplex from_d = delta_from_d(dc, q, s);
      worst_cross = std::max(worst_cross, scaled_rel_diff(direct_det, from_d));
    }
    // expanded product identity
    const auto bundle = determinant_bundle(pr.profile, xi, tight);
    ScaledComplex prod = bundle.delta_by_sheet[0];
    for (int i = 1; i < 4; ++i) prod = prod * bundle.delta_by_sheet[i];
    worst_prod = std::max(worst_prod, scaled_rel_diff(prod, bundle.F));
  }
  checks.push_back({"rayleigh.mapping_parity", worst_parity, 1e-10, worst_parity <= 1e-10});
  checks.push_back({"rayleigh.theta_phi_reconstruction", worst_recon, 1e-12,
                    worst_recon <= 1e-12});
  checks.push_back({"rayleigh.delta_cross_route", worst_cross, 1e-10, worst_cross <= 1e-10});
  checks.push_back({"rayleigh.product_identity", worst_prod, 1e-10, worst_prod <= 1e-10});
}

void pm_checks(const Problem& pr, std::mt19937_64& rng, std::vector<Check>& checks) {
  const HalfSpaceConstants& c = pr.constants;
  const TransformData& td = pr.transform;
  std::uniform_real_distribution<double> ux(0.0, c.H);
  // kernel coefficient identity
  GreenKernelParts parts{td, c};
  double worst_abc = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double x = ux(rng), y = ux(rng);
    const Mat2d lhs = parts.A(x) + parts.B(y) + (td.c_I * (y - x) / (2.0 * c.mu_I)) * parts.C();
    worst_abc = std::max(worst_abc, (lhs - Mat2d::Identity()).cwiseAbs().maxCoeff());
  }
  checks.push_back({"pm.kernel_coefficient_identity", worst_abc, 1e-14, worst_abc <= 1e-14});

  // diagonal conditions and the background equation for the kernel columns
  double worst_diag = 0.0, worst_deriv = 0.0, worst_ode = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double x = ux(rng), y = std::min(c.H, ux(rng) + 1e-3);
    const Complex xi = random_off_cut_point(rng, c, 3.0);
    const QuasiMomenta q = quasi_momenta({xi, SheetTag{+1, +1}, CutSide::Below}, c);
    worst_diag = std::max(worst_diag, green_kernel(x, x, q, td, c).cwiseAbs().maxCoeff());
    const double h = 1e-6;
    const Mat2c fd = (green_kernel(x + h, x, q, td, c) - green_kernel(x - h, x, q, td, c)) /
                     (2.0 * h);
    worst_deriv = std::max(worst_deriv, (fd - Mat2c::Identity()).cwiseAbs().maxCoeff());
    if (x < y) {
      const double hh = 1e-4;
      const Mat2c g0 = green_kernel(x, y, q, td, c);
      const Mat2c gp = green_kernel(x + hh, y, q, td, c);
      const Mat2c gm = green_kernel(x - hh, y, q, td, c);
      const Mat2c second = (gp - 2.0 * g0 + gm) / (hh * hh);
      const Mat2c resid = -second + background_potential(x, td, c).cast<Complex>() * g0 +
                          xi * xi * g0;
      worst_ode = std::max(worst_ode,
                           resid.cwiseAbs().maxCoeff() /
                               std::max(1.0, g0.cwiseAbs().maxCoeff() * std::norm(xi)));
    }
  }
  checks.push_back({"pm.kernel_vanishes_on_diagonal", worst_diag, 1e-12, worst_diag <= 1e-12});
  checks.push_back({"pm.kernel_unit_x_derivative", worst_deriv, 1e-8, worst_deriv <= 1e-8});
  checks.push_back({"pm.kernel_solves_background", worst_ode, 1e-6, worst_ode <= 1e-6});

  // iterates vs direct integration
  double worst_mode = 0.0;
  for (int k = 0; k < 8; ++k) {
    const Complex xi = random_off_cut_point(rng, c, 6.0);
    for (const SheetTag& s : kAllSheets) {
      const SpectralPoint p{xi, s, CutSide::Below};
      const auto it = volterra_solve(pr.potential, td, c, pr.theta, p, VolterraMode::Iterates,
                                     pr.volterra);
      const auto od = volterra_solve(pr.potential, td, c, pr.theta, p, VolterraMode::Ode,
                                     pr.volterra);
      const Mat2c a = it.jost_materialized(), b = od.jost_materialized();
      const double rel = (a - b).cwiseAbs().maxCoeff() /
                         std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff());
      worst_mode = std::max(worst_mode, rel);
    }
  }
  checks.push_back({"pm.iterates_vs_ode", worst_mode, 1e-8, worst_mode <= 1e-8});

  // physical-sheet deviation bound with the stated margin
  double worst_growth = 0.0;
  const double l1 = pr.potential.l1_norm();
  for (int k = 0; k < 20; ++k) {
    const Complex xi = random_off_cut_point(rng, c, 5.0);
    for (const SheetTag& s : {SheetTag{+1, +1}, SheetTag{+1, -1}}) {
      const SpectralPoint p{xi, s, CutSide::Below};
      const QuasiMomenta q = quasi_momenta(p, c);
      const auto fr = volterra_solve(pr.potential, td, c, pr.theta, p, VolterraMode::Iterates,
                                     pr.volterra);
      const Mat2c f0 = unperturbed_jost_matrix(0.0, xi, q, td, c).F;
      const double diff = (fr.value0_materialized() - f0).cwiseAbs().maxCoeff();
      const double bound = std::abs(xi) * std::exp(c.H * q.qp.imag()) *
                           std::exp(-c.H * q.qs.imag()) *
                           std::exp(l1 / std::max(1.0, std::abs(xi)));
      worst_growth = std::max(worst_growth, diff / (10.0 * bound));
    }
  }
  checks.push_back({"pm.physical_sheet_deviation_bound", worst_growth, 1.0, worst_growth <= 1.0});
}

void spectral_checks(const Problem& pr, std::vector<Check>& checks) {
  // winding additivity on a simple analytic target
  TargetFn poly = [](Complex z, CutSide) {
    return ScaledComplex::from((z - Complex(0.3, 0.2)) * (z + Complex(0.4, -0.35)));
  };
  const Rect whole{-1.0, 1.0, -1.0, 1.0};
  const int w = winding_number(poly, whole, CutGeometry::none());
  int sum = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Rect quarter{-1.0 + i, 0.0 + i, -1.0 + j, 0.0 + j};
      sum += winding_number(poly, quarter, CutGeometry::none());
    }
  checks.push_back({"spectral.winding_additivity", double(std::abs(w - sum)), 0.0, w == sum});
  checks.push_back({"spectral.winding_total", double(w), 2.0, w == 2});
  (void)pr;
}

void analysis_checks(const Problem& pr, std::mt19937_64& rng, std::vector<Check>& checks) {
  const HalfSpaceConstants& c = pr.constants;
  double worst_gamma = 0.0;
  for (const SheetTag& s : kAllSheets)
    for (int k = 0; k < 100; ++k) {
      const SpectralPoint p{random_off_cut_point(rng, c, 4.0), s, CutSide::Below};
      const QuasiMomenta q = quasi_momenta(p, c);
      worst_gamma = std::max(worst_gamma,
                             std::abs(gamma_bound(p, c) - gamma_max_formula(q)));
    }
  checks.push_back({"analysis.gamma_formulas_agree", worst_gamma, 1e-12, worst_gamma <= 1e-12});

  // scaled evaluation against the direct product in a safe range
  const FEvaluator ev = displacement_evaluator(pr.profile);
  double worst_log = 0.0;
  for (int k = 0; k < 10; ++k) {
    const Complex xi = random_off_cut_point(rng, c, 3.0);
    const ScaledComplex F = ev.F(xi);
    const Complex direct = F.to_complex();
    if (std::isfinite(std::abs(direct)) && std::abs(direct) > 0.0)
      worst_log = std::max(worst_log, std::abs(std::log(std::abs(direct)) - F.log_abs()));
  }
  checks.push_back({"analysis.scaled_log_consistency", worst_log, 1e-8, worst_log <= 1e-8});
}

}  // namespace

int run_verify(const RunConfig& cfg) {
  std::vector<Check> checks;
  Problem pr;
  try {
    pr = build_problem(cfg);
  } catch (const std::invalid_argument& e) {
    const std::string what = e.what();
    if (what.find("unimodularity") != std::string::npos) {
      checks.push_back({"medium.transform_unimodular", 1.0, 1e-12, false});
      auto out = open_output(cfg, "verify.json");
      json j;
      j["config_hash"] = config_hash(cfg);
      j["checks"] = json::array();
      for (const auto& ch : checks) j["checks"].push_back(check_json(ch));
      j["pass"] = false;
      out << j.dump(2) << "\n";
      std::cerr << "verify: FAIL (unimodularity)\n";
      return 1;
    }
    std::cerr << "input error: " << what << "\n";
    return 2;
  }

  std::mt19937_64 rng(cfg.seed);
  medium_checks(pr, checks);
  riemann_checks(pr, rng, checks);
  rayleigh_checks(pr, rng, checks);
  pm_checks(pr, rng, checks);
  spectral_checks(pr, checks);
  analysis_checks(pr, rng, checks);

  bool all = true;
  for (const auto& ch : checks) all = all && ch.pass;

  auto out = open_output(cfg, "verify.json");
  json j;
  j["config_hash"] = config_hash(cfg);
  j["seed"] = cfg.seed;
  j["checks"] = json::array();
  for (const auto& ch : checks) j["checks"].push_back(check_json(ch));
  j["pass"] = all;
  out << j.dump(2) << "\n";

  for (const auto& ch : checks)
    std::cout << (ch.pass ? "pass " : "FAIL ") << ch.name << " (measured " << ch.measured
              << ", tol " << ch.tolerance << ")\n";
  return all ? 0 : 1;
}

namespace {

std::vector<ResonanceRecord> locate_roots(const Problem& pr, const RunConfig& cfg,
                                          const Rect& rect, const std::string& target,
                                          const std::string& sheet_name) {
  const bool use_pm = !pr.potential.is_zero();
  const FEvaluator ev = use_pm
                            ? pm_evaluator(pr.potential, pr.transform, pr.constants, pr.theta,
                                           pr.mode, pr.volterra)
                            : displacement_evaluator(pr.profile);
  const auto radii = branch_radii(pr.constants);
  std::vector<ResonanceRecord> recs;
  if (target == "F") {
    TargetFn f = [&](Complex z, CutSide) { return ev.F(z); };
    recs = find_zeros(f, rect, CutGeometry::none());
    for (auto& r : recs)
      if (r.kind != ZeroKind::Cluster)
        r = classify(
            r, [&](Complex z, SheetTag s) { return ev.delta(z, s, CutSide::Below); },
            ev.local_log_scale, cfg.tol("classify_rel", 1e-8));
  } else {
    const SheetTag sheet = SheetTag::parse(sheet_name);
    TargetFn f = [&](Complex z, CutSide side) { return ev.delta(z, sheet, side); };
    recs = find_zeros(f, rect, CutGeometry::sheet(radii.r_minus));
    for (auto& r : recs) {
      r.sheet = sheet.str();
      r.kind = sheet.physical() ? ZeroKind::Eigenvalue : ZeroKind::Resonance;
    }
  }
  return recs;
}

void write_roots_csv(std::ofstream& out, const std::vector<ResonanceRecord>& recs) {
  out << "re_xi,im_xi,sheet,multiplicity,residual,classification\n";
  for (const auto& r : recs)
    out << r.xi.real() << "," << r.xi.imag() << "," << r.sheet << "," << r.multiplicity << ","
        << r.residual << "," << r.kind_str() << "\n";
}

}  // namespace

int run_roots(const RunConfig& cfg) {
  Problem pr;
  try {
    pr = build_problem(cfg);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  if (!(cfg.roots_rect.width() > 0.0) || !(cfg.roots_rect.height() > 0.0)) {
    std::cerr << "input error: roots.rect must be a nonempty rectangle\n";
    return 2;
  }
  auto out = open_output(cfg, "roots.csv");
  out << hash_line(cfg) << "\n";
  const auto recs = locate_roots(pr, cfg, cfg.roots_rect, cfg.roots_target, cfg.roots_sheet);
  write_roots_csv(out, recs);
  for (const auto& r : recs)
    if (r.kind == ZeroKind::Cluster) std::cerr << "warning: cluster record near " << r.xi << "\n";
  return 0;
}

int run_analyze(const RunConfig& cfg) {
  Problem pr;
  try {
    pr = build_problem(cfg);
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  const bool use_pm = !pr.potential.is_zero();
  // analysis sweeps many evaluations; when the mode is left to the library,
  // the direct-integration solver is the economical choice
  const VolterraMode mode = pr.mode == VolterraMode::Auto ? VolterraMode::Ode : pr.mode;
  const FEvaluator ev = use_pm
                            ? pm_evaluator(pr.potential, pr.transform, pr.constants, pr.theta,
                                           mode, pr.volterra)
                            : displacement_evaluator(pr.profile);

  // growth along the real axis, a diagonal, and the imaginary axis
  std::vector<double> radii = cfg.analyze_radii;
  std::vector<double> grow_radii;
  const double rmax = std::min(50.0 / pr.constants.H, radii.empty() ? 40.0 : radii.back() * 2);
  for (int i = 0; i < 14; ++i) grow_radii.push_back(rmax * (0.3 + 0.05 * i));
  GrowthReport growth = growth_fit(ev, pr.constants.H,
                                   {Complex(1.0, 0.0), Complex(1.0, 1.0), Complex(0.0, 1.0)},
                                   grow_radii);

  std::vector<double> ys;
  for (int i = 0; i < 12; ++i) ys.push_back(rmax * (0.35 + 0.05 * i));
  CartwrightReport cart = cartwright_indices(ev, pr.constants.H, ys);

  const double R = cfg.count_search_radius;
  TargetFn f = [&](Complex z, CutSide) { return ev.F(z); };
  const Rect region{-R, R, -R, R};
  std::vector<ResonanceRecord> zeros = find_zeros(f, region, CutGeometry::none());
  for (auto& r : zeros)
    if (r.kind != ZeroKind::Cluster)
      r = classify(
          r, [&](Complex z, SheetTag s) { return ev.delta(z, s, CutSide::Below); },
          ev.local_log_scale, cfg.tol("classify_rel", 1e-8));
  int winding_total = 0;
  try {
    winding_total = winding_number(f, region, CutGeometry::none());
  } catch (const ContourContact&) {
    winding_total = -1;
  }

  CountReport counts = levinson_counts(zeros, cfg.count_radii, pr.constants.H);
  counts.winding_total = winding_total;
  ForbiddenReport forb = forbidden_domain_check(zeros, pr.constants.H);

  // emit
  json j;
  j["config_hash"] = config_hash(cfg);
  j["seed"] = cfg.seed;
  j["growth"] = json::array();
  for (const auto& r : growth.rays) {
    j["growth"].push_back(json{{"direction_re", r.direction.real()},
                               {"direction_im", r.direction.imag()},
                               {"slope", r.slope},
                               {"prefactor_exponent", r.prefactor_exponent},
                               {"windows_agree", r.windows_agree},
                               {"pass_8H", r.pass_8H},
                               {"pass_12H", r.pass_12H}});
  }
  j["cartwright"] = {{"rho_plus_hat", cart.rho_plus_hat},
                     {"rho_minus_hat", cart.rho_minus_hat},
                     {"poisson_integrals", cart.poisson_integrals},
                     {"increments_decreasing", cart.increments_decreasing}};
  j["counts"] = {{"radii", counts.radii},
                 {"n_plus", counts.n_plus},
                 {"n_minus", counts.n_minus},
                 {"n_axis", counts.n_axis},
                 {"bound", counts.bound},
                 {"winding_total", counts.winding_total},
                 {"list_total", counts.list_total},
                 {"monotone", counts.monotone},
                 {"convention", "half-planes keyed to the sign of Re xi"}};
  j["forbidden_domain"] = {{"c_fit", forb.c_fit},
                           {"violations", forb.violations},
                           {"spread_ok", forb.spread_ok}};
  auto out = open_output(cfg, "analyze.json");
  out << j.dump(2) << "\n";

  auto samples = open_output(cfg, "growth_samples.csv");
  samples << hash_line(cfg) << "\n";
  samples << "direction_re,direction_im,radius,log_abs_F\n";
  for (const auto& r : growth.rays)
    for (const auto& [rad, la] : r.samples)
      samples << r.direction.real() << "," << r.direction.imag() << "," << rad << "," << la
              << "\n";

  auto zcsv = open_output(cfg, "zeros.csv");
  zcsv << hash_line(cfg) << "\n";
  write_roots_csv(zcsv, zeros);

  const bool ok = growth.pass_8H() && growth.pass_12H() &&
                  cart.pass(pr.constants.H) && counts.within_bound() && counts.monotone &&
                  forb.pass();
  return ok ? 0 : 1;
}

}  // namespace cli
}  // namespace rayres
