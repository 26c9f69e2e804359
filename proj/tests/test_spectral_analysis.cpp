#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rayres/analysis.hpp"

using namespace rayres;

namespace {
const HalfSpaceConstants kC{1.0, 1.0, 1.0, 1.0};
const OdeOptions kTight{1e-12, 1e-14};

TargetFn poly_target(std::vector<std::pair<Complex, int>> zeros) {
  return [zeros = std::move(zeros)](Complex z, CutSide) {
    Complex v{1.0, 0.0};
    for (const auto& [z0, m] : zeros)
      for (int k = 0; k < m; ++k) v *= (z - z0);
    return ScaledComplex::from(v);
  };
}
}  // namespace

TEST_CASE("winding of elementary targets") {
  CHECK(winding_number(poly_target({{Complex(0, 0), 1}}), Rect{-0.5, 0.5, -0.5, 0.5},
                       CutGeometry::none()) == 1);
  CHECK(winding_number(poly_target({{Complex(0, 0), 1}}), Rect{1.0, 2.0, 1.0, 2.0},
                       CutGeometry::none()) == 0);
  CHECK(winding_number(poly_target({{Complex(0.2, 0.1), 3}}), Rect{-1, 1, -1, 1},
                       CutGeometry::none()) == 3);
}

TEST_CASE("winding additivity over a partition") {
  const auto f = poly_target({{Complex(0.3, 0.2), 1}, {Complex(-0.4, -0.35), 1},
                              {Complex(0.1, -0.6), 2}});
  const Rect whole{-1.0, 1.0, -1.0, 1.0};
  const int w = winding_number(f, whole, CutGeometry::none());
  int sum = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      sum += winding_number(f, Rect{-1.0 + i, 0.0 + i, -1.0 + j, 0.0 + j}, CutGeometry::none());
  CHECK(w == 4);
  CHECK(sum == w);
}

TEST_CASE("winding detects a zero sitting on the contour") {
  const auto f = poly_target({{Complex(0.5, 0.0), 1}});
  CHECK_THROWS_AS(winding_number(f, Rect{0.5, 1.5, -0.5, 0.5}, CutGeometry::none()),
                  ContourContact);
}

TEST_CASE("winding of the surface-wave determinant near its root") {
  const auto prof = make_constant_profile(kC);
  const auto ev = displacement_evaluator(prof, kTight);
  TargetFn f = [&](Complex z, CutSide side) { return ev.delta(z, SheetTag{+1, +1}, side); };
  const double xr = oracles::rayleigh_root_xi(kC);
  CHECK(winding_number(f, Rect{xr - 0.1, xr + 0.1, -0.1, 0.1}, CutGeometry::none()) == 1);
  CHECK(winding_number(f, Rect{2.0, 3.0, 0.5, 1.5}, CutGeometry::none()) == 0);
}

TEST_CASE("zero search resolves simple, multiple and near-axis roots") {
  const auto f = poly_target(
      {{Complex(0.4, 0.0), 2}, {Complex(-0.3, 0.25), 1}, {Complex(0.1, -0.4), 1}});
  const auto recs = find_zeros(f, Rect{-1, 1, -1, 1}, CutGeometry::none());
  REQUIRE(recs.size() == 3);
  int total = 0;
  for (const auto& r : recs) total += r.multiplicity;
  CHECK(total == 4);
  bool found_double = false;
  for (const auto& r : recs)
    if (r.multiplicity == 2 && std::abs(r.xi - Complex(0.4, 0.0)) < 1e-7) found_double = true;
  CHECK(found_double);
}

TEST_CASE("zero search on the physical-sheet determinant region") {
  const auto prof = make_constant_profile(kC);
  const auto ev = displacement_evaluator(prof, kTight);
  const auto radii = branch_radii(kC);
  TargetFn f = [&](Complex z, CutSide side) { return ev.delta(z, SheetTag{+1, +1}, side); };
  const auto recs = find_zeros(f, Rect{0.8, 1.4, -0.1, 0.1}, CutGeometry::sheet(radii.r_minus));
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].multiplicity == 1);
  CHECK(std::abs(recs[0].xi - Complex(oracles::rayleigh_root_xi(kC), 0.0)) <= 1e-6);
  CHECK(recs[0].residual <= 1e-9);

  CHECK(find_zeros(f, Rect{2.0, 2.5, 0.4, 0.9}, CutGeometry::sheet(radii.r_minus)).empty());
}

TEST_CASE("zero search against a dense modulus scan on a lower sheet") {
  // perturbed medium moves the mixed-sheet roots off the axis; the scan
  // provides an independent location estimate
  const auto prof = make_polynomial_bump_profile(kC, 0.15, 0.1);
  const auto ev = displacement_evaluator(prof, OdeOptions{1e-11, 1e-13});
  const SheetTag sheet{+1, -1};
  TargetFn f = [&](Complex z, CutSide side) { return ev.delta(z, sheet, side); };
  const Rect region{0.35, 0.75, -0.2, -0.003};  // off the cut line
  const auto recs = find_zeros(f, region, CutGeometry::sheet(branch_radii(kC).r_minus));

  // scan
  const int nx = 90, ny = 60;
  double best = 1e300;
  Complex argbest;
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j) {
      const Complex z(region.x0 + i * region.width() / nx,
                      region.y0 + j * region.height() / ny);
      const double v = std::exp(f(z, CutSide::Below).log_abs());
      if (v < best) {
        best = v;
        argbest = z;
      }
    }
  REQUIRE(!recs.empty());
  double closest = 1e300;
  for (const auto& r : recs) closest = std::min(closest, std::abs(r.xi - argbest));
  CHECK(closest <= 2.0 * region.width() / nx + 1e-6);
}

TEST_CASE("classification against the per-sheet determinants") {
  const auto prof = make_constant_profile(kC);
  const auto ev = displacement_evaluator(prof, kTight);
  const double xr = oracles::rayleigh_root_xi(kC);
  auto delta = [&](Complex z, SheetTag s) { return ev.delta(z, s, CutSide::Below); };

  ResonanceRecord rec;
  rec.xi = Complex(xr, 0.0);
  rec.multiplicity = 2;
  const auto cls = classify(rec, delta, ev.local_log_scale, 1e-8);
  CHECK(cls.kind == ZeroKind::Eigenvalue);
  CHECK(cls.sheet.find("++") != std::string::npos);

  ResonanceRecord res;
  res.xi = Complex(0.5, 0.0);
  const auto crs = classify(res, delta, ev.local_log_scale, 1e-8);
  CHECK(crs.kind == ZeroKind::Resonance);
  CHECK(crs.sheet.find("+-") != std::string::npos);

  ResonanceRecord bogus;
  bogus.xi = Complex(2.0, 1.0);
  CHECK_THROWS_WITH_AS(classify(bogus, delta, ev.local_log_scale, 1e-8),
                       doctest::Contains("inconsistent zero"), std::runtime_error);
}

TEST_CASE("conjugate-symmetric partner of a classified zero") {
  const auto prof = make_polynomial_bump_profile(kC, 0.15, 0.1);
  const auto ev = displacement_evaluator(prof, OdeOptions{1e-11, 1e-13});
  const SheetTag sheet{+1, -1};
  TargetFn f = [&](Complex z, CutSide side) { return ev.delta(z, sheet, side); };
  const auto recs = find_zeros(f, Rect{0.35, 0.75, -0.2, -0.003},
                               CutGeometry::sheet(branch_radii(kC).r_minus));
  REQUIRE(!recs.empty());
  const SpectralPoint partner =
      conjugate({recs[0].xi, sheet, CutSide::Below}, kC);
  const double la = ev.delta(partner.xi, partner.sheet, CutSide::Below).log_abs();
  const double scale = ev.local_log_scale(partner.xi);
  CHECK(la <= scale + std::log(1e-6));
}

TEST_CASE("kernel growth weight on the four sheets") {
  CHECK(gamma_bound({{3.0, 0.7}, SheetTag{+1, +1}, CutSide::Below}, kC) == 0.0);
  CHECK(gamma_bound({{0.3, 2.0}, SheetTag{+1, -1}, CutSide::Below}, kC) == 0.0);
  const double g = gamma_bound({{2.0, 0.0}, SheetTag{-1, -1}, CutSide::Below}, kC);
  CHECK(g == doctest::Approx(3.8297084).epsilon(1e-6));

  std::mt19937_64 rng(51);
  for (const SheetTag& s : kAllSheets)
    for (int k = 0; k < 100; ++k) {
      const SpectralPoint p{oracles::random_off_cut(rng, kC, 4.0), s, CutSide::Below};
      const QuasiMomenta q = quasi_momenta(p, kC);
      CHECK(gamma_bound(p, kC) == doctest::Approx(gamma_max_formula(q)).epsilon(1e-12));
      CHECK(zeta_p(q) >= 0.0);
      CHECK(zeta_p_minus_s(q) >= 0.0);
      if (s.sp < 0) CHECK(zeta_p_minus_s(q) == 0.0);
    }
}

TEST_CASE("growth fit of the homogeneous product function") {
  const auto prof = make_constant_profile(kC);
  const auto ev = displacement_evaluator(prof, OdeOptions{1e-11, 1e-13});
  std::vector<double> radii;
  for (int i = 0; i < 12; ++i) radii.push_back(50.0 * (0.35 + 0.05 * i));
  const auto rep = growth_fit(ev, kC.H, {Complex(1, 0), Complex(0, 1)}, radii);
  REQUIRE(rep.rays.size() == 2);
  CHECK(rep.rays[0].slope <= 8.0 * kC.H * 1.05);
  CHECK(rep.rays[0].pass_8H);
  CHECK(rep.rays[0].pass_12H);
  CHECK(std::abs(rep.rays[1].slope) <= 0.05 * 8.0 * kC.H);  // imaginary ray
  CHECK(rep.rays[0].windows_agree);
  CHECK_THROWS(growth_fit(ev, kC.H, {Complex(1, 0)}, {80.0}));
}

TEST_CASE("index estimates and the Poisson tail of the homogeneous medium") {
  const auto prof = make_constant_profile(kC);
  const auto ev = displacement_evaluator(prof, OdeOptions{1e-11, 1e-13});
  std::vector<double> ys;
  for (int i = 0; i < 10; ++i) ys.push_back(45.0 * (0.4 + 0.06 * i));
  const auto rep = cartwright_indices(ev, kC.H, ys);
  CHECK(rep.rho_plus_hat <= 8.0 * kC.H * 1.05);
  CHECK(rep.rho_minus_hat <= 8.0 * kC.H * 1.05);
  CHECK(rep.pass(kC.H));
  REQUIRE(rep.poisson_integrals.size() == 3);
  CHECK(rep.increments_decreasing);
}

TEST_CASE("zero counting report bookkeeping") {
  CHECK(levinson_counts({}, {1.0, 2.0}, 1.0).list_total == 0);

  std::vector<ResonanceRecord> zeros;
  for (double x : {0.5, 1.0, -0.7, 2.5}) {
    ResonanceRecord r;
    r.xi = Complex(x, 0.3 * x);
    zeros.push_back(r);
  }
  const auto rep = levinson_counts(zeros, {1.0, 2.0, 4.0}, 1.0);
  CHECK(rep.monotone);
  CHECK(rep.n_plus.back() == 3);
  CHECK(rep.n_minus.back() == 1);
  CHECK(rep.bound[0] == doctest::Approx(8.0 / kPi));
  CHECK(rep.outside_sectors.at(0.1).back() == 4);  // all near the real axis
  CHECK(rep.within_bound());
}

TEST_CASE("forbidden-domain fit and violations") {
  // zeros riding exactly on the boundary curve: constant contributions
  std::vector<ResonanceRecord> on_curve;
  for (double x : {0.5, 1.0, 2.0, 4.0}) {
    ResonanceRecord r;
    const double mod = std::exp(2.0 * x);
    const double im = std::sqrt(mod * mod - x * x);
    r.xi = Complex(x, im);
    on_curve.push_back(r);
  }
  const auto rep = forbidden_domain_check(on_curve, 1.0);
  CHECK(rep.c_fit == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.violations.empty());
  CHECK(rep.spread_ok);

  // real-axis zeros: contributions decay, nothing flags
  std::vector<ResonanceRecord> real_axis;
  for (double x : {0.5, 1.5, 3.0, 6.0}) {
    ResonanceRecord r;
    r.xi = Complex(x, 0.0);
    real_axis.push_back(r);
  }
  const auto rep2 = forbidden_domain_check(real_axis, 1.0);
  CHECK(rep2.violations.empty());

  // an outlier among the large-real zeros is flagged
  std::vector<ResonanceRecord> bad = on_curve;
  ResonanceRecord out;
  out.xi = Complex(4.0, 1e5 * std::exp(8.0));
  bad.push_back(out);
  CHECK_FALSE(forbidden_domain_check(bad, 1.0).violations.empty());
}
