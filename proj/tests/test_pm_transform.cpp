#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rayres/pm_transform.hpp"
#include "rayres/analysis.hpp"
#include "rayres/rayleigh_ode.hpp"

using namespace rayres;

namespace {
const HalfSpaceConstants kC{1.0, 1.0, 1.0, 1.0};

PotentialSpec bump12() {
  Mat2d amp = Mat2d::Zero();
  amp(0, 1) = 1.0;
  return PotentialSpec::bump(amp, 0.5, 1.0, kC.H, 0.25, false);
}

TransformData random_unimodular(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  const double g11 = 1.0 + 0.3 * u(rng);
  const double g12 = 0.4 * u(rng);
  const double g21 = u(rng);
  const double g22 = (1.0 + g12 * g21) / g11;
  return TransformData::from_matrix(kC, g11, g12, g21, g22);
}
}  // namespace

TEST_CASE("Robin matrix of the homogeneous medium") {
  const auto prof = make_constant_profile(kC);
  const auto t = ThetaMatrix::from_profile(prof);
  CHECK(t.theta3 == doctest::Approx(0.0));
  CHECK(t.theta2 == doctest::Approx(1.0 / 6.0));
  CHECK(t.theta1 == doctest::Approx(1.0));
  CHECK(t.xi2_coefficient == doctest::Approx(2.0));
  const Mat2c m = t.at(Complex(2.0, 0.0));
  CHECK(m(0, 1).real() == doctest::Approx(1.0 / 6.0));
  CHECK(m(1, 0).real() == doctest::Approx(2.0 * 4.0 - 1.0));
  CHECK(m(1, 1) == Complex(0.0, 0.0));
}

TEST_CASE("background potential structure and values") {
  const auto td = TransformData::identity_anchor(kC);
  // identity data kill three coupling entries
  const Mat2d q0 = background_potential(0.3, td, kC);
  CHECK(q0(1, 0) == doctest::Approx(0.0));
  CHECK(q0(0, 0) == doctest::Approx(-1.0));
  CHECK(q0(1, 1) == doctest::Approx(-1.0 / 3.0));
  // at the anchor depth the matrix is diagonal
  const Mat2d qH = background_potential(kC.H, td, kC);
  CHECK(qH(0, 1) == doctest::Approx(0.0));
  // frozen value at the surface
  const Mat2d qs = background_potential(0.0, td, kC);
  CHECK(qs(0, 1) == doctest::Approx(2.0 / 9.0));
}

TEST_CASE("kernel coefficients resolve the unimodular identity") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    const auto td = random_unimodular(rng);
    GreenKernelParts parts{td, kC};
    std::uniform_real_distribution<double> ux(0.0, kC.H);
    const double x = ux(rng), y = ux(rng);
    const Mat2d lhs =
        parts.A(x) + parts.B(y) + (td.c_I * (y - x) / (2.0 * kC.mu_I)) * parts.C();
    CHECK((lhs - Mat2d::Identity()).cwiseAbs().maxCoeff() <= 1e-14);
  }
}

TEST_CASE("kernel diagonal conditions") {
  std::mt19937_64 rng(29);
  const auto td = TransformData::surface_normalized(kC);
  std::uniform_real_distribution<double> ux(0.0, kC.H);
  for (int k = 0; k < 50; ++k) {
    const double x = ux(rng);
    const Complex xi = oracles::random_off_cut(rng, kC, 3.0);
    const QuasiMomenta q = quasi_momenta({xi, SheetTag{+1, +1}, CutSide::Below}, kC);
    CHECK(green_kernel(x, x, q, td, kC).cwiseAbs().maxCoeff() <= 1e-12);
    const double h = 1e-6;
    const Mat2c fd =
        (green_kernel(x + h, x, q, td, kC) - green_kernel(x - h, x, q, td, kC)) / (2.0 * h);
    CHECK((fd - Mat2c::Identity()).cwiseAbs().maxCoeff() <= 1e-8);
  }
}

TEST_CASE("kernel columns solve the background equation") {
  std::mt19937_64 rng(31);
  const auto td = TransformData::surface_normalized(kC);
  for (int k = 0; k < 30; ++k) {
    std::uniform_real_distribution<double> ux(0.05, 0.4), uy(0.6, 1.0);
    const double x = ux(rng), y = uy(rng);
    const Complex xi = oracles::random_off_cut(rng, kC, 2.0);
    const QuasiMomenta q = quasi_momenta({xi, SheetTag{+1, +1}, CutSide::Below}, kC);
    const double h = 1e-4;
    const Mat2c g0 = green_kernel(x, y, q, td, kC);
    const Mat2c second =
        (green_kernel(x + h, y, q, td, kC) - 2.0 * g0 + green_kernel(x - h, y, q, td, kC)) /
        (h * h);
    const Mat2c resid =
        -second + background_potential(x, td, kC).cast<Complex>() * g0 + xi * xi * g0;
    CHECK(resid.cwiseAbs().maxCoeff() <=
          1e-6 * std::max(1.0, g0.cwiseAbs().maxCoeff() * std::norm(xi)));
  }
}

TEST_CASE("kernel short-distance expansion") {
  const auto td = TransformData::surface_normalized(kC);
  const Complex xi(1.3, 0.8);
  const QuasiMomenta q = quasi_momenta({xi, SheetTag{+1, +1}, CutSide::Below}, kC);
  for (double d : {1e-3, 1e-4}) {
    const double x = 0.4, y = x + d;
    const Mat2c g = green_kernel(x, y, q, td, kC);
    CHECK((g - (x - y) * Mat2c::Identity()).cwiseAbs().maxCoeff() <= 10.0 * d * d);
  }
}

TEST_CASE("oscillation-removed kernel matches the plain kernel") {
  std::mt19937_64 rng(37);
  const auto td = TransformData::surface_normalized(kC);
  for (int k = 0; k < 20; ++k) {
    std::uniform_real_distribution<double> ux(0.0, 1.0);
    double x = ux(rng), y = ux(rng);
    if (x > y) std::swap(x, y);
    const Complex xi = oracles::random_off_cut(rng, kC, 4.0);
    for (const SheetTag& s : kAllSheets) {
      const QuasiMomenta q = quasi_momenta({xi, s, CutSide::Below}, kC);
      const Mat2c a = faddeev_kernel(x, y, q, td, kC);
      const Mat2c b = green_kernel(x, y, q, td, kC) *
                      std::exp(-Complex(0, 1) * (x - y) * q.qp);
      CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()));
      const double h = 1e-5;
      const Mat2c fd = (green_kernel(x + h, y, q, td, kC) - green_kernel(x - h, y, q, td, kC)) /
                       (2.0 * h);
      const Mat2c gx = green_kernel_dx(x, y, q, td, kC);
      CHECK((fd - gx).cwiseAbs().maxCoeff() <= 1e-7 * std::max(1.0, gx.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("zero potential returns the deep matrix solution in both modes") {
  const auto prof = make_constant_profile(kC);
  const auto theta = ThetaMatrix::from_profile(prof);
  const auto td = TransformData::surface_normalized(kC);
  const auto V0 = PotentialSpec::zero(kC.H);
  const SpectralPoint p{{1.7, 0.8}, SheetTag{+1, +1}, CutSide::Below};
  const QuasiMomenta q = quasi_momenta(p, kC);
  const Mat2c f0 = unperturbed_jost_matrix(0.0, p.xi, q, td, kC).F;
  for (auto mode : {VolterraMode::Iterates, VolterraMode::Ode}) {
    const auto fr = volterra_solve(V0, td, kC, theta, p, mode);
    CHECK((fr.value0_materialized() - f0).cwiseAbs().maxCoeff() <=
          1e-10 * f0.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("zero-potential Robin matrix matches the hand-built identity-data form") {
  // closed form assembled from the oscillation-removed solution and its
  // derivative, identity transform data
  const auto prof = make_constant_profile(kC);
  const auto theta = ThetaMatrix::from_profile(prof);
  const auto td = TransformData::identity_anchor(kC);
  const auto V0 = PotentialSpec::zero(kC.H);
  const Complex xi(1.9, 0.3);
  const SpectralPoint p{xi, SheetTag{+1, +1}, CutSide::Below};
  const QuasiMomenta q = quasi_momenta(p, kC);
  const auto fr = volterra_solve(V0, td, kC, theta, p, VolterraMode::Iterates);

  const Complex i{0.0, 1.0};
  const double kappa = kC.mu_I / (kC.omega * kC.omega);
  const double g21_0 = td.g21_at(0.0);
  Mat2c F0, F0p;
  F0 << g21_0 + i * q.qp * kappa, -kappa * xi, Complex(1.0, 0.0), Complex(0.0, 0.0);
  F0p << -0.5 * td.c_I + i * q.qp * (g21_0 + i * q.qp * kappa), -i * q.qs * kappa * xi,
      i * q.qp, Complex(0.0, 0.0);
  const Mat2c expected = F0p + theta.at(xi) * F0;
  CHECK((fr.jost_materialized() - expected).cwiseAbs().maxCoeff() <=
        1e-10 * expected.cwiseAbs().maxCoeff());
}

TEST_CASE("solver modes agree on the bump potential") {
  const auto prof = make_constant_profile(kC);
  const auto theta = ThetaMatrix::from_profile(prof);
  const auto td = TransformData::surface_normalized(kC);
  const auto V = bump12();
  std::mt19937_64 rng(41);
  for (int k = 0; k < 5; ++k) {
    const Complex xi = oracles::random_off_cut(rng, kC, 8.0);
    for (const SheetTag& s : kAllSheets) {
      const SpectralPoint p{xi, s, CutSide::Below};
      const auto a = volterra_solve(V, td, kC, theta, p, VolterraMode::Iterates);
      const auto b = volterra_solve(V, td, kC, theta, p, VolterraMode::Ode);
      const Mat2c am = a.jost_materialized(), bm = b.jost_materialized();
      CHECK((am - bm).cwiseAbs().maxCoeff() <=
            1e-8 * std::max(am.cwiseAbs().maxCoeff(), bm.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("doubling the quadrature changes nothing at tolerance") {
  const auto prof = make_constant_profile(kC);
  const auto theta = ThetaMatrix::from_profile(prof);
  const auto td = TransformData::surface_normalized(kC);
  const auto V = bump12();
  const SpectralPoint p{{3.0, 1.0}, SheetTag{-1, -1}, CutSide::Below};
  VolterraOptions coarse;
  VolterraOptions fine;
  fine.nodes_per_panel = 64;
  const auto a = volterra_solve(V, td, kC, theta, p, VolterraMode::Iterates, coarse);
  const auto b = volterra_solve(V, td, kC, theta, p, VolterraMode::Iterates, fine);
  CHECK((a.jost_materialized() - b.jost_materialized()).cwiseAbs().maxCoeff() <=
        1e-10 * b.jost_materialized().cwiseAbs().maxCoeff());
}

TEST_CASE("Robin assembly is linear and trivial without coupling") {
  ThetaMatrix zero;
  zero.theta1 = zero.theta2 = zero.theta3 = 0.0;
  zero.xi2_coefficient = 0.0;
  const Mat2c eye = Mat2c::Identity();
  CHECK((jost_function(Mat2c::Zero(), eye, zero, Complex(2.0, 0.0)) - eye).cwiseAbs().maxCoeff() ==
        0.0);
  const auto prof = make_constant_profile(kC);
  const auto theta = ThetaMatrix::from_profile(prof);
  Mat2c v = Mat2c::Random(), d = Mat2c::Random();
  const Mat2c once = jost_function(v, d, theta, Complex(1.0, 0.5));
  const Mat2c twice = jost_function((2.0 * v).eval(), (2.0 * d).eval(), theta, Complex(1.0, 0.5));
  CHECK((twice - 2.0 * once).cwiseAbs().maxCoeff() <= 1e-14 * once.cwiseAbs().maxCoeff());
}

TEST_CASE("bridge factors carry the right determinant") {
  const auto prof = make_constant_profile(kC);
  const Complex xi(1.7, 0.0);
  const Mat2c a1 = bridge_A1(xi, kC, prof.mu0(), prof.mu0_dx());
  const Mat2c a2 = bridge_A2(xi, kC);
  const Complex det = (a1 * a2).determinant();
  const Complex expected = 2.0 * prof.mu0() * std::pow(kC.omega, 4) / (kC.mu_I * xi);
  CHECK(std::abs(det - expected) <= 1e-12 * std::abs(expected));

  // with a trivial transformed frame the bridge is the product of factors
  const Mat2c b = bridge_boundary_matrix(Mat2c::Identity(), xi, kC, prof.mu0(), prof.mu0_dx());
  CHECK((b - a1 * a2).cwiseAbs().maxCoeff() <= 1e-14 * b.cwiseAbs().maxCoeff());
  CHECK_THROWS_AS(
      bridge_boundary_matrix(Mat2c::Identity(), Complex(0, 0), kC, prof.mu0(), prof.mu0_dx()),
      std::invalid_argument);
}

TEST_CASE("bridged determinant reproduces the displacement-frame closed form") {
  const auto prof = make_constant_profile(kC);
  const auto theta = ThetaMatrix::from_profile(prof);
  const auto td = TransformData::surface_normalized(kC);
  const auto V0 = PotentialSpec::zero(kC.H);
  std::mt19937_64 rng(43);
  for (int k = 0; k < 25; ++k) {
    const Complex xi = oracles::random_off_cut(rng, kC, 3.0);
    const SpectralPoint p{xi, SheetTag{+1, +1}, CutSide::Below};
    const QuasiMomenta q = quasi_momenta(p, kC);
    const auto fr = volterra_solve(V0, td, kC, theta, p, VolterraMode::Iterates);
    const Complex det = bridge_determinant(fr, xi, kC, prof.mu0()).to_complex();
    const Complex closed = oracles::homogeneous_delta(xi, q, kC);
    CHECK(std::abs(det - closed) <= 1e-8 * std::max(1.0, std::abs(closed)));
  }
}

TEST_CASE("physical-sheet determinant approaches the cubic-coefficient constant") {
  const auto prof = make_constant_profile(kC);
  const auto theta = ThetaMatrix::from_profile(prof);
  const auto td = TransformData::surface_normalized(kC);
  const auto V = bump12();
  const double xi = 100.0 * branch_radii(kC).r_minus;
  const SpectralPoint p{{xi, 0.0}, SheetTag{+1, +1}, CutSide::Below};
  const auto fr = volterra_solve(V, td, kC, theta, p, VolterraMode::Auto);
  const double c0 = (prof.lambda0() + prof.mu0()) / (prof.lambda0() + 2.0 * prof.mu0());
  const double target = kC.mu_I * c0 / (kC.omega * kC.omega);
  const Complex ratio =
      (fr.jost_det() / ScaledComplex::from(std::pow(Complex(xi, 0), 3))).to_complex();
  CHECK(std::abs(ratio - target) / target <= 0.02);
}

TEST_CASE("lower-sheet determinant growth is driven by the exponential moment") {
  const auto prof = make_constant_profile(kC);
  const auto theta = ThetaMatrix::from_profile(prof);
  const auto td = TransformData::surface_normalized(kC);
  const auto V = bump12();
  for (double x : {20.0, 25.0}) {
    const SpectralPoint p{{x, 0.0}, SheetTag{-1, -1}, CutSide::Below};
    const auto fr = volterra_solve(V, td, kC, theta, p, VolterraMode::Auto);
    const double c0 = 2.0 / 3.0;
    const ScaledComplex cterm =
        ScaledComplex::from(std::pow(Complex(x, 0), 3) * kC.mu_I * c0);
    const Complex A = script_A({x, 0.0}, V, td, kC, prof.mu0());
    const Complex ratio =
        ((fr.jost_det() - cterm) / ScaledComplex::from(std::pow(Complex(x, 0), 3) * A))
            .to_complex();
    CHECK(std::abs(ratio - 1.0) <= 0.10);
  }
}

TEST_CASE("physical-sheet deviation stays within the stated envelope") {
  const auto prof = make_constant_profile(kC);
  const auto theta = ThetaMatrix::from_profile(prof);
  const auto td = TransformData::surface_normalized(kC);
  const auto V = bump12();
  const double l1 = V.l1_norm();
  std::mt19937_64 rng(47);
  for (int k = 0; k < 20; ++k) {
    const Complex xi = oracles::random_off_cut(rng, kC, 5.0);
    for (const SheetTag& s : {SheetTag{+1, +1}, SheetTag{+1, -1}}) {
      const SpectralPoint p{xi, s, CutSide::Below};
      const QuasiMomenta q = quasi_momenta(p, kC);
      const auto fr = volterra_solve(V, td, kC, theta, p, VolterraMode::Iterates);
      const Mat2c f0 = unperturbed_jost_matrix(0.0, xi, q, td, kC).F;
      const double diff = (fr.value0_materialized() - f0).cwiseAbs().maxCoeff();
      const double bound = std::abs(xi) * std::exp(kC.H * q.qp.imag()) *
                           std::exp(-kC.H * q.qs.imag()) *
                           std::exp(l1 / std::max(1.0, std::abs(xi)));
      CHECK(diff <= 10.0 * bound);
    }
  }
}

TEST_CASE("exponential moments against closed-form antiderivatives") {
  const auto prof = make_constant_profile(kC);
  const auto td = TransformData::surface_normalized(kC);
  const double mu0 = prof.mu0();
  // vanishing coupling component kills the moment
  Mat2d amp = Mat2d::Zero();
  amp(0, 0) = 1.0;
  const auto v_diag = PotentialSpec::bump(amp, 0.2, 0.9, kC.H, 0.2, false);
  CHECK(std::abs(script_A({2.0, 0.0}, v_diag, td, kC, mu0)) <= 1e-14);

  // constant coupling over the whole support
  PotentialSpec v_const = PotentialSpec::zero(kC.H);
  v_const.V = [](double x) {
    Mat2d m = Mat2d::Zero();
    if (x < 1.0) m(0, 1) = 0.7;
    return m;
  };
  const Complex xi(1.3, 0.4);
  const Complex analytic = 2.0 * kC.mu_I * kC.mu_I / (mu0 * kC.omega * kC.omega) * 0.7 *
                           (std::exp(2.0 * xi * kC.H) - 1.0) / (2.0 * xi);
  CHECK(std::abs(script_A(xi, v_const, td, kC, mu0) - analytic) <= 1e-10 * std::abs(analytic));

  // cubic-in-y coupling against the antiderivative oracle
  PotentialSpec v_poly = PotentialSpec::zero(kC.H);
  v_poly.V = [](double x) {
    Mat2d m = Mat2d::Zero();
    if (x < 1.0) m(0, 1) = x * x * (1.5 - x);
    return m;
  };
  const Complex moment = 1.5 * oracles::exp_poly_moment(xi, 2, kC.H) -
                         oracles::exp_poly_moment(xi, 3, kC.H);
  const Complex expect = 2.0 * kC.mu_I * kC.mu_I / (mu0 * kC.omega * kC.omega) * moment;
  CHECK(std::abs(script_A(xi, v_poly, td, kC, mu0) - expect) <= 1e-10 * std::abs(expect));
}

TEST_CASE("branch-tagged exponential moments with mixed components") {
  const auto prof = make_constant_profile(kC);
  const auto theta = ThetaMatrix::from_profile(prof);
  const auto td = TransformData::surface_normalized(kC);
  const double mu0 = prof.mu0();
  const Complex xi(1.1, 0.3);

  // polynomial components so every moment has a closed-form antiderivative
  PotentialSpec v = PotentialSpec::zero(kC.H);
  v.V = [](double x) {
    Mat2d m;
    if (x >= 1.0) return Mat2d::Zero().eval();
    m << x * x, 0.5 * x, 1.0 - x, 0.25;
    return m;
  };

  // a(y) = V11 g11 + V12 g12 ; b(y) = V21 g11 + V22 g12 ; here g12 = 0
  const double om2 = kC.omega * kC.omega, om4 = om2 * om2;
  const Complex m0 = oracles::exp_poly_moment(xi, 0, kC.H);
  const Complex m1 = oracles::exp_poly_moment(xi, 1, kC.H);
  const Complex m2 = oracles::exp_poly_moment(xi, 2, kC.H);

  const Complex ap_expect =
      2.0 * std::pow(kC.mu_I, 3) / (mu0 * om4) * td.g11 * (td.g11 * m2);
  CHECK(std::abs(script_AP(xi, v, td, kC, mu0) - ap_expect) <= 1e-10 * std::abs(ap_expect));

  const Complex a_mom = td.g11 * m2;          // integral of a(y) e^{2 xi y}
  const Complex b_mom = td.g11 * (m0 - m1);   // integral of b(y) e^{2 xi y}
  const Complex as_expect =
      std::pow(kC.mu_I, 3) / (mu0 * om4) *
      ((theta.theta2 * td.g12 - om2 / kC.mu_I * td.g21_at(0.0)) * a_mom -
       theta.theta2 * td.g11 * b_mom);
  CHECK(std::abs(script_AS(xi, v, td, kC, mu0, theta.theta2) - as_expect) <=
        1e-10 * std::abs(as_expect));

  // the cross-coupling moment only sees the (1,2) component
  const Complex a_scriptA = script_A(xi, v, td, kC, mu0);
  const Complex a_expect = 2.0 * kC.mu_I * kC.mu_I / (mu0 * om2) * 0.5 * m1;
  CHECK(std::abs(a_scriptA - a_expect) <= 1e-10 * std::abs(a_expect));
}

TEST_CASE("frames stay consistent for generic deep-medium constants") {
  const HalfSpaceConstants c{2.3, 0.9, 1.7, 0.8};
  const auto prof = make_constant_profile(c);
  const auto theta = ThetaMatrix::from_profile(prof);
  const auto td = TransformData::surface_normalized(c);
  const auto V0 = PotentialSpec::zero(c.H);
  Mat2d amp = Mat2d::Zero();
  amp(0, 1) = 0.8;
  const auto V = PotentialSpec::bump(amp, 0.3 * c.H, c.H, c.H, 0.2 * c.H, false);
  std::mt19937_64 rng(61);

  for (int k = 0; k < 10; ++k) {
    const Complex xi = oracles::random_off_cut(rng, c, 3.0);
    // displacement determinant against the closed form, every sheet
    for (const SheetTag& s : kAllSheets) {
      const SpectralPoint p{xi, s, CutSide::Below};
      const Complex direct = rayleigh_determinant(prof, p, OdeOptions{1e-12, 1e-14});
      const Complex closed = oracles::homogeneous_delta(xi, quasi_momenta(p, c), c);
      CHECK(std::abs(direct - closed) <= 1e-9 * (1.0 + std::abs(closed)));
    }
    // bridge against the displacement frame
    const SpectralPoint p{xi, SheetTag{+1, +1}, CutSide::Below};
    const auto fr = volterra_solve(V0, td, c, theta, p, VolterraMode::Iterates);
    const Complex det = bridge_determinant(fr, xi, c, prof.mu0()).to_complex();
    const Complex closed = oracles::homogeneous_delta(xi, quasi_momenta(p, c), c);
    CHECK(std::abs(det - closed) <= 1e-8 * std::max(1.0, std::abs(closed)));
    // both solver modes with a potential switched on
    for (const SheetTag& s : {SheetTag{+1, +1}, SheetTag{-1, -1}, SheetTag{+1, -1}}) {
      const SpectralPoint q{xi, s, CutSide::Below};
      const auto a = volterra_solve(V, td, c, theta, q, VolterraMode::Iterates);
      const auto b = volterra_solve(V, td, c, theta, q, VolterraMode::Ode);
      const Mat2c am = a.jost_materialized(), bm = b.jost_materialized();
      CHECK((am - bm).cwiseAbs().maxCoeff() <=
            1e-8 * std::max(am.cwiseAbs().maxCoeff(), bm.cwiseAbs().maxCoeff()));
    }
  }

  // lower-sheet determinant asymptotics carry the generic constants
  const double big = 30.0 / c.H;
  const SpectralPoint pb{{big, 0.0}, SheetTag{-1, -1}, CutSide::Below};
  const auto frb = volterra_solve(V, td, c, theta, pb, VolterraMode::Auto);
  const double c0 = (prof.lambda0() + prof.mu0()) / (prof.lambda0() + 2.0 * prof.mu0());
  const ScaledComplex cterm = ScaledComplex::from(
      std::pow(Complex(big, 0.0), 3) * c.mu_I * c0 / (c.omega * c.omega));
  const Complex A = script_A({big, 0.0}, V, td, c, prof.mu0());
  const Complex ratio =
      ((frb.jost_det() - cterm) / ScaledComplex::from(std::pow(Complex(big, 0.0), 3) * A))
          .to_complex();
  CHECK(std::abs(ratio - 1.0) <= 0.10);
}
