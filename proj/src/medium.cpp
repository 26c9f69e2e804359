#include "rayres/medium.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "rayres/quadrature.hpp"

namespace rayres {

void HalfSpaceConstants::validate() const {
  if (!(mu_I > 0.0)) throw std::invalid_argument("mu_I must be positive");
  if (!(lambda_I + mu_I > 0.0))
    throw std::invalid_argument("lambda_I + mu_I must be positive");
  if (!(omega > 0.0)) throw std::invalid_argument("omega must be positive");
  if (!(H > 0.0)) throw std::invalid_argument("H must be positive");
}

BranchRadii branch_radii(const HalfSpaceConstants& c) {
  c.validate();
  return {c.omega / std::sqrt(c.sigma_I()), c.omega / std::sqrt(c.mu_I)};
}

ElasticProfile make_constant_profile(const HalfSpaceConstants& c) {
  c.validate();
  const double mu = c.mu_I, la = c.lambda_I;
  ElasticProfile p;
  p.constants = c;
  p.mu = [mu](double) { return mu; };
  p.lambda = [la](double) { return la; };
  p.mu_dz = [](double) { return 0.0; };
  p.lambda_dz = [](double) { return 0.0; };
  p.mu_dzz = [](double) { return 0.0; };
  p.lambda_dzz = [](double) { return 0.0; };
  return p;
}

ElasticProfile make_polynomial_bump_profile(const HalfSpaceConstants& c, double amp_mu,
                                            double amp_lambda, int power) {
  c.validate();
  if (power < 2) throw std::invalid_argument("bump power must be >= 2 for a C^1 profile");
  const double H = c.H;
  auto val = [H, power](double base, double amp, double z) {
    if (z <= -H) return base;
    return base + amp * std::pow(z + H, power);
  };
  auto d1 = [H, power](double amp, double z) {
    if (z <= -H) return 0.0;
    return amp * power * std::pow(z + H, power - 1);
  };
  auto d2 = [H, power](double amp, double z) {
    if (z <= -H) return 0.0;
    return amp * power * (power - 1) * std::pow(z + H, power - 2);
  };
  ElasticProfile p;
  p.constants = c;
  p.mu = [=](double z) { return val(c.mu_I, amp_mu, z); };
  p.lambda = [=](double z) { return val(c.lambda_I, amp_lambda, z); };
  p.mu_dz = [=](double z) { return d1(amp_mu, z); };
  p.lambda_dz = [=](double z) { return d1(amp_lambda, z); };
  p.mu_dzz = [=](double z) { return d2(amp_mu, z); };
  p.lambda_dzz = [=](double z) { return d2(amp_lambda, z); };
  return p;
}

namespace {

// Natural cubic spline with analytic first/second derivatives.
struct CubicSpline {
  std::vector<double> x, y, m;  // m = second derivatives at knots

  CubicSpline(std::vector<double> xs, std::vector<double> ys) : x(std::move(xs)), y(std::move(ys)) {
    const size_t n = x.size();
    if (n < 3) throw std::invalid_argument("spline needs at least 3 knots");
    for (size_t i = 1; i < n; ++i)
      if (!(x[i] > x[i - 1])) throw std::invalid_argument("spline knots must be increasing");
    m.assign(n, 0.0);
    std::vector<double> a(n, 0.0), b(n, 1.0), cc(n, 0.0), d(n, 0.0);
    for (size_t i = 1; i + 1 < n; ++i) {
      const double h0 = x[i] - x[i - 1], h1 = x[i + 1] - x[i];
      a[i] = h0 / 6.0;
      b[i] = (h0 + h1) / 3.0;
      cc[i] = h1 / 6.0;
      d[i] = (y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0;
    }
    // Thomas solve, natural ends (m[0] = m[n-1] = 0 already encoded)
    for (size_t i = 1; i < n; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * cc[i - 1];
      d[i] -= w * d[i - 1];
    }
    m[n - 1] = d[n - 1] / b[n - 1];
    for (size_t i = n - 1; i-- > 0;) m[i] = (d[i] - cc[i] * m[i + 1]) / b[i];
  }

  size_t segment(double t) const {
    const size_t n = x.size();
    size_t lo = 0, hi = n - 1;
    while (hi - lo > 1) {
      const size_t mid = (lo + hi) / 2;
      (x[mid] <= t ? lo : hi) = mid;
    }
    return lo;
  }

  double eval(double t, int deriv) const {
    const size_t i = segment(std::clamp(t, x.front(), x.back()));
    const double h = x[i + 1] - x[i];
    const double A = (x[i + 1] - t) / h, B = (t - x[i]) / h;
    switch (deriv) {
      case 0:
        return A * y[i] + B * y[i + 1] +
               ((A * A * A - A) * m[i] + (B * B * B - B) * m[i + 1]) * h * h / 6.0;
      case 1:
        return (y[i + 1] - y[i]) / h +
               h / 6.0 * ((3.0 * B * B - 1.0) * m[i + 1] - (3.0 * A * A - 1.0) * m[i]);
      default:
        return A * m[i] + B * m[i + 1];
    }
  }
};

}  // namespace

ElasticProfile make_spline_profile(const HalfSpaceConstants& c, std::vector<double> z,
                                   std::vector<double> mu, std::vector<double> lambda) {
  c.validate();
  if (z.size() != mu.size() || z.size() != lambda.size())
    throw std::invalid_argument("spline profile arrays must have equal length");
  auto smu = std::make_shared<CubicSpline>(z, mu);
  auto sla = std::make_shared<CubicSpline>(std::move(z), lambda);
  const double H = c.H, mu_I = c.mu_I, la_I = c.lambda_I;
  ElasticProfile p;
  p.constants = c;
  p.mu = [=](double zz) { return zz <= -H ? mu_I : smu->eval(zz, 0); };
  p.mu_dz = [=](double zz) { return zz <= -H ? 0.0 : smu->eval(zz, 1); };
  p.mu_dzz = [=](double zz) { return zz <= -H ? 0.0 : smu->eval(zz, 2); };
  p.lambda = [=](double zz) { return zz <= -H ? la_I : sla->eval(zz, 0); };
  p.lambda_dz = [=](double zz) { return zz <= -H ? 0.0 : sla->eval(zz, 1); };
  p.lambda_dzz = [=](double zz) { return zz <= -H ? 0.0 : sla->eval(zz, 2); };
  return p;
}

namespace {

void check_finite(double v, double depth, const char* what) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "non-finite " << what << " at depth Z = " << depth;
    throw std::runtime_error(os.str());
  }
}

void fd_consistency(const ValidationOptions& opt, const ScalarFn& f, const ScalarFn& f1,
                    const ScalarFn& f2, double z, const char* name,
                    std::vector<ProfileIssue>& out) {
  const double h1 = opt.fd_step_first, h2 = opt.fd_step_second;
  const double fd1 = (f(z + h1) - f(z - h1)) / (2.0 * h1);
  const double scale1 = std::max({1.0, std::abs(fd1), std::abs(f1(z))});
  if (std::abs(fd1 - f1(z)) > 50.0 * opt.fd_rel_tol * scale1) {
    out.push_back({true, "derivative-mismatch",
                   std::string(name) + " first derivative inconsistent with finite differences",
                   z});
  }
  const double fd2 = (f(z + h2) - 2.0 * f(z) + f(z - h2)) / (h2 * h2);
  const double scale2 = std::max({1.0, std::abs(fd2), std::abs(f2(z))});
  if (std::abs(fd2 - f2(z)) > 500.0 * opt.fd_rel_tol * scale2) {
    out.push_back({true, "second-derivative-mismatch",
                   std::string(name) + " second derivative inconsistent with finite differences",
                   z});
  }
}

}  // namespace

ValidationReport validate_profile(const ElasticProfile& p, const ValidationOptions& opt) {
  ValidationReport rep;
  const double H = p.constants.H;

  // homogeneity below -H
  bool homog = true;
  for (int i = 0; i <= opt.samples / 4; ++i) {
    const double z = -H - 1.0 + i * (1.0) / (opt.samples / 4);
    const double mv = p.mu(z), lv = p.lambda(z);
    check_finite(mv, z, "mu");
    check_finite(lv, z, "lambda");
    if (std::abs(mv - p.constants.mu_I) >
            opt.homogeneity_rel_tol * std::max(1.0, std::abs(p.constants.mu_I)) ||
        std::abs(lv - p.constants.lambda_I) >
            opt.homogeneity_rel_tol * std::max(1.0, std::abs(p.constants.lambda_I))) {
      if (homog)
        rep.issues.push_back({true, "not-homogeneous",
                              "profile not homogeneous below -H", z});
      homog = false;
    }
  }

  // positivity on [-H, 0]
  for (int i = 0; i <= opt.samples; ++i) {
    const double z = -H + i * H / opt.samples;
    const double mv = p.mu(z), lv = p.lambda(z);
    check_finite(mv, z, "mu");
    check_finite(lv, z, "lambda");
    if (!(mv > 0.0))
      rep.issues.push_back({true, "mu-not-positive", "mu must stay positive", z});
    if (!(lv + 2.0 * mv > 0.0))
      rep.issues.push_back({true, "sigma-not-positive", "lambda + 2 mu must stay positive", z});
    if (rep.issues.size() > 20) return rep;
  }

  // derivative consistency at interior points (skip the kink candidate -H)
  for (int i = 1; i < 8; ++i) {
    const double z = -H + i * H / 8.0 - H / 16.0;
    fd_consistency(opt, p.mu, p.mu_dz, p.mu_dzz, z, "mu", rep.issues);
    fd_consistency(opt, p.lambda, p.lambda_dz, p.lambda_dzz, z, "lambda", rep.issues);
  }

  // curvature jump at the junction is tolerated but reported
  const double jump_mu = std::abs(p.mu_dzz(-H + 1e-9) - p.mu_dzz(-H - 1e-9));
  const double jump_la = std::abs(p.lambda_dzz(-H + 1e-9) - p.lambda_dzz(-H - 1e-9));
  if (jump_mu > 1e-8 * std::max(1.0, std::abs(p.constants.mu_I)) ||
      jump_la > 1e-8 * std::max(1.0, std::abs(p.constants.lambda_I))) {
    rep.issues.push_back({false, "curvature-jump",
                          "second derivative jumps at Z = -H (profile is C^1 only)", -H});
  }
  return rep;
}

TransformData TransformData::from_matrix(const HalfSpaceConstants& c, double g11, double g12,
                                         double g21, double g22) {
  c.validate();
  TransformData td;
  td.g11 = g11;
  td.g12 = g12;
  td.g21 = g21;
  td.g22 = g22;
  td.c_I = (c.lambda_I + c.mu_I) / c.sigma_I();
  td.sigma_I = c.sigma_I();
  td.rho = (c.lambda_I + 3.0 * c.mu_I) / c.sigma_I();
  td.H_ = c.H;
  const double det = g11 * g22 - g12 * g21;
  if (std::abs(det - 1.0) > 1e-12)
    throw std::invalid_argument("unimodularity violated: det of transform matrix is " +
                                std::to_string(det));
  return td;
}

TransformData TransformData::identity_anchor(const HalfSpaceConstants& c) {
  return from_matrix(c, 1.0, 0.0, 0.0, 1.0);
}

TransformData TransformData::surface_normalized(const HalfSpaceConstants& c) {
  const double c_I = (c.lambda_I + c.mu_I) / c.sigma_I();
  return from_matrix(c, 1.0, 0.0, -0.5 * c_I * c.H, 1.0);
}

PotentialSpec PotentialSpec::zero(double H) {
  PotentialSpec v;
  v.V = [](double) { return Mat2d::Zero(); };
  v.H = H;
  v.epsilon = 0.1 * H;
  v.generic = false;
  return v;
}

PotentialSpec PotentialSpec::bump(const Mat2d& amplitudes, double x0, double x1, double H,
                                  double epsilon, bool generic) {
  if (!(0.0 <= x0 && x0 < x1 && x1 <= H))
    throw std::invalid_argument("bump support must satisfy 0 <= x0 < x1 <= H");
  const double mid = 0.5 * (x0 + x1);
  const double peak = std::pow((mid - x0) * (x1 - mid), 2);
  PotentialSpec v;
  v.V = [=](double x) -> Mat2d {
    if (x <= x0 || x >= x1) return Mat2d::Zero();
    const double s = std::pow((x - x0) * (x1 - x), 2) / peak;
    return s * amplitudes;
  };
  v.H = H;
  v.epsilon = epsilon;
  v.generic = generic;
  return v;
}

double PotentialSpec::l1_norm() const {
  return integrate_real(
      [&](double x) {
        const Mat2d m = V(x);
        return m.cwiseAbs().maxCoeff();
      },
      0.0, H, 16, 16);
}

bool PotentialSpec::is_zero() const {
  for (int i = 0; i <= 64; ++i) {
    const double x = i * H / 64.0;
    if (V(x).cwiseAbs().maxCoeff() != 0.0) return false;
  }
  return true;
}

ValidationReport validate_potential(const PotentialSpec& v, int samples) {
  ValidationReport rep;
  for (int i = 0; i <= samples / 8; ++i) {
    const double x = v.H * (1.0 + i * 0.125);
    const Mat2d m = v.V(x);
    if (!m.allFinite()) throw std::runtime_error("non-finite potential at x = " + std::to_string(x));
    if (m.cwiseAbs().maxCoeff() > 0.0) {
      rep.issues.push_back({true, "support", "potential must vanish for x >= H", x});
      break;
    }
  }
  for (int i = 0; i <= samples; ++i) {
    const double x = i * v.H / samples;
    if (!v.V(x).allFinite())
      throw std::runtime_error("non-finite potential at x = " + std::to_string(x));
  }
  if (v.generic) {
    // every component must keep a definite sign and not vanish identically near H
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        double lo = 0.0, hi = 0.0;
        for (int i = 1; i < 64; ++i) {
          const double x = v.H - v.epsilon + i * v.epsilon / 64.0;
          const double val = v.V(x)(r, c);
          lo = std::min(lo, val);
          hi = std::max(hi, val);
        }
        if (lo == 0.0 && hi == 0.0)
          rep.issues.push_back({true, "tail-vanishing",
                                "generic potential component vanishes on (H - eps, H)", v.H});
        else if (lo < 0.0 && hi > 0.0)
          rep.issues.push_back({false, "tail-sign",
                                "potential component changes sign on (H - eps, H)", v.H});
      }
  }
  return rep;
}

}  // namespace rayres
