#include "rayres/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "rayres/quadrature.hpp"

namespace rayres {

double gamma_bound(const SpectralPoint& p, const HalfSpaceConstants& c) {
  if (p.sheet.sp > 0) return 0.0;
  const QuasiMomenta q = quasi_momenta(p, c);
  return -2.0 * q.qp.imag();
}

double gamma_max_formula(const QuasiMomenta& q) {
  const double ip = q.qp.imag();
  const double ipm = (q.qp - q.qs).imag();
  const double ipp = (q.qp + q.qs).imag();
  return std::max({std::abs(ip) - ip, 0.5 * (std::abs(ipm) - ipm), 0.5 * (std::abs(ipp) - ipp)});
}

double zeta_p(const QuasiMomenta& q) { return q.qp.imag() + std::abs(q.qp.imag()); }

double zeta_p_minus_s(const QuasiMomenta& q) {
  const double d = (q.qp - q.qs).imag();
  return d + std::abs(d);
}

namespace {

Complex exp_moment(Complex xi, const std::function<double(double)>& f, double H, int panels,
                   int order) {
  return integrate([&](double y) { return std::exp(2.0 * xi * y) * f(y); }, 0.0, H, panels,
                   order);
}

}  // namespace

Complex script_A(Complex xi, const PotentialSpec& V, const TransformData& td,
                 const HalfSpaceConstants& c, double mu0, int quad_panels, int quad_order) {
  (void)td;
  const double om2 = c.omega * c.omega;
  const double pref = 2.0 * c.mu_I * c.mu_I / (mu0 * om2);
  return pref * exp_moment(xi, [&](double y) { return V.V(y)(0, 1); }, V.H, quad_panels,
                           quad_order);
}

Complex script_AP(Complex xi, const PotentialSpec& V, const TransformData& td,
                  const HalfSpaceConstants& c, double mu0, int quad_panels, int quad_order) {
  const double om4 = std::pow(c.omega, 4);
  const double pref = 2.0 * std::pow(c.mu_I, 3) / (mu0 * om4) * td.g11;
  auto a_comb = [&](double y) {
    const Mat2d v = V.V(y);
    return v(0, 0) * td.g11 + v(0, 1) * td.g12;
  };
  return pref * exp_moment(xi, a_comb, V.H, quad_panels, quad_order);
}

Complex script_AS(Complex xi, const PotentialSpec& V, const TransformData& td,
                  const HalfSpaceConstants& c, double mu0, double theta2, int quad_panels,
                  int quad_order) {
  const double om2 = c.omega * c.omega;
  const double om4 = om2 * om2;
  const double pref = std::pow(c.mu_I, 3) / (mu0 * om4);
  const double g21_0 = td.g21_at(0.0);
  auto integrand = [&](double y) {
    const Mat2d v = V.V(y);
    const double a = v(0, 0) * td.g11 + v(0, 1) * td.g12;
    const double b = v(1, 0) * td.g11 + v(1, 1) * td.g12;
    return (theta2 * td.g12 - om2 / c.mu_I * g21_0) * a - theta2 * td.g11 * b;
  };
  return pref * exp_moment(xi, integrand, V.H, quad_panels, quad_order);
}

FEvaluator displacement_evaluator(const ElasticProfile& p, const OdeOptions& opt) {
  FEvaluator ev;
  ev.F = [p, opt](Complex xi) { return entire_F_scaled(p, xi, opt); };
  ev.delta = [p, opt](Complex xi, SheetTag sheet, CutSide side) {
    const DCoefficients dc = d_coefficients(p, xi, opt);
    const SpectralPoint phys{xi, SheetTag{+1, +1}, side};
    return delta_from_d(dc, quasi_momenta(phys, p.constants), sheet);
  };
  ev.local_log_scale = [p, opt](Complex xi) {
    const DCoefficients dc = d_coefficients(p, xi, opt);
    const double la = std::log(std::max(std::abs(dc.d[0]), 1e-300)) + dc.log_scale;
    return std::max(0.0, la);
  };
  return ev;
}

FEvaluator pm_evaluator(const PotentialSpec& V, const TransformData& td,
                        const HalfSpaceConstants& c, const ThetaMatrix& theta, VolterraMode mode,
                        const VolterraOptions& opt) {
  const double mu0 = 2.0 * c.mu_I / theta.xi2_coefficient;
  auto delta = [=](Complex xi, SheetTag sheet, CutSide side) {
    if (std::abs(xi) < 1e-12) xi = Complex(1e-12, 0.0);  // bridge pole at the origin
    const SpectralPoint pt{xi, sheet, side};
    const TransformedFrame fr = volterra_solve(V, td, c, theta, pt, mode, opt);
    return bridge_determinant(fr, xi, c, mu0);
  };
  FEvaluator ev;
  ev.delta = delta;
  ev.F = [=](Complex xi) {
    // product over the four sheets; each bridged determinant carries a 1/xi
    // pole cancelled by the vanishing of det F_theta at the origin
    Complex z = xi;
    if (std::abs(z) < 1e-12) z = Complex(1e-12, 0.0);
    ScaledComplex f = ScaledComplex::from(Complex(1.0, 0.0));
    for (const SheetTag& s : kAllSheets) f = f * delta(z, s, CutSide::Below);
    return f;
  };
  ev.local_log_scale = [=](Complex xi) {
    const SpectralPoint pt{xi, SheetTag{+1, +1}, CutSide::Below};
    const TransformedFrame fr = volterra_solve(V, td, c, theta, pt, mode, opt);
    Mat2c j = fr.jost;
    double m = 0.0;
    for (int r = 0; r < 2; ++r)
      for (int cc = 0; cc < 2; ++cc)
        m = std::max(m, std::log(std::max(std::abs(j(r, cc)), 1e-300)) +
                            fr.col_log_scale[cc]);
    return std::max(0.0, 2.0 * m);
  };
  return ev;
}

namespace {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const size_t n = x.size();
  LineFit out;
  if (n < 2) return out;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) return out;
  out.slope = (n * sxy - sx * sy) / det;
  out.intercept = (sy - out.slope * sx) / n;
  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = y[i] - out.slope * x[i] - out.intercept;
    ss += r * r;
  }
  if (n > 2) out.stderr_slope = std::sqrt(ss / (n - 2) * n / det);
  return out;
}

}  // namespace

GrowthReport growth_fit(const FEvaluator& ev, double H, const std::vector<Complex>& rays,
                        const std::vector<double>& radii, double slack) {
  GrowthReport rep;
  rep.H = H;
  for (Complex u : rays) {
    u /= std::abs(u);
    for (double r : radii)
      if (r * H > 55.0)
        throw std::invalid_argument(
            "growth fit radius too large for stable evaluation; use |xi| H <= 50");
    RayFit fit;
    fit.direction = u;
    const bool imag_ray = std::abs(u.real()) < 1e-9;
    std::vector<double> xs, ys;
    for (double r : radii) {
      const Complex xi = r * u;
      const double la = ev.F(xi).log_abs();
      if (!std::isfinite(la)) continue;
      fit.samples.emplace_back(r, la);
      xs.push_back(imag_ray ? r : std::abs(xi.real()));
      ys.push_back(la);
    }
    if (xs.size() >= 4) {
      const size_t n = xs.size();
      const size_t lo = n / 2;
      std::vector<double> xw(xs.begin() + lo, xs.end()), yw(ys.begin() + lo, ys.end());
      const LineFit main = least_squares(xw, yw);
      fit.slope = main.slope;
      const size_t mid = lo + (n - lo) / 2;
      const LineFit fa = least_squares(std::vector<double>(xs.begin() + lo, xs.begin() + mid),
                                       std::vector<double>(ys.begin() + lo, ys.begin() + mid));
      const LineFit fb = least_squares(std::vector<double>(xs.begin() + mid, xs.end()),
                                       std::vector<double>(ys.begin() + mid, ys.end()));
      fit.slope_window_a = fa.slope;
      fit.slope_window_b = fb.slope;
      fit.confidence_width = std::max(2.0 * main.stderr_slope, slack * 8.0 * H);
      fit.windows_agree = std::abs(fa.slope - fb.slope) <= 2.0 * fit.confidence_width;
      // polynomial prefactor from the exponent-removed residual
      std::vector<double> lx, ly;
      for (size_t i = lo; i < n; ++i) {
        lx.push_back(std::log(std::max(xs[i], 1e-12)));
        ly.push_back(ys[i] - fit.slope * xs[i]);
      }
      fit.prefactor_exponent = least_squares(lx, ly).slope;
    }
    const double cap8 = 8.0 * H * (1.0 + slack);
    const double cap12 = 12.0 * H * (1.0 + slack);
    if (imag_ray) {
      fit.pass_8H = std::abs(fit.slope) <= slack * 8.0 * H;
      fit.pass_12H = std::abs(fit.slope) <= slack * 12.0 * H;
    } else {
      fit.pass_8H = fit.slope <= cap8;
      fit.pass_12H = fit.slope <= cap12;
    }
    rep.rays.push_back(std::move(fit));
  }
  return rep;
}

CartwrightReport cartwright_indices(const FEvaluator& ev, double H,
                                    const std::vector<double>& y_schedule) {
  CartwrightReport rep;
  auto fit_direction = [&](double sign) {
    std::vector<double> xs, ys;
    for (double y : y_schedule) {
      const double la = ev.F(Complex(sign * y, 0.0)).log_abs();
      if (!std::isfinite(la)) continue;
      xs.push_back(y);
      ys.push_back(la);
    }
    const size_t lo = xs.size() / 2;
    return least_squares(std::vector<double>(xs.begin() + lo, xs.end()),
                         std::vector<double>(ys.begin() + lo, ys.end()))
        .slope;
  };
  // z = i xi identification: the vertical directions in z are the real
  // directions in xi
  rep.rho_plus_hat = fit_direction(-1.0);
  rep.rho_minus_hat = fit_direction(+1.0);

  rep.poisson_windows = {10.0, 20.0, 40.0};
  for (double T : rep.poisson_windows) {
    const double val = integrate_real(
        [&](double x) {
          const double la = ev.F(Complex(0.0, -x)).log_abs();
          return std::max(la, 0.0) / (1.0 + x * x);
        },
        -T, T, 32, 16);
    rep.poisson_integrals.push_back(val);
  }
  rep.increments_decreasing = true;
  for (size_t i = 2; i < rep.poisson_integrals.size(); ++i) {
    const double inc1 = rep.poisson_integrals[i - 1] - rep.poisson_integrals[i - 2];
    const double inc2 = rep.poisson_integrals[i] - rep.poisson_integrals[i - 1];
    if (inc2 > inc1 + 1e-9) rep.increments_decreasing = false;
  }
  (void)H;
  return rep;
}

CountReport levinson_counts(const std::vector<ResonanceRecord>& zeros,
                            const std::vector<double>& radii, double H,
                            const std::vector<double>& deltas) {
  CountReport rep;
  rep.radii = radii;
  for (double r : radii) {
    int np = 0, nm = 0, na = 0;
    for (const auto& z : zeros) {
      if (std::abs(z.xi) > r) continue;
      if (z.xi.real() > 0.0)
        np += z.multiplicity;
      else if (z.xi.real() < 0.0)
        nm += z.multiplicity;
      else
        na += z.multiplicity;
    }
    rep.n_plus.push_back(np);
    rep.n_minus.push_back(nm);
    rep.n_axis.push_back(na);
    rep.bound.push_back(8.0 * H * r / kPi);
  }
  for (double d : deltas) {
    std::vector<int> counts;
    for (double r : radii) {
      int c = 0;
      for (const auto& z : zeros) {
        if (std::abs(z.xi) > r) continue;
        const double a = std::arg(z.xi);
        const double d1 = std::abs(a - kPi / 2.0);
        const double d2 = std::abs(a + kPi / 2.0);
        if (std::min(d1, d2) >= d) c += z.multiplicity;
      }
      counts.push_back(c);
    }
    rep.outside_sectors[d] = counts;
  }
  for (size_t i = 1; i < radii.size(); ++i) {
    if (rep.n_plus[i] < rep.n_plus[i - 1] || rep.n_minus[i] < rep.n_minus[i - 1])
      rep.monotone = false;
  }
  for (const auto& z : zeros) rep.list_total += z.multiplicity;
  return rep;
}

ForbiddenReport forbidden_domain_check(const std::vector<ResonanceRecord>& zeros, double H) {
  ForbiddenReport rep;
  if (zeros.empty()) return rep;
  std::vector<double> abs_re;
  for (const auto& z : zeros) {
    rep.contributions.push_back(std::abs(z.xi) * std::exp(-2.0 * H * std::abs(z.xi.real())));
    abs_re.push_back(std::abs(z.xi.real()));
  }
  rep.c_fit = *std::max_element(rep.contributions.begin(), rep.contributions.end());

  std::vector<double> sorted_re = abs_re;
  std::sort(sorted_re.begin(), sorted_re.end());
  const double lo_q = sorted_re[(3 * (sorted_re.size() - 1)) / 4];
  const double hi = sorted_re.back();
  rep.spread_ok = sorted_re.front() <= 0.0 ? true : hi / std::max(sorted_re.front(), 1e-12) >= 4.0;

  // The bound is asymptotic in |Re xi|: the constant is set by the small-Re
  // zeros and carries no information there, so outliers are only meaningful
  // among the large-|Re| (top quartile) zeros.
  std::vector<double> top_contrib;
  for (size_t i = 0; i < zeros.size(); ++i)
    if (abs_re[i] >= lo_q) top_contrib.push_back(rep.contributions[i]);
  if (top_contrib.empty()) return rep;
  std::sort(top_contrib.begin(), top_contrib.end());
  const double median = top_contrib[(top_contrib.size() - 1) / 2];
  // a violator must both stand out among its large-Re peers and actually
  // drive the fitted constant; decaying real-axis contributions do neither
  for (size_t i = 0; i < zeros.size(); ++i)
    if (abs_re[i] >= lo_q && rep.contributions[i] > 3.0 * median &&
        rep.contributions[i] >= 0.5 * rep.c_fit)
      rep.violations.push_back(i);
  return rep;
}

}  // namespace rayres
