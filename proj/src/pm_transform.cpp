#include "rayres/pm_transform.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "rayres/quadrature.hpp"

namespace rayres {

namespace {
constexpr Complex kI{0.0, 1.0};
}

ThetaMatrix ThetaMatrix::from_profile(const ElasticProfile& p) {
  const HalfSpaceConstants& c = p.constants;
  const double mu0 = p.mu0();
  const double la0 = p.lambda0();
  ThetaMatrix t;
  t.theta3 = p.mu0_dx() / mu0;
  t.theta2 = mu0 * mu0 / (2.0 * c.mu_I * (la0 + 2.0 * mu0));
  t.theta1 = (c.mu_I / mu0) * (c.omega * c.omega / mu0 + mu0 * p.inv_mu_dxx0());
  t.xi2_coefficient = 2.0 * c.mu_I / mu0;
  return t;
}

Mat2d background_potential(double x, const TransformData& td, const HalfSpaceConstants& c) {
  const double om2 = c.omega * c.omega;
  const double g21x = td.g21_at(x), g22x = td.g22_at(x);
  Mat2d out;
  out << -om2 / c.mu_I, 0.0, 0.0, -om2 / td.sigma_I;
  Mat2d m;
  m << -td.g12 * g21x, g21x * td.g11, -td.g12 * g22x, td.g12 * g21x;
  out += om2 * (c.lambda_I + c.mu_I) / (c.mu_I * td.sigma_I) * m;
  return out;
}

Mat2d GreenKernelParts::A(double x) const {
  const double g21x = td.g21_at(x), g22x = td.g22_at(x);
  Mat2d m;
  m << -td.g12 * g21x, td.g11 * g21x, -td.g12 * g22x, td.g11 * g22x;
  return m;
}

Mat2d GreenKernelParts::B(double y) const {
  const double g21y = td.g21_at(y), g22y = td.g22_at(y);
  Mat2d m;
  m << td.g11 * g22y, -td.g11 * g21y, td.g12 * g22y, -td.g12 * g21y;
  return m;
}

Mat2d GreenKernelParts::C() const {
  Mat2d m;
  m << constants.mu_I * td.g12 * td.g11, -constants.mu_I * td.g11 * td.g11,
      constants.mu_I * td.g12 * td.g12, -constants.mu_I * td.g12 * td.g11;
  return m;
}

Mat2d GreenKernelParts::A_dx() const {
  // d/dx of A(x); G21' = -c_I/2 g11, G22' = -c_I/2 g12
  Mat2d m;
  m << td.g12 * td.g11, -td.g11 * td.g11, td.g12 * td.g12, -td.g11 * td.g12;
  return 0.5 * td.c_I * m;
}

Mat2c green_kernel(double x, double y, const QuasiMomenta& q, const TransformData& td,
                   const HalfSpaceConstants& c) {
  GreenKernelParts parts{td, c};
  const double d = x - y;
  const Complex sp = d * csinc(d * q.qp);  // sin((x-y) qP)/qP
  const Complex ss = d * csinc(d * q.qs);
  const Complex cdiff = std::cos(d * q.qs) - std::cos(d * q.qp);
  const double om2 = c.omega * c.omega;
  return parts.A(x).cast<Complex>() * sp + parts.B(y).cast<Complex>() * ss +
         parts.C().cast<Complex>() * (cdiff / om2);
}

Mat2c green_kernel_dx(double x, double y, const QuasiMomenta& q, const TransformData& td,
                      const HalfSpaceConstants& c) {
  GreenKernelParts parts{td, c};
  const double d = x - y;
  const Complex sp = d * csinc(d * q.qp);
  const Complex ss = d * csinc(d * q.qs);
  const Complex cp = std::cos(d * q.qp), cs = std::cos(d * q.qs);
  const double om2 = c.omega * c.omega;
  return parts.A_dx().cast<Complex>() * sp + parts.A(x).cast<Complex>() * cp +
         parts.B(y).cast<Complex>() * cs +
         parts.C().cast<Complex>() * ((q.qp * q.qp * sp - q.qs * q.qs * ss) / om2);
}

Mat2c faddeev_kernel(double x, double y, const QuasiMomenta& q, const TransformData& td,
                     const HalfSpaceConstants& c) {
  GreenKernelParts parts{td, c};
  const double d = y - x;  // >= 0 in the Volterra integrals
  const Complex ep = std::exp(kI * d * q.qp);
  const Complex sp = -d * csinc(d * q.qp) * ep;
  const Complex ss = -d * csinc(d * q.qs) * ep;
  const Complex cdiff = (std::cos(d * q.qs) - std::cos(d * q.qp)) * ep;
  const double om2 = c.omega * c.omega;
  return parts.A(x).cast<Complex>() * sp + parts.B(y).cast<Complex>() * ss +
         parts.C().cast<Complex>() * (cdiff / om2);
}

Mat2c faddeev_kernel_dx(double x, double y, const QuasiMomenta& q, const TransformData& td,
                        const HalfSpaceConstants& c) {
  GreenKernelParts parts{td, c};
  const double d = y - x;
  const Complex ep = std::exp(kI * d * q.qp);
  const Complex sp = -d * csinc(d * q.qp) * ep;
  const Complex ss = -d * csinc(d * q.qs) * ep;
  const Complex cp = std::cos(d * q.qp) * ep, cs = std::cos(d * q.qs) * ep;
  const double om2 = c.omega * c.omega;
  return parts.A_dx().cast<Complex>() * sp + parts.A(x).cast<Complex>() * cp +
         parts.B(y).cast<Complex>() * cs +
         parts.C().cast<Complex>() * ((q.qp * q.qp * sp - q.qs * q.qs * ss) / om2);
}

UnperturbedMatrix unperturbed_jost_matrix(double x, Complex xi, const QuasiMomenta& q,
                                          const TransformData& td, const HalfSpaceConstants& c) {
  const double kappa = c.mu_I / (c.omega * c.omega);
  const Complex ep = std::exp(kI * q.qp * x);
  const Complex es = std::exp(kI * q.qs * x);
  const Complex p1 = td.g21_at(x) + kI * q.qp * kappa * td.g11;
  const Complex p2 = td.g22_at(x) + kI * q.qp * kappa * td.g12;
  const double g21p = -0.5 * td.c_I * td.g11;
  const double g22p = -0.5 * td.c_I * td.g12;
  UnperturbedMatrix u;
  u.F << p1 * ep, -kappa * xi * td.g11 * es, p2 * ep, -kappa * xi * td.g12 * es;
  u.Fp << (g21p + kI * q.qp * p1) * ep, -kI * q.qs * kappa * xi * td.g11 * es,
      (g22p + kI * q.qp * p2) * ep, -kI * q.qs * kappa * xi * td.g12 * es;
  return u;
}

UnperturbedMatrix faddeev_unperturbed(double x, Complex xi, const QuasiMomenta& q,
                                      const TransformData& td, const HalfSpaceConstants& c) {
  const double kappa = c.mu_I / (c.omega * c.omega);
  const Complex eds = std::exp(kI * (q.qs - q.qp) * x);
  const Complex p1 = td.g21_at(x) + kI * q.qp * kappa * td.g11;
  const Complex p2 = td.g22_at(x) + kI * q.qp * kappa * td.g12;
  const double g21p = -0.5 * td.c_I * td.g11;
  const double g22p = -0.5 * td.c_I * td.g12;
  UnperturbedMatrix u;
  u.F << p1, -kappa * xi * td.g11 * eds, p2, -kappa * xi * td.g12 * eds;
  u.Fp << Complex(g21p, 0.0), -kI * (q.qs - q.qp) * kappa * xi * td.g11 * eds,
      Complex(g22p, 0.0), -kI * (q.qs - q.qp) * kappa * xi * td.g12 * eds;
  return u;
}

namespace {

struct IteratesWorkspace {
  PanelRule rule;
  std::vector<Mat2d> Vnode;             // V at quadrature nodes
  std::vector<Mat2c> H;                 // current Faddeev matrix at nodes
  std::vector<Mat2c> H0;
  // full-panel weighted kernels: for node i, kernels against nodes of all
  // panels strictly to the right of i's panel
  std::vector<std::vector<Mat2c>> Wfull;
  std::vector<int> first_right;         // first node index of the panel right of i's
  // partial-panel contribution folded into a linear map of the panel values
  std::vector<std::vector<Mat2c>> Mpart;

  IteratesWorkspace(const PotentialSpec& V, const TransformData& td, const HalfSpaceConstants& c,
                    const QuasiMomenta& q, Complex xi, const VolterraOptions& opt)
      : rule(0.0, V.H, opt.panels, opt.nodes_per_panel) {
    const size_t n = rule.nodes.size();
    Vnode.resize(n);
    H.resize(n);
    H0.resize(n);
    for (size_t k = 0; k < n; ++k) {
      Vnode[k] = V.V(rule.nodes[k]);
      H0[k] = faddeev_unperturbed(rule.nodes[k], xi, q, td, c).F;
      H[k] = H0[k];
    }

    Wfull.resize(n);
    first_right.resize(n);
    for (size_t i = 0; i < n; ++i) {
      const int p = rule.panel_of_node(static_cast<int>(i));
      const int fr = (p + 1) * rule.order;
      first_right[i] = fr;
      Wfull[i].reserve(n - fr);
      for (size_t j = fr; j < n; ++j)
        Wfull[i].push_back(rule.weights[j] *
                           faddeev_kernel(rule.nodes[i], rule.nodes[j], q, td, c));
    }

    // partial integral over [x_i, panel_hi] via a fresh rule of the same
    // order, folded through polynomial interpolation on the panel nodes
    GaussLegendre sub(rule.order);
    std::vector<double> basis;
    Mpart.assign(n, std::vector<Mat2c>(rule.order, Mat2c::Zero()));
    for (size_t i = 0; i < n; ++i) {
      const int p = rule.panel_of_node(static_cast<int>(i));
      const double lo = rule.nodes[i];
      const double hi = rule.panel_hi(p);
      const double plo = rule.panel_lo(p);
      const double phw = 0.5 * (rule.panel_hi(p) - plo);
      if (hi - lo < 1e-15) continue;
      for (int j = 0; j < rule.order; ++j) {
        const double t = lo + 0.5 * (hi - lo) * (sub.x[j] + 1.0);
        const double wj = 0.5 * (hi - lo) * sub.w[j];
        const Mat2c kv = wj * faddeev_kernel(rule.nodes[i], t, q, td, c) * V.V(t).cast<Complex>();
        const double tau = (t - plo) / phw - 1.0;  // local coordinate in [-1, 1]
        rule.basis_at(tau, basis);
        for (int k = 0; k < rule.order; ++k) Mpart[i][k] += kv * basis[k];
      }
    }
  }

  // one Picard sweep; returns sup-norm of the update
  double sweep() {
    const size_t n = rule.nodes.size();
    std::vector<Mat2c> VH(n);
    for (size_t k = 0; k < n; ++k) VH[k] = Vnode[k].cast<Complex>() * H[k];
    double delta = 0.0;
    std::vector<Mat2c> Hn(n);
    for (size_t i = 0; i < n; ++i) {
      Mat2c acc = Mat2c::Zero();
      const int fr = first_right[i];
      for (size_t j = fr; j < n; ++j) acc += Wfull[i][j - fr] * VH[j];
      const int p = rule.panel_of_node(static_cast<int>(i));
      const int base = p * rule.order;
      for (int k = 0; k < rule.order; ++k) acc += Mpart[i][k] * H[base + k];
      Hn[i] = H0[i] - acc;
      delta = std::max(delta, (Hn[i] - H[i]).cwiseAbs().maxCoeff());
    }
    H.swap(Hn);
    return delta;
  }

  double sup_norm() const {
    double m = 0.0;
    for (const auto& h : H) m = std::max(m, h.cwiseAbs().maxCoeff());
    return m;
  }
};

TransformedFrame solve_iterates(const PotentialSpec& V, const TransformData& td,
                                const HalfSpaceConstants& c, const ThetaMatrix& theta,
                                const SpectralPoint& pt, const VolterraOptions& opt) {
  const QuasiMomenta q = quasi_momenta(pt, c);
  IteratesWorkspace ws(V, td, c, q, pt.xi, opt);

  bool converged = false;
  double last = 0.0;
  for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
    last = ws.sweep();
    if (last <= opt.tol * std::max(ws.sup_norm(), 1e-300)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream os;
    os << "volterra iteration did not converge: last update " << last << ", solution norm "
       << ws.sup_norm();
    throw std::runtime_error(os.str());
  }

  const size_t n = ws.rule.nodes.size();
  std::vector<Mat2c> VH(n);
  for (size_t k = 0; k < n; ++k) VH[k] = ws.Vnode[k].cast<Complex>() * ws.H[k];

  UnperturbedMatrix h0 = faddeev_unperturbed(0.0, pt.xi, q, td, c);
  Mat2c H_at0 = h0.F;
  Mat2c Hp_at0 = h0.Fp;
  for (size_t j = 0; j < n; ++j) {
    const double w = ws.rule.weights[j];
    const double y = ws.rule.nodes[j];
    H_at0 -= w * faddeev_kernel(0.0, y, q, td, c) * VH[j];
    Hp_at0 -= w * (faddeev_kernel_dx(0.0, y, q, td, c) -
                   kI * q.qp * faddeev_kernel(0.0, y, q, td, c)) *
              VH[j];
  }

  TransformedFrame out;
  out.value0 = H_at0;                         // F(0) = H(0)
  out.deriv0 = Hp_at0 + kI * q.qp * H_at0;    // F'(0) = H'(0) + i qP H(0)
  out.jost = jost_function(out.value0, out.deriv0, theta, pt.xi);
  out.col_log_scale.setZero();
  return out;
}

// The solution is marched as F = F0 + W with W(H) = W'(H) = 0 and
//   -W'' + (Q0 + V) W + xi^2 W = -V F0.
// Carrying the deep-medium part in closed form keeps the recessive column
// content out of the marched state, which would otherwise be lost to the
// exponentially growing directions on the lower sheets.
TransformedFrame solve_ode(const PotentialSpec& V, const TransformData& td,
                           const HalfSpaceConstants& c, const ThetaMatrix& theta,
                           const SpectralPoint& pt, const VolterraOptions& opt) {
  const QuasiMomenta q = quasi_momenta(pt, c);
  const double H = V.H;

  using State = Eigen::Matrix<Complex, 8, 1>;  // both columns of (W, W')
  auto rhs = [&](double x, const State& s) {
    const Mat2d Q = (background_potential(x, td, c) + V.V(x)).eval();
    const Complex xi2 = pt.xi * pt.xi;
    const Mat2c F0 = unperturbed_jost_matrix(x, pt.xi, q, td, c).F;
    State d;
    for (int col = 0; col < 2; ++col) {
      const Vec2c w(s[4 * col + 0], s[4 * col + 1]);
      const Vec2c wp(s[4 * col + 2], s[4 * col + 3]);
      const Vec2c wpp =
          Q.cast<Complex>() * w + xi2 * w + V.V(x).cast<Complex>() * F0.col(col);
      d[4 * col + 0] = wp[0];
      d[4 * col + 1] = wp[1];
      d[4 * col + 2] = wpp[0];
      d[4 * col + 3] = wpp[1];
    }
    return d;
  };
  OdeOptions o = opt.ode;
  const double qscale = std::max(1.0, std::abs(pt.xi) + c.omega / std::sqrt(c.mu_I));
  o.initial_step = std::min(H / 16.0, 0.5 / qscale);
  State y = State::Zero();
  y = dopri5(rhs, H, 0.0, y, o);

  UnperturbedMatrix base = unperturbed_jost_matrix(0.0, pt.xi, q, td, c);
  TransformedFrame out;
  for (int col = 0; col < 2; ++col) {
    out.value0.col(col) = base.F.col(col) + Vec2c(y[4 * col + 0], y[4 * col + 1]);
    out.deriv0.col(col) = base.Fp.col(col) + Vec2c(y[4 * col + 2], y[4 * col + 3]);
  }
  out.col_log_scale.setZero();
  out.jost = jost_function(out.value0, out.deriv0, theta, pt.xi);
  return out;
}

}  // namespace

TransformedFrame volterra_solve(const PotentialSpec& V, const TransformData& td,
                                const HalfSpaceConstants& c, const ThetaMatrix& theta,
                                const SpectralPoint& pt, VolterraMode mode,
                                const VolterraOptions& opt) {
  c.validate();
  if (mode == VolterraMode::Auto)
    mode = (std::abs(pt.xi) * V.H > opt.crossover) ? VolterraMode::Ode : VolterraMode::Iterates;
  return mode == VolterraMode::Iterates ? solve_iterates(V, td, c, theta, pt, opt)
                                        : solve_ode(V, td, c, theta, pt, opt);
}

Mat2c jost_function(const Mat2c& value0, const Mat2c& deriv0, const ThetaMatrix& theta,
                    Complex xi) {
  return deriv0 + theta.at(xi) * value0;
}

Mat2c bridge_A1(Complex xi, const HalfSpaceConstants& c, double mu0, double mu0_dx) {
  Mat2c a1;
  a1 << 2.0 * xi * c.mu_I, Complex(0.0, 0.0),
      2.0 * kI * c.mu_I * mu0_dx / mu0, -kI * mu0;
  return a1;
}

Mat2c bridge_A2(Complex xi, const HalfSpaceConstants& c) {
  const double om2 = c.omega * c.omega;
  Mat2c a2 = Mat2c::Zero();
  a2(0, 0) = om2 / (kI * xi * c.mu_I);
  a2(1, 1) = -om2 / (xi * c.mu_I);
  return a2;
}

Mat2c bridge_boundary_matrix(const Mat2c& F_theta, Complex xi, const HalfSpaceConstants& c,
                             double mu0, double mu0_dx) {
  if (xi == Complex(0.0, 0.0)) throw std::invalid_argument("bridge singular at origin");
  return bridge_A1(xi, c, mu0, mu0_dx) * F_theta * bridge_A2(xi, c);
}

ScaledComplex bridge_determinant(const TransformedFrame& frame, Complex xi,
                                 const HalfSpaceConstants& c, double mu0) {
  if (xi == Complex(0.0, 0.0)) throw std::invalid_argument("bridge singular at origin");
  const Complex factor = 2.0 * mu0 * std::pow(c.omega, 4) / (c.mu_I * xi);
  return frame.jost_det() * factor;
}

}  // namespace rayres
