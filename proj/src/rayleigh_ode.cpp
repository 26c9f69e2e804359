#include "rayres/rayleigh_ode.hpp"

#include <cmath>
#include <functional>

namespace rayres {

namespace {

constexpr Complex kI{0.0, 1.0};

// State layout per column: (phi1, phi3, a, b) with
//   a = i xi lambda phi1 + (lambda + 2 mu) phi3'
//   b = i xi mu phi3 + mu phi1'
// Only mu and lambda values enter the right-hand side, no profile
// derivatives.
Eigen::Matrix<Complex, 4, 1> column_rhs(double mu, double la, double om2, Complex xi,
                                        const Eigen::Ref<const Eigen::Matrix<Complex, 4, 1>>& y) {
  const double sig = la + 2.0 * mu;
  const Complex ixi = kI * xi;
  Eigen::Matrix<Complex, 4, 1> dy;
  const Complex phi1 = y[0], phi3 = y[1], a = y[2], b = y[3];
  dy[0] = -ixi * phi3 + b / mu;
  dy[1] = (a - ixi * la * phi1) / sig;
  dy[2] = -om2 * phi3 - ixi * b;
  dy[3] = (4.0 * mu * (la + mu) * xi * xi / sig - om2) * phi1 - ixi * la / sig * a;
  return dy;
}

double sgn(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

// Deep-medium solution state (phi1, phi3, a, b) in closed form.
Vec4c deep_state(double Z, Complex xi, Complex q, Branch branch, Sign sign,
                 const HalfSpaceConstants& c) {
  const double s = sgn(sign);
  const Complex e = std::exp(s * kI * Z * q);
  const double om2 = c.omega * c.omega;
  const Complex common = kI * (om2 - 2.0 * c.mu_I * xi * xi);
  Vec4c st;
  if (branch == Branch::P) {
    st[0] = xi * e;
    st[1] = s * q * e;
    st[2] = common * e;
    st[3] = s * 2.0 * kI * c.mu_I * xi * q * e;
  } else {
    st[0] = s * q * e;
    st[1] = -xi * e;
    st[2] = -s * 2.0 * kI * c.mu_I * xi * q * e;
    st[3] = common * e;
  }
  return st;
}

// Even/odd combinations of the deep-medium pair; entire in xi since only
// cos(qZ) and sin(qZ)/q of q^2 appear.
void theta_phi_states(double Z, Complex xi, Complex q, Branch branch,
                      const HalfSpaceConstants& c, Vec4c& theta, Vec4c& phi) {
  const Complex cz = std::cos(q * Z);
  const Complex zs = Z * csinc(q * Z);  // sin(qZ)/q
  const double om2 = c.omega * c.omega;
  const Complex common = kI * (om2 - 2.0 * c.mu_I * xi * xi);
  if (branch == Branch::P) {
    theta[0] = xi * cz;
    theta[1] = kI * q * q * zs;
    theta[2] = common * cz;
    theta[3] = -2.0 * c.mu_I * xi * q * q * zs;
    phi[0] = kI * xi * zs;
    phi[1] = cz;
    phi[2] = -(om2 - 2.0 * c.mu_I * xi * xi) * zs;
    phi[3] = 2.0 * kI * c.mu_I * xi * cz;
  } else {
    theta[0] = kI * q * q * zs;
    theta[1] = -xi * cz;
    theta[2] = 2.0 * c.mu_I * xi * q * q * zs;
    theta[3] = common * cz;
    phi[0] = cz;
    phi[1] = -kI * xi * zs;
    phi[2] = -2.0 * kI * c.mu_I * xi * cz;
    phi[3] = -(om2 - 2.0 * c.mu_I * xi * xi) * zs;
  }
}

using ColumnFn = std::function<Vec4c(double)>;

// Propagate corrections w = y - y0 for up to two columns jointly:
//   w' = A(Z) w + [A(Z) - A_deep] y0(Z),  w(-H) = 0.
// The deep-medium part rides in closed form, so recessive column content is
// never entrusted to the march and the homogeneous case stays exact.
struct CorrectionResult {
  Vec4c col0, col1;
};

CorrectionResult propagate_corrections(const ElasticProfile& p, Complex xi, const ColumnFn& y0a,
                                       const ColumnFn& y0b, const OdeOptions& opt) {
  using State = Eigen::Matrix<Complex, 8, 1>;
  const HalfSpaceConstants& c = p.constants;
  const double om2 = c.omega * c.omega;
  const double H = c.H;
  auto rhs = [&](double Z, const State& s) {
    const double mu = p.mu(Z);
    const double la = p.lambda(Z);
    State d;
    const Vec4c base0 = y0a(Z);
    const Vec4c base1 = y0b(Z);
    d.segment<4>(0) = column_rhs(mu, la, om2, xi, s.segment<4>(0)) +
                      column_rhs(mu, la, om2, xi, base0) -
                      column_rhs(c.mu_I, c.lambda_I, om2, xi, base0);
    d.segment<4>(4) = column_rhs(mu, la, om2, xi, s.segment<4>(4)) +
                      column_rhs(mu, la, om2, xi, base1) -
                      column_rhs(c.mu_I, c.lambda_I, om2, xi, base1);
    return d;
  };
  OdeOptions o = opt;
  const double qscale = std::max(1.0, std::abs(xi) + c.omega / std::sqrt(c.mu_I));
  o.initial_step = std::min(H / 16.0, 0.5 / qscale);
  State w = State::Zero();
  w = dopri5(rhs, -H, 0.0, w, o);
  return {w.segment<4>(0), w.segment<4>(4)};
}

FrameColumn to_frame(const Vec4c& st) {
  FrameColumn f;
  f.value = Vec2c(st[0], st[1]);
  f.a = st[2];
  f.b = st[3];
  return f;
}

}  // namespace

UnperturbedSolution unperturbed_jost(double Z, Complex xi, const QuasiMomenta& q, Branch branch,
                                     Sign sign) {
  const double s = sgn(sign);
  const Complex qq = branch == Branch::P ? q.qp : q.qs;
  const Complex e = std::exp(s * kI * Z * qq);
  UnperturbedSolution u;
  if (branch == Branch::P) {
    u.value = Vec2c(xi, s * qq) * e;
  } else {
    u.value = Vec2c(s * qq, -xi) * e;
  }
  u.dvalue = s * kI * qq * u.value;
  return u;
}

Vec4c unperturbed_state(double Z, Complex xi, const QuasiMomenta& q, Branch branch, Sign sign,
                        const HalfSpaceConstants& c) {
  return deep_state(Z, xi, branch == Branch::P ? q.qp : q.qs, branch, sign, c);
}

PropagatedColumn propagate_jost(const ElasticProfile& p, const SpectralPoint& pt, Branch branch,
                                Sign sign, const OdeOptions& opt) {
  const QuasiMomenta q = quasi_momenta(pt, p.constants);
  const Complex qq = branch == Branch::P ? q.qp : q.qs;
  ColumnFn base = [&](double Z) { return deep_state(Z, pt.xi, qq, branch, sign, p.constants); };
  const CorrectionResult w = propagate_corrections(p, pt.xi, base, base, opt);
  PropagatedColumn out;
  out.frame = to_frame((base(0.0) + w.col0).eval());
  out.log_scale = 0.0;
  return out;
}

JostFrame jost_frame(const ElasticProfile& p, const SpectralPoint& pt, const OdeOptions& opt) {
  const QuasiMomenta q = quasi_momenta(pt, p.constants);
  ColumnFn base_p = [&](double Z) {
    return deep_state(Z, pt.xi, q.qp, Branch::P, Sign::Minus, p.constants);
  };
  ColumnFn base_s = [&](double Z) {
    return deep_state(Z, pt.xi, q.qs, Branch::S, Sign::Minus, p.constants);
  };
  const CorrectionResult w = propagate_corrections(p, pt.xi, base_p, base_s, opt);
  const Vec4c colp = base_p(0.0) + w.col0;
  const Vec4c cols = base_s(0.0) + w.col1;
  JostFrame out;
  out.value.col(0) = Vec2c(colp[0], colp[1]);
  out.value.col(1) = Vec2c(cols[0], cols[1]);
  out.tractions(0, 0) = colp[2];
  out.tractions(1, 0) = colp[3];
  out.tractions(0, 1) = cols[2];
  out.tractions(1, 1) = cols[3];
  out.col_log_scale.setZero();
  return out;
}

ThetaPhiFrames theta_phi(const ElasticProfile& p, Complex xi, const OdeOptions& opt) {
  SpectralPoint pt{xi, SheetTag{+1, +1}, CutSide::Below};
  const QuasiMomenta q = quasi_momenta(pt, p.constants);
  if (std::min(std::abs(q.qp), std::abs(q.qs)) < 1e-8)
    throw BranchPointError("too close to branch point for the even/odd split");
  auto split_pair = [&](Branch b, Complex qq) {
    ColumnFn plus = [&, qq](double Z) { return deep_state(Z, xi, qq, b, Sign::Plus, p.constants); };
    ColumnFn minus = [&, qq](double Z) {
      return deep_state(Z, xi, qq, b, Sign::Minus, p.constants);
    };
    const CorrectionResult w = propagate_corrections(p, xi, plus, minus, opt);
    const Vec4c fp = plus(0.0) + w.col0;
    const Vec4c fm = minus(0.0) + w.col1;
    return std::pair<Vec4c, Vec4c>{((fp + fm) * 0.5).eval(), ((fp - fm) / (2.0 * qq)).eval()};
  };
  const auto [tp, pp] = split_pair(Branch::P, q.qp);
  const auto [ts, ps] = split_pair(Branch::S, q.qs);
  ThetaPhiFrames out;
  out.theta_p = to_frame(tp);
  out.phi_p = to_frame(pp);
  out.theta_s = to_frame(ts);
  out.phi_s = to_frame(ps);
  return out;
}

DCoefficients d_coefficients(const ElasticProfile& p, Complex xi, const OdeOptions& opt) {
  const HalfSpaceConstants& c = p.constants;
  c.validate();
  // Principal roots; every entry of the even/odd states is even in q, so the
  // branch choice cannot matter.
  const Complex qp = std::sqrt(Complex(c.omega * c.omega / c.sigma_I(), 0.0) - xi * xi);
  const Complex qs = std::sqrt(Complex(c.omega * c.omega / c.mu_I, 0.0) - xi * xi);

  auto pair_states = [&](Branch b, Complex q) {
    ColumnFn theta = [&, q, b](double Z) {
      Vec4c t, f;
      theta_phi_states(Z, xi, q, b, c, t, f);
      return t;
    };
    ColumnFn phi = [&, q, b](double Z) {
      Vec4c t, f;
      theta_phi_states(Z, xi, q, b, c, t, f);
      return f;
    };
    const CorrectionResult w = propagate_corrections(p, xi, theta, phi, opt);
    Vec4c t0, f0;
    theta_phi_states(0.0, xi, q, b, c, t0, f0);
    return std::pair<Vec4c, Vec4c>{(t0 + w.col0).eval(), (f0 + w.col1).eval()};
  };
  const auto [tp, pp] = pair_states(Branch::P, qp);
  const auto [ts, ps] = pair_states(Branch::S, qs);

  const Complex a_tp = tp[2], b_tp = tp[3];
  const Complex a_pp = pp[2], b_pp = pp[3];
  const Complex a_ts = ts[2], b_ts = ts[3];
  const Complex a_ps = ps[2], b_ps = ps[3];

  DCoefficients dc;
  dc.d[0] = a_tp * b_ts - a_ts * b_tp;
  dc.d[1] = -(a_pp * b_ts - a_ts * b_pp);
  dc.d[2] = -(a_tp * b_ps - a_ps * b_tp);
  dc.d[3] = a_pp * b_ps - a_ps * b_pp;
  dc.log_scale = 0.0;
  const double m = dc.d.cwiseAbs().maxCoeff();
  if (m > 0.0 && std::isfinite(m)) {
    dc.d /= m;
    dc.log_scale = std::log(m);
  }
  return dc;
}

ScaledComplex delta_from_d(const DCoefficients& dc, const QuasiMomenta& q_physical,
                           SheetTag sheet) {
  const Complex qp = static_cast<double>(sheet.sp) * q_physical.qp;
  const Complex qs = static_cast<double>(sheet.ss) * q_physical.qs;
  const Complex v = dc.d[0] + qp * dc.d[1] + qs * dc.d[2] + qp * qs * dc.d[3];
  return ScaledComplex{v, dc.log_scale}.normalized();
}

ScaledComplex rayleigh_determinant_scaled(const ElasticProfile& p, const SpectralPoint& pt,
                                          const OdeOptions& opt) {
  const JostFrame f = jost_frame(p, pt, opt);
  const Complex det = f.tractions(0, 0) * f.tractions(1, 1) - f.tractions(0, 1) * f.tractions(1, 0);
  return ScaledComplex{det, f.col_log_scale[0] + f.col_log_scale[1]}.normalized();
}

Complex rayleigh_determinant(const ElasticProfile& p, const SpectralPoint& pt,
                             const OdeOptions& opt) {
  return rayleigh_determinant_scaled(p, pt, opt).to_complex();
}

ScaledComplex entire_F_scaled(const ElasticProfile& p, Complex xi, const OdeOptions& opt) {
  const HalfSpaceConstants& c = p.constants;
  const DCoefficients dc = d_coefficients(p, xi, opt);
  const Complex d1 = dc.d[0], d2 = dc.d[1], d3 = dc.d[2], d4 = dc.d[3];
  const Complex P = Complex(c.omega * c.omega / c.sigma_I(), 0.0) - xi * xi;  // qP^2
  const Complex S = Complex(c.omega * c.omega / c.mu_I, 0.0) - xi * xi;       // qS^2
  const Complex d1_2 = d1 * d1, d2_2 = d2 * d2, d3_2 = d3 * d3, d4_2 = d4 * d4;
  const Complex F = d1_2 * d1_2 + P * P * d2_2 * d2_2 + S * S * d3_2 * d3_2 +
                    S * S * P * P * d4_2 * d4_2 - 2.0 * P * d1_2 * d2_2 - 2.0 * S * d1_2 * d3_2 -
                    2.0 * S * P * d1_2 * d4_2 - 2.0 * P * S * d2_2 * d3_2 -
                    2.0 * P * P * S * d2_2 * d4_2 - 2.0 * S * S * P * d3_2 * d4_2 +
                    8.0 * P * S * d1 * d2 * d3 * d4;
  return ScaledComplex{F, 4.0 * dc.log_scale}.normalized();
}

Complex entire_F(const ElasticProfile& p, Complex xi, const OdeOptions& opt) {
  return entire_F_scaled(p, xi, opt).to_complex();
}

DeterminantBundle determinant_bundle(const ElasticProfile& p, Complex xi, const OdeOptions& opt) {
  DeterminantBundle out;
  out.d = d_coefficients(p, xi, opt);
  const SpectralPoint phys{xi, SheetTag{+1, +1}, CutSide::Below};
  const QuasiMomenta q = quasi_momenta(phys, p.constants);
  for (int i = 0; i < 4; ++i) out.delta_by_sheet[i] = delta_from_d(out.d, q, kAllSheets[i]);
  out.F = entire_F_scaled(p, xi, opt);
  return out;
}

}  // namespace rayres
