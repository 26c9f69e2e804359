#include "rayres/riemann.hpp"

#include <cmath>
#include <sstream>

namespace rayres {

namespace {

// One quasi-momentum branch. cc = omega^2 / wave-speed^2, sign = requested
// sign of Im q, side used only when the principal root degenerates to the
// real axis (i.e. xi on the cut of this branch).
Complex branch_momentum(Complex xi, double cc, int sign, CutSide side) {
  const Complex q2 = Complex(cc, 0.0) - xi * xi;
  const Complex w = std::sqrt(q2);  // principal root, Re w >= 0
  if (w.imag() == 0.0) {
    const double s = (side == CutSide::Below ? 1.0 : -1.0) * sign;
    return Complex(s * w.real(), 0.0);
  }
  return ((w.imag() > 0.0) == (sign > 0)) ? w : -w;
}

}  // namespace

bool on_any_cut(Complex xi, const HalfSpaceConstants& c) {
  const auto r = branch_radii(c);
  if (xi.imag() == 0.0 && std::abs(xi.real()) <= r.r_minus) return true;
  if (xi.real() == 0.0) return true;  // imaginary axis (origin included)
  return false;
}

bool near_branch_point(Complex xi, const HalfSpaceConstants& c, double radius_factor) {
  const auto r = branch_radii(c);
  const double eps = radius_factor * r.r_minus;
  return std::abs(xi - Complex(r.r_plus, 0)) < eps || std::abs(xi + Complex(r.r_plus, 0)) < eps ||
         std::abs(xi - Complex(r.r_minus, 0)) < eps || std::abs(xi + Complex(r.r_minus, 0)) < eps;
}

QuasiMomenta quasi_momenta(const SpectralPoint& p, const HalfSpaceConstants& c) {
  c.validate();
  if (!std::isfinite(p.xi.real()) || !std::isfinite(p.xi.imag()))
    throw std::invalid_argument("spectral parameter must be finite");
  if (near_branch_point(p.xi, c)) {
    std::ostringstream os;
    os << "branch point: quasi-momenta are not holomorphic at xi = (" << p.xi.real() << ", "
       << p.xi.imag() << ")";
    throw BranchPointError(os.str());
  }
  QuasiMomenta q;
  q.qp = branch_momentum(p.xi, c.omega * c.omega / c.sigma_I(), p.sheet.sp, p.cut_side);
  q.qs = branch_momentum(p.xi, c.omega * c.omega / c.mu_I, p.sheet.ss, p.cut_side);
  return q;
}

std::optional<SheetTag> classify_sheet(const QuasiMomenta& q) {
  if (q.qp.imag() == 0.0 || q.qs.imag() == 0.0) return std::nullopt;
  return SheetTag{q.qp.imag() > 0.0 ? +1 : -1, q.qs.imag() > 0.0 ? +1 : -1};
}

SpectralPoint apply_mapping(const SpectralPoint& p, Mapping which) {
  SpectralPoint out = p;
  switch (which) {
    case Mapping::P: out.sheet = p.sheet.flipped_p(); break;
    case Mapping::S: out.sheet = p.sheet.flipped_s(); break;
    case Mapping::PS: out.sheet = p.sheet.flipped_both(); break;
  }
  return out;
}

SpectralPoint reflect(const SpectralPoint& p) {
  // Same sheet and side: with the positive-real convention on the cut the
  // momenta are even in xi there as well, so q(-xi) = q(xi) holds exactly.
  return {-p.xi, p.sheet, p.cut_side};
}

SpectralPoint conjugate(const SpectralPoint& p, const HalfSpaceConstants& c) {
  if (on_any_cut(p.xi, c))
    throw OnCutError("conjugation is defined by contours avoiding the cuts");
  return {std::conj(p.xi), p.sheet, p.cut_side};
}

AsymptoticCheck asymptotic_check(const SpectralPoint& p, const HalfSpaceConstants& c) {
  const auto r = branch_radii(c);
  if (std::abs(p.xi) < 10.0 * r.r_minus)
    throw std::invalid_argument("asymptotic check requires |xi| >= 10 r_minus");
  if (p.xi.real() < 0.0)
    throw std::invalid_argument("asymptotic check requires Re xi >= 0");
  const QuasiMomenta q = quasi_momenta(p, c);
  const Complex i_xi = Complex(0.0, 1.0) * p.xi;
  const double residual = std::abs(q.qp - static_cast<double>(p.sheet.sp) * i_xi) +
                          std::abs(q.qs - static_cast<double>(p.sheet.ss) * i_xi);
  const double bound = 1.1 * (c.omega * c.omega / c.mu_I) / std::abs(p.xi);
  return {residual, bound};
}

}  // namespace rayres
