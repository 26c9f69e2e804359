#pragma once

#include <array>

#include "rayres/medium.hpp"
#include "rayres/ode.hpp"
#include "rayres/riemann.hpp"
#include "rayres/types.hpp"

namespace rayres {

enum class Branch { P, S };
enum class Sign { Plus, Minus };

/// One propagated solution column: displacement components and the two
/// surface traction functionals a, b evaluated at the current depth.
struct FrameColumn {
  Vec2c value{Vec2c::Zero()};   // (phi1, phi3)
  Complex a{0.0, 0.0};
  Complex b{0.0, 0.0};
};

/// Explicit deep-medium solution and its Z-derivative at depth Z.
struct UnperturbedSolution {
  Vec2c value;
  Vec2c dvalue;
};

UnperturbedSolution unperturbed_jost(double Z, Complex xi, const QuasiMomenta& q, Branch branch,
                                     Sign sign);

/// Full state (phi1, phi3, a, b) of the deep-medium solution at depth Z.
Vec4c unperturbed_state(double Z, Complex xi, const QuasiMomenta& q, Branch branch, Sign sign,
                        const HalfSpaceConstants& c);

struct PropagatedColumn {
  FrameColumn frame;
  double log_scale = 0.0;  // true column = frame * exp(log_scale)
};

/// Propagates the deep-medium solution from Z = -H to the surface through
/// the inhomogeneous layer.
PropagatedColumn propagate_jost(const ElasticProfile& p, const SpectralPoint& pt, Branch branch,
                                Sign sign, const OdeOptions& opt = {});

/// Both decaying-normalized columns and their tractions at the surface:
/// tractions row 1 = a(f_P^-), a(f_S^-); row 2 = b(f_P^-), b(f_S^-).
struct JostFrame {
  Mat2c value;
  Mat2c tractions;
  Vec2d col_log_scale{Vec2d::Zero()};
};

JostFrame jost_frame(const ElasticProfile& p, const SpectralPoint& pt, const OdeOptions& opt = {});

/// Even/odd combinations of the two propagated solutions per branch,
/// materialized at the surface.
struct ThetaPhiFrames {
  FrameColumn theta_p, phi_p, theta_s, phi_s;
};

ThetaPhiFrames theta_phi(const ElasticProfile& p, Complex xi, const OdeOptions& opt = {});

/// The four entire coefficients of the determinant's quasi-momentum
/// expansion, as scaled values (true d_i = d[i] * exp(log_scale)).
struct DCoefficients {
  Vec4c d{Vec4c::Zero()};
  double log_scale = 0.0;
};

DCoefficients d_coefficients(const ElasticProfile& p, Complex xi, const OdeOptions& opt = {});

/// d1 + qP d2 + qS d3 + qP qS d4 with signs applied per the sheet tag;
/// q holds the physical-sheet momenta.
ScaledComplex delta_from_d(const DCoefficients& dc, const QuasiMomenta& q_physical, SheetTag sheet);

/// Determinant of the traction matrix of the two propagated columns, with
/// the point's sheet-consistent momenta.
ScaledComplex rayleigh_determinant_scaled(const ElasticProfile& p, const SpectralPoint& pt,
                                          const OdeOptions& opt = {});
Complex rayleigh_determinant(const ElasticProfile& p, const SpectralPoint& pt,
                             const OdeOptions& opt = {});

/// Product of the determinant over the four sheets, evaluated through the
/// expanded polynomial in (d_i, q_P^2, q_S^2); single-valued in xi.
ScaledComplex entire_F_scaled(const ElasticProfile& p, Complex xi, const OdeOptions& opt = {});
Complex entire_F(const ElasticProfile& p, Complex xi, const OdeOptions& opt = {});

struct DeterminantBundle {
  DCoefficients d;
  std::array<ScaledComplex, 4> delta_by_sheet;  // ++, +-, -+, --
  ScaledComplex F;
};

DeterminantBundle determinant_bundle(const ElasticProfile& p, Complex xi,
                                     const OdeOptions& opt = {});

}  // namespace rayres
