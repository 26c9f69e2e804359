#pragma once

#include "rayres/medium.hpp"
#include "rayres/ode.hpp"
#include "rayres/riemann.hpp"
#include "rayres/types.hpp"

namespace rayres {

/// Robin-condition matrix of the transformed problem:
/// [[-theta3, theta2], [xi2_coefficient * xi^2 - theta1, 0]].
struct ThetaMatrix {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double theta3 = 0.0;
  double xi2_coefficient = 2.0;  // 2 mu_I / mu(0)

  Mat2c at(Complex xi) const {
    Mat2c t;
    t << Complex(-theta3, 0.0), Complex(theta2, 0.0),
        xi2_coefficient * xi * xi - theta1, Complex(0.0, 0.0);
    return t;
  }

  static ThetaMatrix from_profile(const ElasticProfile& p);
};

/// Background potential of the transformed system on x >= 0.
Mat2d background_potential(double x, const TransformData& td, const HalfSpaceConstants& c);

/// Coefficient matrices of the three-term Green kernel.
struct GreenKernelParts {
  Mat2d A(double x) const;
  Mat2d B(double y) const;
  Mat2d C() const;
  Mat2d A_dx() const;  // x-derivative of A (constant matrix)

  TransformData td;
  HalfSpaceConstants constants;
};

/// Kernel of the background problem: vanishes on the diagonal, unit
/// x-derivative there, columns solve the background equation.
Mat2c green_kernel(double x, double y, const QuasiMomenta& q, const TransformData& td,
                   const HalfSpaceConstants& c);
Mat2c green_kernel_dx(double x, double y, const QuasiMomenta& q, const TransformData& td,
                      const HalfSpaceConstants& c);

/// Kernel with the leading oscillatory factor removed:
/// green_kernel(x,y) * exp(-i (x-y) qP), assembled in exponential form.
Mat2c faddeev_kernel(double x, double y, const QuasiMomenta& q, const TransformData& td,
                     const HalfSpaceConstants& c);
Mat2c faddeev_kernel_dx(double x, double y, const QuasiMomenta& q, const TransformData& td,
                        const HalfSpaceConstants& c);

/// Deep-region matrix solution (columns P, S) and its derivative, with the
/// e^{+i q x} convention so the physical-sheet columns decay with depth.
struct UnperturbedMatrix {
  Mat2c F;
  Mat2c Fp;
};
UnperturbedMatrix unperturbed_jost_matrix(double x, Complex xi, const QuasiMomenta& q,
                                          const TransformData& td, const HalfSpaceConstants& c);

/// Oscillation-removed (Faddeev) form of the same matrix and derivative.
UnperturbedMatrix faddeev_unperturbed(double x, Complex xi, const QuasiMomenta& q,
                                      const TransformData& td, const HalfSpaceConstants& c);

enum class VolterraMode { Auto, Iterates, Ode };

struct VolterraOptions {
  int nodes_per_panel = 32;
  int panels = 16;            // over [0, H]
  double tol = 1e-12;
  int max_sweeps = 60;
  double crossover = 30.0;    // |xi| H above which Auto switches to Ode
  OdeOptions ode{1e-12, 1e-14};
};

/// Boundary data of the matrix solution of the perturbed transformed
/// problem, normalized per column by exp(col_log_scale).
struct TransformedFrame {
  Mat2c value0;   // F(0)
  Mat2c deriv0;   // F'(0)
  Mat2c jost;     // F'(0) + Theta F(0)
  Vec2d col_log_scale{Vec2d::Zero()};

  ScaledComplex jost_det() const {
    const Complex det = jost(0, 0) * jost(1, 1) - jost(0, 1) * jost(1, 0);
    return ScaledComplex{det, col_log_scale[0] + col_log_scale[1]}.normalized();
  }

  Mat2c materialized(const Mat2c& m) const {
    Mat2c out = m;
    out.col(0) *= std::exp(col_log_scale[0]);
    out.col(1) *= std::exp(col_log_scale[1]);
    return out;
  }
  Mat2c jost_materialized() const { return materialized(jost); }
  Mat2c value0_materialized() const { return materialized(value0); }
  Mat2c deriv0_materialized() const { return materialized(deriv0); }
};

TransformedFrame volterra_solve(const PotentialSpec& V, const TransformData& td,
                                const HalfSpaceConstants& c, const ThetaMatrix& theta,
                                const SpectralPoint& pt, VolterraMode mode = VolterraMode::Auto,
                                const VolterraOptions& opt = {});

/// Pure assembly of the Robin combination.
Mat2c jost_function(const Mat2c& value0, const Mat2c& deriv0, const ThetaMatrix& theta,
                    Complex xi);

/// Left/right factors translating the transformed frame back to the
/// displacement-frame boundary matrix.
Mat2c bridge_A1(Complex xi, const HalfSpaceConstants& c, double mu0, double mu0_dx);
Mat2c bridge_A2(Complex xi, const HalfSpaceConstants& c);
Mat2c bridge_boundary_matrix(const Mat2c& F_theta, Complex xi, const HalfSpaceConstants& c,
                             double mu0, double mu0_dx);

/// Determinant of the bridged boundary matrix as a scaled value:
/// (2 mu(0) omega^4 / (mu_I xi)) * det F_theta.
ScaledComplex bridge_determinant(const TransformedFrame& frame, Complex xi,
                                 const HalfSpaceConstants& c, double mu0);

}  // namespace rayres
