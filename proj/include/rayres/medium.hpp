#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rayres/types.hpp"

namespace rayres {

/// Deep-medium data: density-normalized Lame parameters of the homogeneous
/// half-space below depth Z = -H, and the angular frequency.
struct HalfSpaceConstants {
  double mu_I = 1.0;
  double lambda_I = 1.0;
  double omega = 1.0;
  double H = 1.0;

  double sigma_I() const { return lambda_I + 2.0 * mu_I; }

  void validate() const;
};

struct BranchRadii {
  double r_plus;   // omega / sqrt(lambda_I + 2 mu_I)
  double r_minus;  // omega / sqrt(mu_I)
};

BranchRadii branch_radii(const HalfSpaceConstants& c);

using ScalarFn = std::function<double(double)>;

/// Depth profile of the Lame parameters with analytic derivatives.
/// All callables take the depth coordinate Z <= 0 and must be pure.
struct ElasticProfile {
  ScalarFn mu, mu_dz, mu_dzz;
  ScalarFn lambda, lambda_dz, lambda_dzz;
  HalfSpaceConstants constants;

  double mu0() const { return mu(0.0); }
  double lambda0() const { return lambda(0.0); }
  /// d(mu)/dx at the surface in the downward coordinate x = -Z.
  double mu0_dx() const { return -mu_dz(0.0); }
  /// d^2(1/mu)/dx^2 at the surface (even derivative order, same in Z and x).
  double inv_mu_dxx0() const {
    const double m = mu(0.0), m1 = mu_dz(0.0), m2 = mu_dzz(0.0);
    return (2.0 * m1 * m1 - m * m2) / (m * m * m);
  }
};

ElasticProfile make_constant_profile(const HalfSpaceConstants& c);

/// mu(Z) = mu_I + amp_mu * (Z + H)^power for Z > -H, constant below; same for lambda.
ElasticProfile make_polynomial_bump_profile(const HalfSpaceConstants& c, double amp_mu,
                                            double amp_lambda, int power = 2);

/// Natural cubic splines through (z_k, mu_k), (z_k, lambda_k) on [-H, 0],
/// clamped to the half-space constants below -H.
ElasticProfile make_spline_profile(const HalfSpaceConstants& c, std::vector<double> z,
                                   std::vector<double> mu, std::vector<double> lambda);

struct ProfileIssue {
  bool error = true;  // false = warning
  std::string code;
  std::string message;
  double depth = 0.0;
};

struct ValidationReport {
  std::vector<ProfileIssue> issues;
  bool valid() const {
    for (const auto& i : issues)
      if (i.error) return false;
    return true;
  }
};

struct ValidationOptions {
  int samples = 400;
  double fd_step_first = 1e-5;
  double fd_step_second = 1e-4;
  double fd_rel_tol = 1e-6;
  double homogeneity_rel_tol = 1e-12;
};

ValidationReport validate_profile(const ElasticProfile& p, const ValidationOptions& opt = {});

/// Transform-side configuration: the unimodular boundary matrix of the
/// change of variables, stored at depth x = H, plus derived constants.
struct TransformData {
  double g11 = 1.0, g12 = 0.0, g21 = 0.0, g22 = 1.0;  // values at x = H
  double c_I = 0.0, sigma_I = 0.0, rho = 0.0;

  static TransformData from_matrix(const HalfSpaceConstants& c, double g11, double g12,
                                   double g21, double g22);
  /// G^H = identity.
  static TransformData identity_anchor(const HalfSpaceConstants& c);
  /// Matrix normalized to the identity at the surface x = 0; this is the
  /// choice consistent with the homogeneous medium.
  static TransformData surface_normalized(const HalfSpaceConstants& c);

  double g21_at(double x) const { return -0.5 * c_I * g11 * (x - H_) + g21; }
  double g22_at(double x) const { return -0.5 * c_I * g12 * (x - H_) + g22; }
  double depth() const { return H_; }

 private:
  double H_ = 1.0;
};

using MatrixFn = std::function<Mat2d(double)>;

/// Perturbation of the transformed problem: 2x2 matrix potential supported
/// in [0, H].
struct PotentialSpec {
  MatrixFn V;
  double H = 1.0;
  double epsilon = 0.1;
  bool generic = false;

  static PotentialSpec zero(double H);
  /// Component-wise quartic bump amp_ij * ((x-x0)(x1-x))^2 / max on [x0, x1].
  static PotentialSpec bump(const Mat2d& amplitudes, double x0, double x1, double H,
                            double epsilon, bool generic = false);

  double l1_norm() const;  // \int_0^H max-norm
  bool is_zero() const;
};

ValidationReport validate_potential(const PotentialSpec& v, int samples = 400);

}  // namespace rayres
