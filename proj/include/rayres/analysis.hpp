#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rayres/medium.hpp"
#include "rayres/pm_transform.hpp"
#include "rayres/rayleigh_ode.hpp"
#include "rayres/riemann.hpp"
#include "rayres/spectral.hpp"
#include "rayres/types.hpp"

namespace rayres {

/// Growth weight of the transformed kernel: 0 on the upper sheets,
/// -2 Im q_P on the lower ones.
double gamma_bound(const SpectralPoint& p, const HalfSpaceConstants& c);

/// Equivalent three-way max formula, for cross-checking.
double gamma_max_formula(const QuasiMomenta& q);

double zeta_p(const QuasiMomenta& q);          // Im qP + |Im qP|
double zeta_p_minus_s(const QuasiMomenta& q);  // Im(qP - qS) + |Im(qP - qS)|

/// Exponential moments of the potential components that drive the lower-sheet
/// determinant growth.
Complex script_A(Complex xi, const PotentialSpec& V, const TransformData& td,
                 const HalfSpaceConstants& c, double mu0, int quad_panels = 24,
                 int quad_order = 32);
Complex script_AP(Complex xi, const PotentialSpec& V, const TransformData& td,
                  const HalfSpaceConstants& c, double mu0, int quad_panels = 24,
                  int quad_order = 32);
Complex script_AS(Complex xi, const PotentialSpec& V, const TransformData& td,
                  const HalfSpaceConstants& c, double mu0, double theta2, int quad_panels = 24,
                  int quad_order = 32);

/// Single-valued product-determinant evaluator; either frame can provide it.
struct FEvaluator {
  std::function<ScaledComplex(Complex)> F;
  std::function<ScaledComplex(Complex, SheetTag, CutSide)> delta;
  std::function<double(Complex)> local_log_scale;  // log max(1, |d1|-like scale)
};

FEvaluator displacement_evaluator(const ElasticProfile& p, const OdeOptions& opt = {});
FEvaluator pm_evaluator(const PotentialSpec& V, const TransformData& td,
                        const HalfSpaceConstants& c, const ThetaMatrix& theta,
                        VolterraMode mode = VolterraMode::Auto, const VolterraOptions& opt = {});

struct RayFit {
  Complex direction;
  double slope = 0.0;             // d log|F| / d |Re xi| (or /d|xi| on the imaginary ray)
  double prefactor_exponent = 0.0;
  double slope_window_a = 0.0;
  double slope_window_b = 0.0;
  double confidence_width = 0.0;
  bool windows_agree = false;
  bool pass_8H = false;
  bool pass_12H = false;
  std::vector<std::pair<double, double>> samples;  // (|xi|, log|F|)
};

struct GrowthReport {
  std::vector<RayFit> rays;
  double H = 0.0;
  bool pass_8H() const {
    for (const auto& r : rays)
      if (!r.pass_8H) return false;
    return !rays.empty();
  }
  bool pass_12H() const {
    for (const auto& r : rays)
      if (!r.pass_12H) return false;
    return !rays.empty();
  }
};

GrowthReport growth_fit(const FEvaluator& ev, double H, const std::vector<Complex>& rays,
                        const std::vector<double>& radii, double slack = 0.05);

struct CartwrightReport {
  double rho_plus_hat = 0.0;
  double rho_minus_hat = 0.0;
  std::vector<double> poisson_windows;     // T values
  std::vector<double> poisson_integrals;   // integral over [-T, T]
  bool increments_decreasing = false;
  bool pass(double H, double slack = 0.05) const {
    return rho_plus_hat <= 8.0 * H * (1.0 + slack) && rho_minus_hat <= 8.0 * H * (1.0 + slack);
  }
};

CartwrightReport cartwright_indices(const FEvaluator& ev, double H,
                                    const std::vector<double>& y_schedule);

struct CountReport {
  std::vector<double> radii;
  std::vector<int> n_plus;    // zeros with Re xi > 0, |xi| <= r
  std::vector<int> n_minus;   // Re xi < 0
  std::vector<int> n_axis;    // Re xi == 0
  std::vector<double> bound;  // 8 H r / pi
  std::map<double, std::vector<int>> outside_sectors;  // delta -> counts per radius
  int winding_total = 0;
  int list_total = 0;
  bool monotone = true;

  bool within_bound(double slack = 0.2) const {
    for (size_t i = 0; i < radii.size(); ++i)
      if (n_plus[i] > bound[i] * (1.0 + slack) + 1e-9 ||
          n_minus[i] > bound[i] * (1.0 + slack) + 1e-9)
        return false;
    return true;
  }
};

CountReport levinson_counts(const std::vector<ResonanceRecord>& zeros,
                            const std::vector<double>& radii, double H,
                            const std::vector<double>& deltas = {0.1, 0.2});

struct ForbiddenReport {
  double c_fit = 0.0;
  std::vector<double> contributions;  // |xi_n| exp(-2H |Re xi_n|)
  std::vector<size_t> violations;
  bool spread_ok = true;
  bool pass() const { return violations.empty(); }
};

ForbiddenReport forbidden_domain_check(const std::vector<ResonanceRecord>& zeros, double H);

}  // namespace rayres
