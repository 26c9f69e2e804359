#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rayres/types.hpp"

namespace rayres {

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0 = automatic
  long max_steps = 2'000'000;
};

struct OdeStepUnderflow : std::runtime_error {
  double t_reached;
  OdeStepUnderflow(const std::string& m, double t) : std::runtime_error(m), t_reached(t) {}
};

/// Dormand-Prince 5(4) embedded pair for complex Eigen states.
/// Integrates y' = f(t, y) from t0 to t1 (either direction).
template <class State, class Rhs>
State dopri5(Rhs&& f, double t0, double t1, State y, const OdeOptions& opt = {}) {
  if (t0 == t1) return y;
  const double dir = (t1 > t0) ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);

  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  // fifth-order minus embedded fourth-order weights
  constexpr double e1 = b1 - 5179.0 / 57600, e3 = b3 - 7571.0 / 16695, e4 = b4 - 393.0 / 640,
                   e5 = b5 + 92097.0 / 339200, e6 = b6 - 187.0 / 2100, e7 = -1.0 / 40;

  double t = t0;
  double h = opt.initial_step != 0.0 ? std::abs(opt.initial_step) : span / 64.0;
  h = std::min(h, span);

  State k1 = f(t, y);
  const double hmin_floor = span * 1e-15;

  for (long step = 0; step < opt.max_steps; ++step) {
    if ((t1 - t) * dir <= 0.0) return y;
    h = std::min(h, std::abs(t1 - t));
    const double hd = h * dir;

    State k2 = f(t + c2 * hd, y + hd * (a21 * k1));
    State k3 = f(t + c3 * hd, y + hd * (a31 * k1 + a32 * k2));
    State k4 = f(t + c4 * hd, y + hd * (a41 * k1 + a42 * k2 + a43 * k3));
    State k5 = f(t + c5 * hd, y + hd * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    State k6 = f(t + hd, y + hd * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    State ynew = y + hd * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    State k7 = f(t + hd, ynew);
    State err = hd * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double sum = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double q = std::abs(err[i]) / sc;
      sum += q * q;
    }
    const double enorm = std::sqrt(sum / static_cast<double>(y.size()));

    if (enorm <= 1.0) {
      t += hd;
      y = ynew;
      k1 = k7;  // FSAL
      const double grow = (enorm == 0.0) ? 5.0 : 0.9 * std::pow(enorm, -0.2);
      h *= std::clamp(grow, 0.2, 5.0);
    } else {
      h *= std::clamp(0.9 * std::pow(enorm, -0.2), 0.1, 0.9);
      if (h < hmin_floor)
        throw OdeStepUnderflow("integrator step underflow at t = " + std::to_string(t), t);
    }
  }
  throw OdeStepUnderflow("integrator exceeded max step count at t = " + std::to_string(t), t);
}

}  // namespace rayres
