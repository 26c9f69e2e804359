#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "rayres/types.hpp"

namespace rayres {

/// Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_n.
struct GaussLegendre {
  std::vector<double> x;
  std::vector<double> w;

  explicit GaussLegendre(int n) : x(n), w(n) {
    if (n < 1) throw std::invalid_argument("quadrature order must be positive");
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p1 = 1.0, p2 = 0.0;
        for (int j = 0; j < n; ++j) {
          const double p3 = p2;
          p2 = p1;
          p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1);
        }
        pp = n * (z * p1 - p2) / (z * z - 1.0);
        const double z1 = z;
        z = z1 - p1 / pp;
        if (std::abs(z - z1) < 1e-15) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
      w[n - 1 - i] = w[i];
    }
  }
};

/// Composite Gauss-Legendre rule over [a, b] split into uniform panels.
struct PanelRule {
  double a = 0.0, b = 0.0;
  int panels = 1;
  int order = 32;
  std::vector<double> nodes;    // ascending, all panels
  std::vector<double> weights;
  std::vector<double> ref;      // reference nodes on [-1, 1]
  std::vector<double> bary;     // barycentric weights for the reference nodes

  PanelRule(double a_, double b_, int panels_, int order_)
      : a(a_), b(b_), panels(panels_), order(order_) {
    if (!(b > a)) throw std::invalid_argument("panel rule needs b > a");
    GaussLegendre gl(order);
    ref = gl.x;
    nodes.reserve(static_cast<size_t>(panels) * order);
    weights.reserve(nodes.capacity());
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      const double lo = a + p * h;
      for (int k = 0; k < order; ++k) {
        nodes.push_back(lo + 0.5 * h * (gl.x[k] + 1.0));
        weights.push_back(0.5 * h * gl.w[k]);
      }
    }
    bary.assign(order, 1.0);
    for (int k = 0; k < order; ++k)
      for (int j = 0; j < order; ++j)
        if (j != k) bary[k] /= (ref[k] - ref[j]);
  }

  double panel_lo(int p) const { return a + p * (b - a) / panels; }
  double panel_hi(int p) const { return a + (p + 1) * (b - a) / panels; }
  int panel_of_node(int k) const { return k / order; }

  /// Lagrange basis values at local coordinate t in [-1, 1].
  void basis_at(double t, std::vector<double>& out) const {
    out.assign(order, 0.0);
    for (int k = 0; k < order; ++k) {
      if (t == ref[k]) {
        out[k] = 1.0;
        return;
      }
    }
    double denom = 0.0;
    for (int k = 0; k < order; ++k) denom += bary[k] / (t - ref[k]);
    for (int k = 0; k < order; ++k) out[k] = (bary[k] / (t - ref[k])) / denom;
  }
};

/// \int_a^b f, scalar complex integrand, fixed composite rule.
inline Complex integrate(const std::function<Complex(double)>& f, double a, double b,
                         int panels = 8, int order = 32) {
  if (a == b) return {0.0, 0.0};
  PanelRule rule(std::min(a, b), std::max(a, b), panels, order);
  Complex acc{0.0, 0.0};
  for (size_t k = 0; k < rule.nodes.size(); ++k) acc += rule.weights[k] * f(rule.nodes[k]);
  return (b > a) ? acc : -acc;
}

inline double integrate_real(const std::function<double(double)>& f, double a, double b,
                             int panels = 8, int order = 32) {
  return integrate([&](double t) { return Complex(f(t), 0.0); }, a, b, panels, order).real();
}

}  // namespace rayres
