#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace rayres {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat2d = Eigen::Matrix2d;
using Vec2c = Eigen::Vector2cd;
using Vec2d = Eigen::Vector2d;
using Vec4c = Eigen::Vector4cd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Complex value stored as value * exp(log_scale). Determinant factors grow
/// like exp(c * |xi| * H), so products are carried in this form and only
/// materialized when safe.
struct ScaledComplex {
  Complex value{0.0, 0.0};
  double log_scale = 0.0;

  static ScaledComplex from(Complex v) { return {v, 0.0}; }

  ScaledComplex normalized() const {
    const double m = std::abs(value);
    if (m == 0.0 || !std::isfinite(m)) return {value, log_scale};
    return {value / m, log_scale + std::log(m)};
  }

  double log_abs() const {
    const double m = std::abs(value);
    if (m == 0.0) return -std::numeric_limits<double>::infinity();
    return std::log(m) + log_scale;
  }

  Complex to_complex() const {
    if (value == Complex(0.0, 0.0)) return value;
    const double l = log_abs();
    if (l > 700.0) {
      const Complex u = value / std::abs(value);
      return u * std::numeric_limits<double>::infinity();
    }
    return value * std::exp(log_scale);
  }

  ScaledComplex operator*(const ScaledComplex& o) const {
    return ScaledComplex{value * o.value, log_scale + o.log_scale}.normalized();
  }
  ScaledComplex operator*(Complex c) const { return ScaledComplex{value * c, log_scale}.normalized(); }
  ScaledComplex operator/(const ScaledComplex& o) const {
    return ScaledComplex{value / o.value, log_scale - o.log_scale}.normalized();
  }
  ScaledComplex operator-(const ScaledComplex& o) const {
    const double s = std::max(log_scale, o.log_scale);
    return ScaledComplex{value * std::exp(log_scale - s) - o.value * std::exp(o.log_scale - s), s}
        .normalized();
  }
  ScaledComplex operator+(const ScaledComplex& o) const {
    const double s = std::max(log_scale, o.log_scale);
    return ScaledComplex{value * std::exp(log_scale - s) + o.value * std::exp(o.log_scale - s), s}
        .normalized();
  }
};

/// Relative distance between two scaled values, robust to large common scales.
inline double scaled_rel_diff(const ScaledComplex& a, const ScaledComplex& b) {
  const double s = std::max(a.log_scale, b.log_scale);
  const Complex av = a.value * std::exp(a.log_scale - s);
  const Complex bv = b.value * std::exp(b.log_scale - s);
  const double denom = std::max(std::abs(av), std::abs(bv));
  if (denom == 0.0) return 0.0;
  return std::abs(av - bv) / denom;
}

/// Which side of a branch cut a point on the cut is evaluated from.
/// Below encodes the limit x - i0 on the real cuts and the limit from
/// Re(xi) < 0 on the imaginary-axis cut.
enum class CutSide { Below, Above };

/// Branch determination of the two quasi-momenta: sp = sign of Im q_P,
/// ss = sign of Im q_S. (+,+) is the physical sheet.
struct SheetTag {
  int sp = +1;
  int ss = +1;

  bool physical() const { return sp > 0 && ss > 0; }
  SheetTag flipped_p() const { return {-sp, ss}; }
  SheetTag flipped_s() const { return {sp, -ss}; }
  SheetTag flipped_both() const { return {-sp, -ss}; }

  std::string str() const {
    std::string out;
    out += (sp > 0 ? '+' : '-');
    out += (ss > 0 ? '+' : '-');
    return out;
  }

  static SheetTag parse(const std::string& s) {
    if (s.size() != 2 || (s[0] != '+' && s[0] != '-') || (s[1] != '+' && s[1] != '-'))
      throw std::invalid_argument("sheet tag must be one of ++, +-, -+, --");
    return {s[0] == '+' ? +1 : -1, s[1] == '+' ? +1 : -1};
  }

  bool operator==(const SheetTag& o) const { return sp == o.sp && ss == o.ss; }
};

inline const SheetTag kAllSheets[4] = {{+1, +1}, {+1, -1}, {-1, +1}, {-1, -1}};

/// A point of the four-sheeted surface: base value, sheet tag, and the
/// side convention used only when xi lies exactly on a cut.
struct SpectralPoint {
  Complex xi{0.0, 0.0};
  SheetTag sheet{};
  CutSide cut_side = CutSide::Below;
};

struct QuasiMomenta {
  Complex qp{0.0, 0.0};
  Complex qs{0.0, 0.0};
};

/// sin(z)/z, series near the origin so the removable singularity stays smooth.
inline Complex csinc(Complex z) {
  if (std::abs(z) < 1e-3) {
    const Complex z2 = z * z;
    return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0));
  }
  return std::sin(z) / z;
}

struct BranchPointError : std::runtime_error {
  explicit BranchPointError(const std::string& m) : std::runtime_error(m) {}
};

struct OnCutError : std::runtime_error {
  explicit OnCutError(const std::string& m) : std::runtime_error(m) {}
};

}  // namespace rayres
