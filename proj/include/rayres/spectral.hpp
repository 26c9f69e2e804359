#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rayres/types.hpp"

namespace rayres {

struct Rect {
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;
  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double diag() const { return std::hypot(width(), height()); }
  Complex center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
  bool contains(Complex z, double margin = 0.0) const {
    return z.real() >= x0 - margin && z.real() <= x1 + margin && z.imag() >= y0 - margin &&
           z.imag() <= y1 + margin;
  }
};

/// Target evaluated during contour work. The side hint applies only when the
/// sample lies exactly on a branch-cut line; entire targets may ignore it.
using TargetFn = std::function<ScaledComplex(Complex xi, CutSide side)>;

/// Geometry of the cut system for sheet-restricted targets. Entire targets
/// use no_cuts(): regions are then processed without decomposition.
struct CutGeometry {
  bool sheet_cuts = false;
  double r_minus = 0.0;  // real cuts live on |Re xi| <= r_minus, Im xi = 0
  static CutGeometry none() { return {false, 0.0}; }
  static CutGeometry sheet(double r_minus) { return {true, r_minus}; }
};

struct WindingOptions {
  int samples_per_edge = 24;
  double base_spacing = 0.2;  // absolute cap on the base sample spacing
  double max_phase_step = 0.5 * kPi;
  double max_log_mag_step = 1.0;
  int max_depth = 48;
};

struct ContourContact : std::runtime_error {
  explicit ContourContact(const std::string& m) : std::runtime_error(m) {}
};

/// Argument-principle winding of the target along the rectangle boundary.
/// Samples on cut lines are evaluated from inside the rectangle.
int winding_number(const TargetFn& f, const Rect& rect, const CutGeometry& cuts,
                   const WindingOptions& opt = {});

enum class ZeroKind { Eigenvalue, Resonance, Cluster, Unclassified };

struct ResonanceRecord {
  Complex xi{0.0, 0.0};
  std::string sheet = "all";
  int multiplicity = 1;
  double residual = 0.0;       // |target| at xi
  ZeroKind kind = ZeroKind::Unclassified;
  bool on_cut = false;

  std::string kind_str() const {
    switch (kind) {
      case ZeroKind::Eigenvalue: return "eigenvalue";
      case ZeroKind::Resonance: return "resonance";
      case ZeroKind::Cluster: return "cluster";
      default: return "unclassified";
    }
  }
};

struct FindOptions {
  WindingOptions winding{};
  double min_cell = 1e-8;
  double newton_step = 1e-7;
  double dedupe_radius = 1e-7;
  int max_nudges = 8;
};

/// Recursive quadrisection search for the zeros of the target inside the
/// rectangle. Sheet-restricted targets are first decomposed along the cut
/// lines so every sub-rectangle carries single-sided boundary values.
std::vector<ResonanceRecord> find_zeros(const TargetFn& f, const Rect& region,
                                        const CutGeometry& cuts, const FindOptions& opt = {});

/// Sheet classification against the per-sheet determinant evaluator. The
/// scale callback provides the local comparison magnitude.
using SheetDeltaFn = std::function<ScaledComplex(Complex xi, SheetTag sheet)>;

ResonanceRecord classify(ResonanceRecord rec, const SheetDeltaFn& delta,
                         const std::function<double(Complex)>& log_scale_of,
                         double rel_tol = 1e-8);

}  // namespace rayres
