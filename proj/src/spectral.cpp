#include "rayres/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace rayres {

namespace {

struct EdgeSample {
  Complex z;
  ScaledComplex f;
};

// Evaluation along a rectangle boundary. Samples landing exactly on a cut
// line (Im = 0 or Re = 0) are displaced infinitesimally into the rectangle,
// so the contour always carries one-sided analytic boundary values and the
// argument principle applies to the enclosed branch.
class ContourEvaluator {
 public:
  ContourEvaluator(const TargetFn& f, const Rect& r) : f_(f), rect_(r) {}

  ScaledComplex eval(Complex z) const {
    const double d = 1e-12 * std::max(1.0, std::abs(z));
    if (z.imag() == 0.0 && rect_.y0 != rect_.y1)
      z += Complex(0.0, rect_.y0 == 0.0 ? d : -d);
    if (z.real() == 0.0 && rect_.x0 != rect_.x1)
      z += Complex(rect_.x0 == 0.0 ? d : -d, 0.0);
    try {
      return f_(z, CutSide::Below);
    } catch (const BranchPointError&) {
      // contour sample hit a branch point; dodge toward the rect interior
      const Complex dir = rect_.center() - z;
      const double n = std::abs(dir);
      const Complex step = (n > 0.0 ? dir / n : Complex(0.0, 1.0)) * 1e-10 *
                           std::max(1.0, std::abs(z));
      return f_(z + step, CutSide::Below);
    }
  }

 private:
  const TargetFn& f_;
  Rect rect_;
};

struct PhaseAccumulator {
  const ContourEvaluator& ev;
  const WindingOptions& opt;
  // A chord midpoint dipping this far (in log) below both endpoints means a
  // zero sits on the contour for practical purposes. The test is local, so
  // targets whose modulus legitimately spans many orders along the contour
  // do not false-trigger.
  static constexpr double kDipLog = 25.0;

  // Every chord is judged with its midpoint evaluated: a multiple zero
  // straddled symmetrically aliases the endpoint phase step to ~0 with equal
  // endpoint moduli, and is only visible from inside the chord. With the
  // midpoint inspected, hiding a full turn needs the zero on the chord's
  // perpendicular bisector at a distance where the modulus-step bound
  // triggers first.
  double accumulate(Complex z0, const ScaledComplex& f0, Complex z1, const ScaledComplex& f1,
                    int depth) const {
    if (!std::isfinite(f0.log_abs()) || !std::isfinite(f1.log_abs()))
      throw ContourContact("target vanishes at a contour sample");
    if (depth >= opt.max_depth)
      throw ContourContact("phase step did not resolve under subdivision");
    if (std::abs(z1 - z0) < 1e-11 * (1.0 + std::abs(z0)))
      throw ContourContact("zero within resolution distance of the contour");
    const Complex zm = 0.5 * (z0 + z1);
    const ScaledComplex fm = ev.eval(zm);
    if (fm.log_abs() < std::min(f0.log_abs(), f1.log_abs()) - kDipLog)
      throw ContourContact("zero on or near contour");
    const double left = std::arg(fm.value / f0.value);
    const double right = std::arg(f1.value / fm.value);
    const double mag_left = std::abs(fm.log_abs() - f0.log_abs());
    const double mag_right = std::abs(f1.log_abs() - fm.log_abs());
    if (std::abs(left) <= opt.max_phase_step && std::abs(right) <= opt.max_phase_step &&
        mag_left <= opt.max_log_mag_step && mag_right <= opt.max_log_mag_step)
      return left + right;
    return accumulate(z0, f0, zm, fm, depth + 1) + accumulate(zm, fm, z1, f1, depth + 1);
  }
};

}  // namespace

int winding_number(const TargetFn& f, const Rect& rect, const CutGeometry& cuts,
                   const WindingOptions& opt) {
  (void)cuts;
  ContourEvaluator ev(f, rect);
  std::vector<EdgeSample> ring;
  auto push_edge = [&](Complex a, Complex b) {
    const int n = std::max<int>(
        opt.samples_per_edge,
        static_cast<int>(std::ceil(std::abs(b - a) / std::max(opt.base_spacing, 1e-12))));
    for (int k = 0; k < n; ++k) {
      const double t = static_cast<double>(k) / n;
      const Complex z = a + t * (b - a);
      ring.push_back({z, ev.eval(z)});
    }
  };
  const Complex c00(rect.x0, rect.y0), c10(rect.x1, rect.y0), c11(rect.x1, rect.y1),
      c01(rect.x0, rect.y1);
  push_edge(c00, c10);
  push_edge(c10, c11);
  push_edge(c11, c01);
  push_edge(c01, c00);
  ring.push_back(ring.front());

  PhaseAccumulator acc{ev, opt};
  double total = 0.0;
  for (size_t k = 0; k + 1 < ring.size(); ++k)
    total += acc.accumulate(ring[k].z, ring[k].f, ring[k + 1].z, ring[k + 1].f, 0);
  const double w = total / (2.0 * kPi);
  const double rounded = std::round(w);
  if (std::abs(w - rounded) > 0.25)
    throw ContourContact("winding did not settle to an integer");
  return static_cast<int>(rounded);
}

namespace {

struct Finder {
  const TargetFn& f;
  FindOptions opt;
  std::vector<ResonanceRecord> records;

  ScaledComplex eval_plain(Complex z) const { return f(z, CutSide::Below); }

  // multiplicity-aware Newton with central-difference derivative
  std::optional<Complex> refine(Complex z, int mult, const Rect& cell) const {
    const Rect grown{cell.x0 - 0.5 * cell.width(), cell.x1 + 0.5 * cell.width(),
                     cell.y0 - 0.5 * cell.height(), cell.y1 + 0.5 * cell.height()};
    for (int it = 0; it < 80; ++it) {
      const double h = opt.newton_step * std::max(1.0, std::abs(z));
      const ScaledComplex fz = eval_plain(z);
      const ScaledComplex fp = eval_plain(z + Complex(h, 0.0));
      const ScaledComplex fm = eval_plain(z - Complex(h, 0.0));
      const ScaledComplex deriv = (fp - fm) * Complex(1.0 / (2.0 * h), 0.0);
      if (deriv.value == Complex(0.0, 0.0)) return std::nullopt;
      const ScaledComplex ratio = fz / deriv;
      const Complex step = -static_cast<double>(mult) * ratio.to_complex();
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return std::nullopt;
      z += step;
      if (!grown.contains(z)) return std::nullopt;
      if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(z))) {
        // accept only if the root actually sits in this cell, so neighbor
        // cells cannot double-claim it
        if (!cell.contains(z, 1e-3 * cell.diag())) return std::nullopt;
        return z;
      }
    }
    return std::nullopt;
  }

  int winding_with_retry(Rect cell, const CutGeometry& cuts) const {
    for (int k = 0; k <= opt.max_nudges; ++k) {
      try {
        return winding_number(f, cell, cuts, opt.winding);
      } catch (const ContourContact&) {
        if (k == opt.max_nudges) throw;
        // deterministic inward shrink; interior splits are jittered instead
        const double fx = 1e-4 * (k + 1) * cell.width();
        const double fy = 1e-4 * (k + 1) * cell.height();
        cell = Rect{cell.x0 + fx, cell.x1 - fx, cell.y0 + fy, cell.y1 - fy};
      }
    }
    throw ContourContact("failed to separate a zero from the contour");
  }

  void emit(Complex z, int mult, bool cluster, const CutGeometry& cuts) {
    ResonanceRecord rec;
    rec.xi = z;
    rec.multiplicity = mult;
    rec.residual = std::exp(eval_plain(z).log_abs());
    rec.kind = cluster ? ZeroKind::Cluster : ZeroKind::Unclassified;
    rec.on_cut = cuts.sheet_cuts &&
                 ((z.imag() == 0.0 && std::abs(z.real()) <= cuts.r_minus) || z.real() == 0.0);
    records.push_back(rec);
  }

  // quadrisection with deterministic jitter when a split line touches a zero
  void process(const Rect& cell, const CutGeometry& cuts, int depth, int known_w = -1) {
    int w = known_w;
    if (w < 0) {
      try {
        w = winding_with_retry(cell, cuts);
      } catch (const ContourContact&) {
        if (cell.diag() < 4.0 * opt.min_cell) {
          emit(cell.center(), 1, true, cuts);
          return;
        }
        throw;
      }
    }
    if (w == 0) return;

    if (w == 1) {
      if (auto z = refine(cell.center(), 1, cell)) {
        emit(*z, 1, false, cuts);
        return;
      }
    } else if (auto z = refine(cell.center(), w, cell)) {
      // accept a coincident multiple zero once it is isolated in this cell
      const double box = std::max(4.0 * opt.min_cell, 1e-5 * cell.diag());
      Rect check{z->real() - box, z->real() + box, z->imag() - box, z->imag() + box};
      try {
        if (cell.contains(*z) && winding_number(f, check, cuts, opt.winding) == w) {
          emit(*z, w, false, cuts);
          return;
        }
      } catch (const ContourContact&) {
      }
    }

    if (std::min(cell.width(), cell.height()) <= opt.min_cell || depth > 60) {
      emit(cell.center(), w, true, cuts);
      return;
    }

    // split into four; jitter the cross point until children windings resolve
    const double jit[9] = {0.0, 0.013, -0.017, 0.029, -0.037, 0.051, -0.067, 0.083, -0.097};
    for (int k = 0; k < 9; ++k) {
      const double cx = 0.5 * (cell.x0 + cell.x1) + jit[k] * cell.width();
      const double cy = 0.5 * (cell.y0 + cell.y1) + jit[k] * cell.height();
      const Rect children[4] = {{cell.x0, cx, cell.y0, cy},
                                {cx, cell.x1, cell.y0, cy},
                                {cell.x0, cx, cy, cell.y1},
                                {cx, cell.x1, cy, cell.y1}};
      int sum = 0;
      int wc[4];
      bool ok = true;
      for (int i = 0; i < 4; ++i) {
        try {
          wc[i] = winding_number(f, children[i], cuts, opt.winding);
          sum += wc[i];
        } catch (const ContourContact&) {
          ok = false;
          break;
        }
      }
      if (!ok || sum != w) continue;
      for (int i = 0; i < 4; ++i)
        if (wc[i] > 0) process(children[i], cuts, depth + 1, wc[i]);
      return;
    }
    emit(cell.center(), w, true, cuts);
  }
};

// Split a region along the cut lines so that every piece carries one-sided
// boundary values: vertical split at Re = 0, horizontal split at Im = 0
// wherever the piece overlaps |Re| < r_minus, and a seam at Re = +-r_minus
// so the off-cut real axis stays inside ordinary cells.
std::vector<Rect> decompose(const Rect& region, const CutGeometry& cuts) {
  std::vector<Rect> vertical;
  if (!cuts.sheet_cuts) return {region};
  const double s = 1e-9 * std::max(1.0, cuts.r_minus);
  std::vector<double> xs = {region.x0, region.x1};
  for (double x : {-cuts.r_minus - s, 0.0, cuts.r_minus + s})
    if (x > region.x0 + s && x < region.x1 - s) xs.push_back(x);
  std::sort(xs.begin(), xs.end());
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    vertical.push_back({xs[i], xs[i + 1], region.y0, region.y1});

  std::vector<Rect> out;
  for (const Rect& r : vertical) {
    const bool over_cut = std::min(std::abs(r.x0), std::abs(r.x1)) < cuts.r_minus ||
                          (r.x0 < 0.0 && r.x1 > 0.0);
    if (over_cut && r.y0 < 0.0 && r.y1 > 0.0) {
      out.push_back({r.x0, r.x1, r.y0, 0.0});
      out.push_back({r.x0, r.x1, 0.0, r.y1});
    } else {
      out.push_back(r);
    }
  }
  return out;
}

}  // namespace

std::vector<ResonanceRecord> find_zeros(const TargetFn& f, const Rect& region,
                                        const CutGeometry& cuts, const FindOptions& opt) {
  Finder finder{f, opt, {}};
  for (const Rect& piece : decompose(region, cuts)) {
    if (piece.width() <= 0.0 || piece.height() <= 0.0) continue;
    finder.process(piece, cuts, 0);
  }

  auto& recs = finder.records;
  std::sort(recs.begin(), recs.end(), [](const ResonanceRecord& a, const ResonanceRecord& b) {
    if (a.xi.real() != b.xi.real()) return a.xi.real() < b.xi.real();
    return a.xi.imag() < b.xi.imag();
  });
  std::vector<ResonanceRecord> deduped;
  for (const auto& r : recs) {
    bool merged = false;
    for (auto& d : deduped) {
      if (std::abs(d.xi - r.xi) < opt.dedupe_radius) {
        d.multiplicity = std::max(d.multiplicity, r.multiplicity);
        d.residual = std::min(d.residual, r.residual);
        merged = true;
        break;
      }
    }
    if (!merged) deduped.push_back(r);
  }
  return deduped;
}

ResonanceRecord classify(ResonanceRecord rec, const SheetDeltaFn& delta,
                         const std::function<double(Complex)>& log_scale_of, double rel_tol) {
  const double scale_log = log_scale_of(rec.xi);
  std::string matched;
  bool physical = false;
  for (const SheetTag& s : kAllSheets) {
    const double la = delta(rec.xi, s).log_abs();
    if (la <= scale_log + std::log(rel_tol)) {
      if (!matched.empty()) matched += ",";
      matched += s.str();
      physical = physical || s.physical();
    }
  }
  if (matched.empty())
    throw std::runtime_error("inconsistent zero: no sheet determinant vanishes at the located root");
  rec.sheet = matched;
  rec.kind = physical ? ZeroKind::Eigenvalue : ZeroKind::Resonance;
  return rec;
}

}  // namespace rayres
