#pragma once

#include <optional>

#include "rayres/medium.hpp"
#include "rayres/types.hpp"

namespace rayres {

enum class Mapping { P, S, PS };

/// True when xi lies exactly on one of the branch cuts (the real segments
/// [-r, r] of either quasi-momentum, or the imaginary axis).
bool on_any_cut(Complex xi, const HalfSpaceConstants& c);

/// Distance guard around the four branch points +-r_plus, +-r_minus.
bool near_branch_point(Complex xi, const HalfSpaceConstants& c, double radius_factor = 1e-12);

/// Sheet-consistent quasi-momenta. Signs are fixed so sign(Im q) matches the
/// sheet tag; on a cut (where Im q degenerates to zero) the cut_side rule
/// selects the one-sided limit, with q > 0 for the physical determination
/// approached from below.
QuasiMomenta quasi_momenta(const SpectralPoint& p, const HalfSpaceConstants& c);

/// Sheet tag read off from computed momenta; empty when either imaginary
/// part vanishes (point on a cut).
std::optional<SheetTag> classify_sheet(const QuasiMomenta& q);

/// Sheet-swap mappings: P flips sign of q_P, S flips q_S, PS flips both.
SpectralPoint apply_mapping(const SpectralPoint& p, Mapping which);

/// (-xi, same sheet). The cut side flips so that q(-xi) = q(xi) holds exactly
/// on the cuts as well.
SpectralPoint reflect(const SpectralPoint& p);

/// (conj xi, sheet chosen so that q(result) = -conj(q(point))). Undefined on
/// the cuts.
SpectralPoint conjugate(const SpectralPoint& p, const HalfSpaceConstants& c);

struct AsymptoticCheck {
  double residual;
  double bound;
  bool pass() const { return residual <= bound; }
};

/// |q_P - s_P i xi| + |q_S - s_S i xi| against the large-|xi| bound
/// 1.1 * (omega^2/mu_I)/|xi|, for Re xi >= 0 and |xi| >= 10 r_minus.
AsymptoticCheck asymptotic_check(const SpectralPoint& p, const HalfSpaceConstants& c);

}  // namespace rayres
