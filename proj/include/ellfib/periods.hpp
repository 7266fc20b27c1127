#pragma once

#include <array>
#include <optional>

#include "ellfib/curve.hpp"

namespace ellfib {

/// Half-periods of a smooth fiber: the lattice is spanned by 2 omega and
/// 2 omega_prime, tau = omega_prime / omega with Im tau > 0, q = e^{2 pi i tau}.
/// tau is not reduced to the fundamental domain.
struct Periods {
  cplx omega;
  cplx omega_prime;
  cplx tau;
  cplx q;
};

/// Roots of 4x^3 - g2 x - g3, sorted lexicographically by (Re, Im).
struct CubicRoots {
  std::array<cplx, 3> roots;
  double min_separation = 0.0;
  bool coincident = false;  // pair closer than 1e-10 (1 + max|e_i|), or negligible discriminant
};

CubicRoots cubic_roots(const WeierstrassCurve& curve);

/// Residuals of the lattice identities used to accept a period basis.
struct PeriodCheck {
  double discriminant_rel_err = 0.0;  // (2pi)^12 eta^24 / (2 omega)^12 vs Delta
  double j_err = 0.0;                 // |j(curve) - j(tau)| / max(1, |j|)
  double g2_err = 0.0;                // Eisenstein g2(lattice) vs g2, scaled
  double g3_err = 0.0;
  bool ok() const noexcept;
};

PeriodCheck check_periods(const WeierstrassCurve& curve, const Periods& p);

/// Periods from the optimal-sign complex AGM.  Throws SingularCurve for a
/// singular cubic, AgmBranchFailure when no root labelling passes
/// check_periods.
Periods compute_periods(const WeierstrassCurve& curve);

/// Re-express p in the lattice basis closest to `seed` (an SL(2,Z) change of
/// basis).  Returns p unchanged if the seed is not close to a basis of p's
/// lattice.
Periods align_to(const Periods& p, const Periods& seed);

/// Periods of the fiber at u.  With a seed from a nearby point the basis is
/// continued from the seed, so omega(u) and tau(u) vary continuously along
/// paths with steps well below the distance to the nearest node.
/// Throws SingularFiber at discriminant zeros.
Periods periods_along_family(const CurveFamily& family, cplx u,
                             const std::optional<Periods>& seed = std::nullopt);

}  // namespace ellfib
