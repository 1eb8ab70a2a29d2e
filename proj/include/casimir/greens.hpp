#pragma once

#include "casimir/response.hpp"
#include "casimir/stack.hpp"

namespace casimir {

/// Scalar Green function of an unbounded homogeneous medium,
///   pref e^{-Q|z - zp|} / (2Q),
/// with pref = mu(iw) for TE and eps(iw) for TM.
double g_homogeneous(const ResponseModel& eps, const ResponseModel& mu,
                     const TransverseMode& mode, double z, double zp);

/// Scalar TE or TM Green function of a layered stack, solving
///   TE: [-d/dz (1/mu) d/dz + q^2/mu + w^2 eps] G = delta(z - zp)
///   TM: [-d/dz (1/eps) d/dz + q^2/eps + w^2 mu] G = delta(z - zp)
/// with the generalized reflection coefficients of the stack. With mirrors
/// the conductors impose u = 0 (TE) and u' = 0 (TM).
///
/// Throws DomainError for coordinates outside the stack and
/// RoundTripGainError for a nonpositive multiple-reflection factor.
double g_scalar(const Stack& stack, const TransverseMode& mode, double z, double zp);

/// -d/dz d/dzp of g_scalar. The delta-function contribution at z = zp is
/// dropped; the diagonal is the continuous limit.
double g_scalar_mixed_derivative(const Stack& stack, const TransverseMode& mode, double z,
                                 double zp);

struct Matrix2 {
  double a11 = 0.0;
  double a12 = 0.0;
  double a21 = 0.0;
  double a22 = 0.0;

  double det() const noexcept { return a11 * a22 - a12 * a21; }
};

/// Boundary matrix at the two faces z1 = 0 and z2 of a mirrorless stack of
/// finite layers: G^TM(zi, zj) for TM, -d/dz d/dzp G^TE(zi, zj) for TE.
Matrix2 gamma_entries(const Stack& stack, const TransverseMode& mode);

}  // namespace casimir
