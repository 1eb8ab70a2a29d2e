#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "casimir/quad.hpp"
#include "casimir/response.hpp"
#include "casimir/stack.hpp"

namespace casimir {

/// A force per area (or an energy per area) in reduced units.
struct ForceResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  std::vector<std::string> diagnostics;
};

/// -pi^2 / (240 d^4): ideal mirrors in vacuum.
double force_vacuum(double d);

/// Force on mirrors at separation d enclosing a homogeneous medium, from
/// the (q, w) integral
///   F = -(1/2pi^2) int_0^inf dw int_0^inf q dq 2Q / (e^{2Qd} - 1).
ForceResult force_slab_qw(const ResponseModel& eps, const ResponseModel& mu, double d,
                          const QuadratureSpec& quad = {});

/// Inverts s = w n(iw). Throws MappingError for mixed media or when the map
/// is not monotone on the sampling grid.
double omega_of_s(const ResponseModel& eps, const ResponseModel& mu, double s, double tol);

/// True when omega_of_s is defined for the medium.
bool has_monotone_mapping(const ResponseModel& eps, const ResponseModel& mu);

/// Same force from the one-dimensional form
///   F = -(1/pi^2) int_0^inf ds s^2 w(s) / (e^{2sd} - 1).
ForceResult force_slab_s(const ResponseModel& eps, const ResponseModel& mu, double d,
                         const QuadratureSpec& quad = {});

/// Mode-integrated ln(1 - e^{-2Qd}) for the homogeneous slab, summed over
/// both polarizations. Its negative d-derivative is force_slab_qw.
ForceResult energy_slab(const ResponseModel& eps, const ResponseModel& mu, double d,
                        const QuadratureSpec& quad = {});

/// Energy per area of three finite layers between mirrors,
///   E = (1/4pi^2) int_0^inf dw int_0^inf q dq sum_sigma ln B_sigma,
///   B = (1 + r2m rw e1)(1 + r2p rw e3) - (r2m + rw e1)(r2p + rw e3) e2,
/// with e_i = e^{-2 Q_i d_i}, bare interface coefficients r2m (layer 2 to 1)
/// and r2p (layer 2 to 3), and conductor reflection rw. Defined up to a
/// separation-independent constant.
ForceResult action_3layer(const Stack& stack3, const QuadratureSpec& quad = {});

/// Energy per area of a finite layer between two semi-infinite media,
///   E = (1/4pi^2) int_0^inf dw int_0^inf q dq sum_sigma ln(1 - r2p r2m e2).
ForceResult energy_lifshitz(const Layer& left, const Layer& mid, const Layer& right,
                            const QuadratureSpec& quad = {});

/// ln B_sigma of the three-layer bracket at one mode (mode.sigma selects
/// the polarization). Throws RoundTripGainError when B <= 0.
double log_bracket_3layer(std::span<const LayerSample> layers, const TransverseMode& mode);

/// ln(1 - r2p r2m e^{-2 Q2 d2}) at one mode; outer thicknesses are ignored.
double log_lifshitz(std::span<const LayerSample> layers, const TransverseMode& mode);

using EnergyFunction = std::function<ForceResult(double)>;

/// Energy as a function of the thickness of layer `which` (0-based).
EnergyFunction three_layer_energy(const Stack& stack3, std::size_t which,
                                  const QuadratureSpec& quad);
/// Energy as a function of the middle-layer thickness.
EnergyFunction lifshitz_energy(const Layer& left, const Layer& mid, const Layer& right,
                               const QuadratureSpec& quad);
/// Energy as a function of the slab thickness.
EnergyFunction slab_energy(const ResponseModel& eps, const ResponseModel& mu,
                           const QuadratureSpec& quad);

/// Energy integrals accurate enough to be differentiated numerically.
QuadratureSpec derivative_quadrature(const QuadratureSpec& base = {});

/// -dE/dd by central differences with step 1e-3 d and one Richardson
/// level. Throws AccuracyError when the two step sizes disagree by more
/// than 10 rel_tol |F|.
ForceResult force_from_action(const EnergyFunction& energy, double d, double rel_tol = 1e-5);

struct BoundsRow {
  double d = 0.0;
  double force = 0.0;
  double force_vacuum = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double margin_lower = 0.0;  // force - lower
  double margin_upper = 0.0;  // upper - force
  bool passed = false;
};

struct BoundsReport {
  MediumClass medium = MediumClass::vacuum;
  double n_static = 1.0;
  std::vector<BoundsRow> rows;
  bool passed() const;
};

/// Checks F_vac / n_static <= F <= F_vac (fully amplifying) or
/// F_vac <= F <= F_vac / n_static (passive) at every separation. Throws
/// ClassificationError for mixed media.
BoundsReport bounds_check(const ResponseModel& eps, const ResponseModel& mu,
                          const std::vector<double>& d_grid, const QuadratureSpec& quad = {});

}  // namespace casimir
