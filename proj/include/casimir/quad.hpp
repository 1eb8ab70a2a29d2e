#pragma once

#include <functional>
#include <limits>

namespace casimir {

/// Tolerances and limits shared by every adaptive integral in the library.
///
/// `truncation` bounds the integration variable of semi-infinite integrals
/// at `truncation * scale`; with `scale = 1/d` this integrates Q up to 60/d,
/// where the Bose-like factor e^{-2Qd} is below 1e-50.
struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 1e-12;
  int max_depth = 30;
  double truncation = 60.0;

  /// Throws DomainError when a field is out of range.
  void validate() const;

  /// Copy with both tolerances divided by `factor` (used for inner integrals).
  QuadratureSpec tightened(double factor) const;
};

struct IntegralEstimate {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
  bool converged = true;
};

using Integrand = std::function<double(double)>;
using Integrand2D = std::function<double(double, double)>;

/// Global adaptive Gauss-Kronrod (7/15) integration over a finite interval.
/// Converged means error_estimate <= max(rel_tol |value|, abs_tol), or below
/// the rounding level 100 eps int |f| when the request is tighter than that.
IntegralEstimate integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureSpec& quad);

/// Integrates f over (0, upper) using the map x = scale * t / (1 - t).
/// `upper` defaults to `quad.truncation * scale`; pass infinity to cover the
/// whole half line.
IntegralEstimate integrate_semi_inf(const Integrand& f, const QuadratureSpec& quad,
                                    double scale = 1.0,
                                    double upper = std::numeric_limits<double>::quiet_NaN());

/// Nested semi-infinite integral, outer over x and inner over y. The inner
/// tolerances are tightened by a factor of 10.
IntegralEstimate integrate_2d_semi_inf(const Integrand2D& f, const QuadratureSpec& quad,
                                       double scale_x = 1.0, double scale_y = 1.0);

/// Solves f(x) = target for monotone f on [lo, hi] by bisection with secant
/// acceleration. Returns x with |f(x) - target| <= tol * max(1, |target|),
/// or the midpoint of a bracket that has collapsed to rounding level.
double find_root_monotone(const Integrand& f, double target, double lo, double hi,
                          double tol);

/// Fixed-grid trapezoid rule on the mapped half line, with the error taken
/// from the Richardson difference against the half-resolution grid. Intended
/// as a brute-force reference, not for production use.
IntegralEstimate trapezoid_semi_inf(const Integrand& f, long points, double scale = 1.0,
                                    double upper = std::numeric_limits<double>::infinity());

/// Tensor-product version of trapezoid_semi_inf.
IntegralEstimate trapezoid_2d_semi_inf(const Integrand2D& f, long points_x, long points_y,
                                       double scale_x = 1.0, double scale_y = 1.0);

}  // namespace casimir
