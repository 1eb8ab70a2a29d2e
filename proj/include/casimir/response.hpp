#pragma once

#include <complex>
#include <string>
#include <vector>

#include "casimir/quad.hpp"

namespace casimir {

using Complex = std::complex<double>;

enum class TermSign { loss, gain };

/// One resonance of a Lorentz-oscillator susceptibility,
///   +/- omega_p^2 / (omega_0^2 - omega^2 - i gamma omega),
/// with the minus sign describing a population-inverted (gain) resonance.
/// All frequencies are in units of the reference frequency.
struct LorentzTerm {
  double omega_p = 0.0;
  double omega_0 = 0.0;
  double gamma = 0.0;
  TermSign sign = TermSign::loss;

  Complex susceptibility(Complex omega) const;
  /// Value on the positive imaginary axis, omega = i w.
  double susceptibility_imag_axis(double w) const;
};

/// One sample of the imaginary part of a susceptibility on the real axis.
struct TablePoint {
  double omega = 0.0;
  double im_chi = 0.0;
};

/// A causal relative permittivity or permeability.
///
/// Models are plain values and never throw on construction; `validate`
/// reports problems, and evaluation raises when a value is meaningless.
class ResponseModel {
 public:
  enum class Kind { vacuum, lorentz_sum, tabulated_imag };

  ResponseModel() = default;

  static ResponseModel vacuum();
  static ResponseModel lorentz(std::vector<LorentzTerm> terms);
  /// Im(chi) sampled on the positive real axis. Between 0 and the first
  /// sample the imaginary part is interpolated linearly from Im(chi(0)) = 0;
  /// beyond the last sample it is zero.
  static ResponseModel tabulated(std::vector<TablePoint> table);

  Kind kind() const noexcept { return kind_; }
  const std::vector<LorentzTerm>& terms() const noexcept { return terms_; }
  const std::vector<TablePoint>& table() const noexcept { return table_; }
  bool is_vacuum() const noexcept { return kind_ == Kind::vacuum; }

  /// Interpolated Im(chi) at a real frequency (odd in omega).
  double imag_on_real_axis(double omega) const;

  /// Points where the imaginary part has kinks or sharp resonances; used to
  /// split the causality integral into well-behaved panels.
  std::vector<double> breakpoints() const;

 private:
  Kind kind_ = Kind::vacuum;
  std::vector<LorentzTerm> terms_;
  std::vector<TablePoint> table_;
};

/// Value of the response at a complex frequency in the closed upper half
/// plane. Tabulated models are limited to the real axis; their real part is
/// obtained from the principal-value dispersion integral of the piecewise
/// linear table.
Complex eval_chi(const ResponseModel& model, Complex omega);

/// Value at omega = i w, w >= 0. Real and, for a valid medium, positive.
double eval_imag_axis(const ResponseModel& model, double w);

/// n(iw) = sqrt(eps(iw) mu(iw)), positive root.
double refractive_index_imag(const ResponseModel& eps, const ResponseModel& mu, double w);

/// eps(iw) = 1 + (2/pi) int_0^inf dxi xi Im eps(xi) / (w^2 + xi^2).
///
/// The integral is split at `breakpoints` and continued with geometrically
/// growing panels until a panel contributes less than 1e-14 of the running
/// sum. Throws AccuracyError if any panel fails to converge.
double kk_imag_axis(const Integrand& im_part, double w, const QuadratureSpec& quad,
                    const std::vector<double>& breakpoints = {});

/// Same, reading the imaginary part and the breakpoints from a model.
double kk_imag_axis(const ResponseModel& model, double w, const QuadratureSpec& quad);

/// Coupling amplitudes of the medium to its reservoir fields at a positive
/// real frequency, in reduced units:
///   f = sqrt(2 omega |Im eps| / pi),  g = sqrt(2 omega |Im(1/mu)| / pi).
struct CouplingAmplitudes {
  double f = 0.0;
  double g = 0.0;
};
CouplingAmplitudes coupling_functions(const ResponseModel& eps, const ResponseModel& mu,
                                      double omega);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool passed() const;
  const ValidationCheck* find(const std::string& name) const;
};

/// Runs the model checks: field invariants, omega_p < omega_0 for gain
/// terms, positivity on the imaginary axis, Schwarz symmetry on the real
/// axis, and approach to unity at high imaginary frequency.
ValidationReport validate(const ResponseModel& model);

enum class MediumClass { passive, fully_amplifying, mixed, vacuum };

std::string to_string(MediumClass value);

struct ClassifyOptions {
  double omega_min = 1e-3;
  double omega_max = 1e3;
  int points = 400;
  double tol = 1e-12;
};

/// Classifies a medium from the sign pattern of Im eps and Im mu sampled on
/// a logarithmic grid of real frequencies. A medium whose imaginary parts
/// all vanish to within `tol` is reported as vacuum.
MediumClass classify(const ResponseModel& eps, const ResponseModel& mu,
                     const ClassifyOptions& options = {});

/// Log-spaced grid of `points` values covering [lo, hi].
std::vector<double> log_grid(double lo, double hi, int points);

}  // namespace casimir
