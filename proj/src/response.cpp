#include "casimir/response.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;

double term_sign(TermSign sign) { return sign == TermSign::gain ? -1.0 : 1.0; }

bool table_is_valid(const std::vector<TablePoint>& table) {
  if (table.empty()) return false;
  double previous = 0.0;
  for (const auto& p : table) {
    if (!std::isfinite(p.omega) || !std::isfinite(p.im_chi)) return false;
    if (!(p.omega > previous)) return false;
    previous = p.omega;
  }
  return true;
}

void require_valid_table(const ResponseModel& model) {
  if (!table_is_valid(model.table())) {
    throw InvalidMedium("tabulated model needs finite samples at strictly increasing positive omega");
  }
}

// Principal value of (2/pi) int_0^inf xi Im(xi) / (xi^2 - omega^2) for the
// piecewise-linear table, omega >= 0. On a segment with Im = a + b xi the
// integrand splits into b + A/(xi - omega) + B/(xi + omega).
double tabulated_real_part(const std::vector<TablePoint>& table, double omega) {
  std::vector<double> x{0.0};
  std::vector<double> y{0.0};
  for (const auto& p : table) {
    x.push_back(p.omega);
    y.push_back(p.im_chi);
  }
  const std::size_t nodes = x.size();
  std::vector<double> coeff_minus(nodes, 0.0);
  std::vector<double> coeff_plus(nodes, 0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < nodes; ++k) {
    const double b = (y[k + 1] - y[k]) / (x[k + 1] - x[k]);
    const double a = y[k] - b * x[k];
    sum += b * (x[k + 1] - x[k]);
    const double coef_a = 0.5 * (a + b * omega);
    const double coef_b = 0.5 * (a - b * omega);
    coeff_minus[k + 1] += coef_a;
    coeff_minus[k] -= coef_a;
    coeff_plus[k + 1] += coef_b;
    coeff_plus[k] -= coef_b;
  }
  // Continuity makes the coefficient of a vanishing logarithm cancel between
  // neighbouring segments, so those terms are dropped.
  for (std::size_t k = 0; k < nodes; ++k) {
    const double dm = std::abs(x[k] - omega);
    if (coeff_minus[k] != 0.0 && dm > 0.0) sum += coeff_minus[k] * std::log(dm);
    const double dp = x[k] + omega;
    if (coeff_plus[k] != 0.0 && dp > 0.0) sum += coeff_plus[k] * std::log(dp);
  }
  return 2.0 / kPi * sum;
}

QuadratureSpec tabulated_kk_spec() {
  QuadratureSpec spec;
  spec.rel_tol = 1e-11;
  spec.abs_tol = 1e-14;
  return spec;
}

}  // namespace

Complex LorentzTerm::susceptibility(Complex omega) const {
  const Complex denom = omega_0 * omega_0 - omega * omega - Complex(0.0, gamma) * omega;
  return term_sign(sign) * omega_p * omega_p / denom;
}

double LorentzTerm::susceptibility_imag_axis(double w) const {
  return term_sign(sign) * omega_p * omega_p / (omega_0 * omega_0 + w * w + gamma * w);
}

ResponseModel ResponseModel::vacuum() { return ResponseModel{}; }

ResponseModel ResponseModel::lorentz(std::vector<LorentzTerm> terms) {
  ResponseModel m;
  m.kind_ = Kind::lorentz_sum;
  m.terms_ = std::move(terms);
  return m;
}

ResponseModel ResponseModel::tabulated(std::vector<TablePoint> table) {
  ResponseModel m;
  m.kind_ = Kind::tabulated_imag;
  m.table_ = std::move(table);
  return m;
}

double ResponseModel::imag_on_real_axis(double omega) const {
  switch (kind_) {
    case Kind::vacuum:
      return 0.0;
    case Kind::lorentz_sum:
      return eval_chi(*this, Complex(omega, 0.0)).imag();
    case Kind::tabulated_imag: {
      require_valid_table(*this);
      const double sign = omega < 0.0 ? -1.0 : 1.0;
      const double x = std::abs(omega);
      if (x >= table_.back().omega) {
        return x == table_.back().omega ? sign * table_.back().im_chi : 0.0;
      }
      auto upper = std::upper_bound(table_.begin(), table_.end(), x,
                                    [](double v, const TablePoint& p) { return v < p.omega; });
      const double x1 = upper->omega;
      const double y1 = upper->im_chi;
      double x0 = 0.0;
      double y0 = 0.0;
      if (upper != table_.begin()) {
        x0 = std::prev(upper)->omega;
        y0 = std::prev(upper)->im_chi;
      }
      return sign * (y0 + (y1 - y0) * (x - x0) / (x1 - x0));
    }
  }
  return 0.0;
}

std::vector<double> ResponseModel::breakpoints() const {
  std::vector<double> points;
  if (kind_ == Kind::lorentz_sum) {
    for (const auto& t : terms_) {
      // The resonance has width ~gamma around omega_0.
      for (double k : {-50.0, -5.0, 0.0, 5.0, 50.0}) {
        const double p = t.omega_0 + k * t.gamma;
        if (p > 0.0) points.push_back(p);
      }
      points.push_back(2.0 * t.omega_0 + 10.0 * t.gamma);
    }
  } else if (kind_ == Kind::tabulated_imag) {
    for (const auto& p : table_) points.push_back(p.omega);
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return points;
}

Complex eval_chi(const ResponseModel& model, Complex omega) {
  if (omega.imag() < 0.0) {
    throw DomainError("response functions are evaluated only in the closed upper half plane");
  }
  switch (model.kind()) {
    case ResponseModel::Kind::vacuum:
      return {1.0, 0.0};
    case ResponseModel::Kind::lorentz_sum: {
      Complex value{1.0, 0.0};
      for (const auto& t : model.terms()) value += t.susceptibility(omega);
      return value;
    }
    case ResponseModel::Kind::tabulated_imag: {
      if (omega.imag() != 0.0) {
        throw UnsupportedEvaluation(
            "tabulated models are evaluated on the real axis only; use eval_imag_axis");
      }
      require_valid_table(model);
      const double x = omega.real();
      return {1.0 + tabulated_real_part(model.table(), std::abs(x)),
              model.imag_on_real_axis(x)};
    }
  }
  return {1.0, 0.0};
}

double eval_imag_axis(const ResponseModel& model, double w) {
  if (!(w >= 0.0)) throw DomainError("imaginary-axis frequency must be nonnegative");
  double value = 1.0;
  switch (model.kind()) {
    case ResponseModel::Kind::vacuum:
      return 1.0;
    case ResponseModel::Kind::lorentz_sum:
      for (const auto& t : model.terms()) value += t.susceptibility_imag_axis(w);
      break;
    case ResponseModel::Kind::tabulated_imag:
      require_valid_table(model);
      value = kk_imag_axis(model, w, tabulated_kk_spec());
      break;
  }
  if (!(value > 0.0)) {
    std::ostringstream msg;
    msg << "response is not positive on the imaginary axis (value " << value << " at w=" << w
        << "); the model has zeros in the upper half plane";
    throw InvalidMedium(msg.str());
  }
  return value;
}

double refractive_index_imag(const ResponseModel& eps, const ResponseModel& mu, double w) {
  return std::sqrt(eval_imag_axis(eps, w) * eval_imag_axis(mu, w));
}

double kk_imag_axis(const Integrand& im_part, double w, const QuadratureSpec& quad,
                    const std::vector<double>& breakpoints) {
  if (!(w >= 0.0)) throw DomainError("imaginary-axis frequency must be nonnegative");
  const double w2 = w * w;
  auto integrand = [&](double xi) {
    if (xi == 0.0) return 0.0;
    return xi * im_part(xi) / (w2 + xi * xi);
  };

  std::vector<double> edges{0.0};
  for (double b : breakpoints) {
    if (b > edges.back()) edges.push_back(b);
  }
  if (edges.size() == 1) edges.push_back(std::max(1.0, w));

  double sum = 0.0;
  double error = 0.0;
  bool converged = true;
  auto panel = [&](double a, double b) {
    auto est = integrate_interval(integrand, a, b, quad);
    converged = converged && est.converged;
    error += est.error_estimate;
    sum += est.value;
    return est.value;
  };
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) panel(edges[k], edges[k + 1]);

  // Geometric tail panels, stopped once a panel is negligible against the sum.
  double a = edges.back();
  constexpr int kMaxTailPanels = 400;
  for (int k = 0; k < kMaxTailPanels; ++k) {
    const double b = 2.0 * a;
    const double contribution = panel(a, b);
    const double edge_value = std::abs(integrand(b));
    if (std::abs(contribution) <= 1e-14 * std::abs(sum) && edge_value * b <= 1e-14 * std::abs(sum)) {
      break;
    }
    if (contribution == 0.0 && edge_value == 0.0 && sum == 0.0) break;
    a = b;
  }
  if (!converged) {
    throw AccuracyError("causality integral did not converge", error);
  }
  return 1.0 + 2.0 / kPi * sum;
}

double kk_imag_axis(const ResponseModel& model, double w, const QuadratureSpec& quad) {
  if (model.kind() == ResponseModel::Kind::vacuum) return 1.0;
  return kk_imag_axis([&](double xi) { return model.imag_on_real_axis(xi); }, w, quad,
                      model.breakpoints());
}

CouplingAmplitudes coupling_functions(const ResponseModel& eps, const ResponseModel& mu,
                                      double omega) {
  if (!(omega > 0.0)) throw DomainError("coupling functions need a positive real frequency");
  const double eps_imag = eval_chi(eps, Complex(omega, 0.0)).imag();
  const double inv_mu_imag = (1.0 / eval_chi(mu, Complex(omega, 0.0))).imag();
  return {std::sqrt(2.0 * omega * std::abs(eps_imag) / kPi),
          std::sqrt(2.0 * omega * std::abs(inv_mu_imag) / kPi)};
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

const ValidationCheck* ValidationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi >= lo) || points < 1) {
    throw DomainError("log grid needs 0 < lo <= hi and at least one point");
  }
  std::vector<double> grid(static_cast<std::size_t>(points));
  if (points == 1) {
    grid[0] = lo;
    return grid;
  }
  const double a = std::log10(lo);
  const double step = (std::log10(hi) - a) / (points - 1);
  for (int k = 0; k < points; ++k) grid[k] = std::pow(10.0, a + step * k);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

ValidationReport validate(const ResponseModel& model) {
  ValidationReport report;
  auto add = [&](std::string name, bool ok, std::string detail) {
    report.checks.push_back({std::move(name), ok, std::move(detail)});
  };

  // (a) field invariants
  bool fields_ok = true;
  std::ostringstream fields;
  if (model.kind() == ResponseModel::Kind::lorentz_sum) {
    for (std::size_t k = 0; k < model.terms().size(); ++k) {
      const auto& t = model.terms()[k];
      const bool ok = t.omega_p > 0.0 && t.omega_0 > 0.0 && t.gamma > 0.0 &&
                      std::isfinite(t.omega_p) && std::isfinite(t.omega_0) &&
                      std::isfinite(t.gamma);
      if (!ok) {
        fields_ok = false;
        fields << "term " << k << " needs positive finite omega_p, omega_0, gamma; ";
      }
    }
  } else if (model.kind() == ResponseModel::Kind::tabulated_imag) {
    if (!table_is_valid(model.table())) {
      fields_ok = false;
      fields << "table needs finite samples at strictly increasing positive omega";
    }
  }
  add("fields", fields_ok, fields_ok ? "ok" : fields.str());

  // (b) gain resonances must keep omega_p < omega_0
  bool gain_ok = true;
  std::ostringstream gain;
  for (std::size_t k = 0; k < model.terms().size(); ++k) {
    const auto& t = model.terms()[k];
    if (t.sign == TermSign::gain && !(t.omega_p < t.omega_0)) {
      if (!gain_ok) gain << "; ";
      gain_ok = false;
      gain << "gain term " << k << " has omega_p=" << t.omega_p << " >= omega_0=" << t.omega_0;
    }
  }
  add("gain_stability", gain_ok, gain_ok ? "ok" : gain.str());

  if (!fields_ok) {
    for (const char* name : {"imag_axis_positive", "schwarz_symmetry", "high_frequency_limit"}) {
      add(name, false, "skipped: invalid fields");
    }
    return report;
  }

  // (c) positivity on the imaginary axis (necessary for zero-freeness)
  {
    bool ok = true;
    std::ostringstream detail;
    for (double w : log_grid(1e-3, 1e3, 200)) {
      double value = 0.0;
      try {
        value = eval_imag_axis(model, w);
      } catch (const InvalidMedium&) {
        value = -1.0;
      }
      if (!(value > 0.0)) {
        ok = false;
        detail << "nonpositive at w=" << w;
        break;
      }
    }
    add("imag_axis_positive", ok, ok ? "ok" : detail.str());
  }

  // (d) Schwarz symmetry on the real axis
  {
    double worst = 0.0;
    for (double omega : log_grid(1e-3, 1e3, 20)) {
      const Complex plus = eval_chi(model, Complex(omega, 0.0));
      const Complex minus = eval_chi(model, Complex(-omega, 0.0));
      worst = std::max(worst, std::abs(minus - std::conj(plus)) / std::max(1.0, std::abs(plus)));
    }
    std::ostringstream detail;
    detail << "max relative deviation " << worst;
    add("schwarz_symmetry", worst <= 1e-12, detail.str());
  }

  // (e) approach to unity at high imaginary frequency
  {
    bool ok = false;
    std::ostringstream detail;
    try {
      const double stat = std::abs(eval_imag_axis(model, 0.0) - 1.0);
      const double high = std::abs(eval_imag_axis(model, 1e3) - 1.0);
      ok = high <= 1e-2 * stat;
      detail << "|value(1e3 i)-1|=" << high << ", |value(0)-1|=" << stat;
    } catch (const Error& e) {
      detail << e.what();
    }
    add("high_frequency_limit", ok, detail.str());
  }
  return report;
}

std::string to_string(MediumClass value) {
  switch (value) {
    case MediumClass::passive:
      return "passive";
    case MediumClass::fully_amplifying:
      return "fully_amplifying";
    case MediumClass::mixed:
      return "mixed";
    case MediumClass::vacuum:
      return "vacuum";
  }
  return "unknown";
}

MediumClass classify(const ResponseModel& eps, const ResponseModel& mu,
                     const ClassifyOptions& options) {
  if (eps.is_vacuum() && mu.is_vacuum()) return MediumClass::vacuum;
  bool has_positive = false;
  bool has_negative = false;
  for (double omega : log_grid(options.omega_min, options.omega_max, options.points)) {
    for (const ResponseModel* model : {&eps, &mu}) {
      const double im = model->imag_on_real_axis(omega);
      if (im > options.tol) has_positive = true;
      if (im < -options.tol) has_negative = true;
    }
  }
  if (has_positive && has_negative) return MediumClass::mixed;
  if (has_negative) return MediumClass::fully_amplifying;
  if (has_positive) return MediumClass::passive;
  return MediumClass::vacuum;
}

}  // namespace casimir
