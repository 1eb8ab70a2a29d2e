#include "casimir/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDecayFloor = 1e-300;

void require_separation(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) throw DomainError("separation must be positive and finite");
}

// Q / (e^{2Qd} - 1), with the series branch near Q = 0.
double bose(double Q, double d) {
  const double x = 2.0 * Q * d;
  if (x < 1e-6) return (1.0 - 0.5 * x) / (2.0 * d);
  return Q / std::expm1(x);
}

// ln(1 - e^{-2Qd})
double log_vacuum_factor(double Q, double d) {
  const double x = 2.0 * Q * d;
  return x > std::numbers::ln2 ? std::log1p(-std::exp(-x)) : std::log(-std::expm1(-x));
}

double decay(double Q, double d) {
  const double e = std::exp(-2.0 * Q * d);
  return e < kDecayFloor ? 0.0 : e;
}

void require_converged(const IntegralEstimate& est, bool inner_converged, const char* what) {
  if (!est.converged || !inner_converged) {
    std::ostringstream msg;
    msg << what << " did not reach the requested tolerance (estimate " << est.value
        << " +/- " << est.error_estimate << ")";
    const double achieved = est.value != 0.0 ? est.error_estimate / std::abs(est.value)
                                             : est.error_estimate;
    throw AccuracyError(msg.str(), achieved);
  }
}

// Integral of g(Q) over Q in (w n(iw), truncation/d) for every w, i.e. the
// homogeneous-slab mode integral after q dq = Q dQ.
ForceResult slab_mode_integral(const ResponseModel& eps, const ResponseModel& mu, double d,
                               const QuadratureSpec& quad,
                               const std::function<double(double)>& g, double prefactor,
                               const char* what) {
  quad.validate();
  const double scale = 1.0 / d;
  const double q_max = quad.truncation * scale;
  const QuadratureSpec inner_spec = quad.tightened(10.0);
  long evaluations = 0;
  bool inner_converged = true;
  auto outer = [&](double w) {
    const double s = w * refractive_index_imag(eps, mu, w);
    if (s >= q_max) return 0.0;
    auto est = integrate_semi_inf([&](double x) { return g(s + x); }, inner_spec, scale,
                                  q_max - s);
    evaluations += est.evaluations;
    inner_converged = inner_converged && est.converged;
    return est.value;
  };
  const IntegralEstimate est = integrate_semi_inf(outer, quad, scale, kInf);
  require_converged(est, inner_converged, what);
  ForceResult out;
  out.value = prefactor * est.value;
  out.error_estimate = std::abs(prefactor) * est.error_estimate;
  out.evaluations = evaluations;
  return out;
}

class OmegaMap {
 public:
  OmegaMap(const ResponseModel& eps, const ResponseModel& mu) : eps_(eps), mu_(mu) {
    if (eps.is_vacuum() && mu.is_vacuum()) {
      identity_ = true;
      return;
    }
    const MediumClass medium = classify(eps, mu);
    if (medium == MediumClass::mixed) {
      throw MappingError("s = w n(iw) is not guaranteed monotone for mixed media; use the (q,w) form");
    }
    n_static_ = refractive_index_imag(eps, mu, 0.0);
    double previous = 0.0;
    for (double w : log_grid(1e-3, 1e3, 400)) {
      const double s = w * refractive_index_imag(eps, mu, w);
      if (!(s > previous)) {
        std::ostringstream msg;
        msg << "s = w n(iw) is not increasing near w=" << w;
        throw MappingError(msg.str());
      }
      previous = s;
    }
  }

  double operator()(double s, double tol) const {
    if (!(s > 0.0)) throw DomainError("s must be positive");
    if (identity_) return s;
    const double lo = s * std::min(1.0, 1.0 / n_static_) * (1.0 - 1e-9);
    const double hi = s * std::max(1.0, 1.0 / n_static_) * (1.0 + 1e-9);
    auto ratio = [&](double w) { return w * refractive_index_imag(eps_, mu_, w) / s; };
    return find_root_monotone(ratio, 1.0, lo, hi, tol);
  }

 private:
  const ResponseModel& eps_;
  const ResponseModel& mu_;
  bool identity_ = false;
  double n_static_ = 1.0;
};

double interface(double pref_from, double Q_from, double pref_to, double Q_to) {
  const double a = pref_to / Q_to;
  const double b = pref_from / Q_from;
  return (a - b) / (a + b);
}

[[noreturn]] void round_trip(Polarization sigma, double q, double w, double value) {
  std::ostringstream msg;
  msg << "round-trip gain: nonpositive log argument " << value << " at sigma="
      << to_string(sigma) << ", q=" << q << ", w=" << w;
  throw RoundTripGainError(msg.str());
}

// Generic (w, q) mode integral with prefactor 1/(4 pi^2).
ForceResult layered_mode_integral(const std::function<double(double, double)>& integrand,
                                  double scale, const QuadratureSpec& quad, const char* what) {
  quad.validate();
  const QuadratureSpec inner_spec = quad.tightened(10.0);
  long evaluations = 0;
  bool inner_converged = true;
  auto outer = [&](double w) {
    auto est = integrate_semi_inf([&](double q) { return q * integrand(w, q); }, inner_spec,
                                  scale);
    evaluations += est.evaluations;
    inner_converged = inner_converged && est.converged;
    return est.value;
  };
  const IntegralEstimate est = integrate_semi_inf(outer, quad, scale, kInf);
  require_converged(est, inner_converged, what);
  const double prefactor = 1.0 / (4.0 * kPi * kPi);
  ForceResult out;
  out.value = prefactor * est.value;
  out.error_estimate = prefactor * est.error_estimate;
  out.evaluations = evaluations;
  return out;
}

// Caches the layer responses for the most recent w; the inner integral
// visits many q at one w.
class ResponseCache {
 public:
  explicit ResponseCache(std::vector<Layer> layers) : layers_(std::move(layers)) {}

  const std::vector<LayerSample>& at(double w) {
    if (w != w_ || values_.empty()) {
      values_.clear();
      for (const auto& l : layers_) {
        values_.push_back({eval_imag_axis(l.eps, w), eval_imag_axis(l.mu, w), l.thickness});
      }
      w_ = w;
    }
    return values_;
  }

 private:
  std::vector<Layer> layers_;
  std::vector<LayerSample> values_;
  double w_ = -1.0;
};

struct ThreeWaves {
  double Q[3];
  double pref[3];
};

ThreeWaves three_waves(std::span<const LayerSample> layers, const TransverseMode& mode) {
  if (layers.size() != 3) throw DomainError("three layers expected");
  ThreeWaves out;
  for (int i = 0; i < 3; ++i) {
    out.Q[i] = q_long(layers[i], mode);
    out.pref[i] = mode.sigma == Polarization::TE ? layers[i].mu : layers[i].eps;
  }
  return out;
}

double sum_polarizations(double (*term)(std::span<const LayerSample>, const TransverseMode&),
                         std::span<const LayerSample> layers, double q, double w) {
  if (q == 0.0 && w == 0.0) return 0.0;
  return term(layers, {Polarization::TE, q, w}) + term(layers, {Polarization::TM, q, w});
}

}  // namespace

double log_bracket_3layer(std::span<const LayerSample> layers, const TransverseMode& mode) {
  const ThreeWaves t = three_waves(layers, mode);
  double e[3];
  for (int i = 0; i < 3; ++i) e[i] = decay(t.Q[i], layers[i].thickness);
  const double rw = wall_reflection(mode.sigma);
  const double r2m = interface(t.pref[1], t.Q[1], t.pref[0], t.Q[0]);
  const double r2p = interface(t.pref[1], t.Q[1], t.pref[2], t.Q[2]);
  const double a = r2m * rw * e[0];
  const double b = r2p * rw * e[2];
  const double c = (r2m + rw * e[0]) * (r2p + rw * e[2]) * e[1];
  const double bm1 = a + b + a * b - c;
  if (!(1.0 + bm1 > 0.0)) round_trip(mode.sigma, mode.q, mode.w, 1.0 + bm1);
  return std::log1p(bm1);
}

double log_lifshitz(std::span<const LayerSample> layers, const TransverseMode& mode) {
  const ThreeWaves t = three_waves(layers, mode);
  const double r2m = interface(t.pref[1], t.Q[1], t.pref[0], t.Q[0]);
  const double r2p = interface(t.pref[1], t.Q[1], t.pref[2], t.Q[2]);
  const double bm1 = -r2p * r2m * decay(t.Q[1], layers[1].thickness);
  if (!(1.0 + bm1 > 0.0)) round_trip(mode.sigma, mode.q, mode.w, 1.0 + bm1);
  return std::log1p(bm1);
}

double force_vacuum(double d) {
  require_separation(d);
  return -kPi * kPi / (240.0 * d * d * d * d);
}

ForceResult force_slab_qw(const ResponseModel& eps, const ResponseModel& mu, double d,
                          const QuadratureSpec& quad) {
  require_separation(d);
  auto g = [d](double Q) { return 2.0 * Q * bose(Q, d); };
  ForceResult out = slab_mode_integral(eps, mu, d, quad, g, -1.0 / (2.0 * kPi * kPi),
                                       "(q,w) force integral");
  out.diagnostics.push_back("method=qw");
  return out;
}

ForceResult energy_slab(const ResponseModel& eps, const ResponseModel& mu, double d,
                        const QuadratureSpec& quad) {
  require_separation(d);
  auto g = [d](double Q) { return Q * log_vacuum_factor(Q, d); };
  return slab_mode_integral(eps, mu, d, quad, g, 1.0 / (2.0 * kPi * kPi), "slab energy integral");
}

double omega_of_s(const ResponseModel& eps, const ResponseModel& mu, double s, double tol) {
  return OmegaMap(eps, mu)(s, tol);
}

bool has_monotone_mapping(const ResponseModel& eps, const ResponseModel& mu) {
  try {
    OmegaMap map(eps, mu);
    return true;
  } catch (const MappingError&) {
    return false;
  }
}

ForceResult force_slab_s(const ResponseModel& eps, const ResponseModel& mu, double d,
                         const QuadratureSpec& quad) {
  require_separation(d);
  quad.validate();
  const OmegaMap map(eps, mu);
  const double root_tol = std::min(1e-13, quad.rel_tol * 1e-3);
  auto integrand = [&](double s) {
    if (s == 0.0) return 0.0;
    return s * map(s, root_tol) * bose(s, d);
  };
  const IntegralEstimate est = integrate_semi_inf(integrand, quad, 1.0 / d);
  require_converged(est, true, "s-form force integral");
  const double prefactor = -1.0 / (kPi * kPi);
  ForceResult out;
  out.value = prefactor * est.value;
  out.error_estimate = -prefactor * est.error_estimate;
  out.evaluations = est.evaluations;
  out.diagnostics.push_back("method=s");
  return out;
}

ForceResult action_3layer(const Stack& stack3, const QuadratureSpec& quad) {
  if (stack3.size() != 3) throw DomainError("three-layer action needs exactly three layers");
  if (!stack3.mirrors()) throw DomainError("three-layer action needs mirrors at both faces");
  double d_min = kInf;
  for (const auto& l : stack3.layers()) d_min = std::min(d_min, l.thickness);

  ResponseCache cache(stack3.layers());
  auto integrand = [&](double w, double q) {
    return sum_polarizations(log_bracket_3layer, cache.at(w), q, w);
  };
  ForceResult out = layered_mode_integral(integrand, 1.0 / d_min, quad, "three-layer action");
  out.diagnostics.push_back("defined up to a separation-independent constant");
  return out;
}

ForceResult energy_lifshitz(const Layer& left, const Layer& mid, const Layer& right,
                            const QuadratureSpec& quad) {
  if (!left.semi_infinite() || !right.semi_infinite()) {
    throw DomainError("Lifshitz energy needs semi-infinite outer media");
  }
  if (mid.semi_infinite() || !(mid.thickness > 0.0)) {
    throw DomainError("Lifshitz energy needs a finite middle layer");
  }
  ResponseCache cache({left, mid, right});
  const double d2 = mid.thickness;
  auto integrand = [&](double w, double q) {
    return sum_polarizations(log_lifshitz, cache.at(w), q, w);
  };
  return layered_mode_integral(integrand, 1.0 / d2, quad, "Lifshitz energy");
}

EnergyFunction three_layer_energy(const Stack& stack3, std::size_t which,
                                  const QuadratureSpec& quad) {
  if (which >= stack3.size()) throw IndexError("varied layer index out of range");
  return [stack3, which, quad](double d) {
    std::vector<Layer> layers = stack3.layers();
    layers[which].thickness = d;
    return action_3layer(Stack(std::move(layers), stack3.mirrors()), quad);
  };
}

EnergyFunction lifshitz_energy(const Layer& left, const Layer& mid, const Layer& right,
                               const QuadratureSpec& quad) {
  return [left, mid, right, quad](double d) {
    Layer m = mid;
    m.thickness = d;
    return energy_lifshitz(left, m, right, quad);
  };
}

EnergyFunction slab_energy(const ResponseModel& eps, const ResponseModel& mu,
                           const QuadratureSpec& quad) {
  return [eps, mu, quad](double d) { return energy_slab(eps, mu, d, quad); };
}

QuadratureSpec derivative_quadrature(const QuadratureSpec& base) {
  QuadratureSpec out = base;
  out.rel_tol = std::min(base.rel_tol, 1e-11);
  out.abs_tol = std::min(base.abs_tol, 1e-15);
  return out;
}

ForceResult force_from_action(const EnergyFunction& energy, double d, double rel_tol) {
  require_separation(d);
  if (!(rel_tol > 0.0)) throw DomainError("derivative tolerance must be positive");
  const double h = 1e-3 * d;
  long evaluations = 0;
  auto at = [&](double x) {
    ForceResult r = energy(x);
    evaluations += r.evaluations;
    return r.value;
  };
  const double d_coarse = (at(d + h) - at(d - h)) / (2.0 * h);
  const double d_fine = (at(d + 0.5 * h) - at(d - 0.5 * h)) / h;
  const double extrapolated = (4.0 * d_fine - d_coarse) / 3.0;
  const double error = std::abs(extrapolated - d_fine);
  if (error > 10.0 * rel_tol * std::abs(extrapolated) && error > 1e-300) {
    std::ostringstream msg;
    msg << "derivative estimates disagree: " << d_coarse << " vs " << d_fine;
    throw AccuracyError(msg.str(), error / std::max(std::abs(extrapolated), 1e-300));
  }
  ForceResult out;
  out.value = -extrapolated;
  out.error_estimate = error;
  out.evaluations = evaluations;
  return out;
}

bool BoundsReport::passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const BoundsRow& r) { return r.passed; });
}

BoundsReport bounds_check(const ResponseModel& eps, const ResponseModel& mu,
                          const std::vector<double>& d_grid, const QuadratureSpec& quad) {
  BoundsReport report;
  report.medium = (eps.is_vacuum() && mu.is_vacuum()) ? MediumClass::vacuum : classify(eps, mu);
  if (report.medium == MediumClass::mixed) {
    throw ClassificationError("attraction bounds do not apply to mixed gain/loss media");
  }
  report.n_static = refractive_index_imag(eps, mu, 0.0);
  for (double d : d_grid) {
    BoundsRow row;
    row.d = d;
    const ForceResult f = force_slab_qw(eps, mu, d, quad);
    row.force = f.value;
    row.force_vacuum = force_vacuum(d);
    const double scaled = row.force_vacuum / report.n_static;
    row.lower = std::min(row.force_vacuum, scaled);
    row.upper = std::max(row.force_vacuum, scaled);
    row.margin_lower = row.force - row.lower;
    row.margin_upper = row.upper - row.force;
    if (report.medium == MediumClass::vacuum) {
      const double slack = std::max(10.0 * f.error_estimate, 1e-8 * std::abs(row.force_vacuum));
      row.passed = std::abs(row.force - row.force_vacuum) <= slack;
    } else {
      row.passed = row.margin_lower >= 0.0 && row.margin_upper >= 0.0 && row.upper < 0.0;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace casimir
