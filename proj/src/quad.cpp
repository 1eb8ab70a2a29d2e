#include "casimir/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <tuple>
#include <vector>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

// Kronrod 15-point abscissae and weights; every odd abscissa (and the centre)
// also belongs to the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr long kMaxSegments = 20000;

struct Segment {
  double a;
  double b;
  double value;
  double error;
  double magnitude;  // integral of |f|
  int depth;
  bool operator<(const Segment& other) const { return error < other.error; }
};

// One Gauss-Kronrod panel with the QUADPACK error heuristic.
Segment gk15(const Integrand& f, double a, double b, int depth) {
  const double centre = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(centre);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(centre - dx);
    f2[j] = f(centre + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  resk *= half;
  resg *= half;
  resabs *= std::abs(half);
  resasc *= std::abs(half);

  double err = std::abs(resk - resg);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {a, b, resk, err, resabs, depth};
}

}  // namespace

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("quadrature tolerances must be positive");
  }
  if (max_depth < 4) throw DomainError("quadrature max_depth must be at least 4");
  if (!(truncation > 0.0)) throw DomainError("quadrature truncation must be positive");
}

QuadratureSpec QuadratureSpec::tightened(double factor) const {
  QuadratureSpec out = *this;
  out.rel_tol /= factor;
  out.abs_tol /= factor;
  return out;
}

IntegralEstimate integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureSpec& quad) {
  quad.validate();
  IntegralEstimate out;
  if (a == b) return out;

  std::priority_queue<Segment> open;
  std::vector<Segment> frozen;
  open.push(gk15(f, a, b, 0));
  out.evaluations = 15;
  long segments = 1;

  auto totals = [&]() {
    double value = 0.0;
    double error = 0.0;
    double magnitude = 0.0;
    auto heap = open;
    while (!heap.empty()) {
      value += heap.top().value;
      error += heap.top().error;
      magnitude += heap.top().magnitude;
      heap.pop();
    }
    for (const auto& s : frozen) {
      value += s.value;
      error += s.error;
      magnitude += s.magnitude;
    }
    return std::tuple{value, error, magnitude};
  };
  // Tolerances below the rounding level of the summed panels cannot be met.
  auto target = [&](double value, double magnitude) {
    constexpr double kRoundoff = 100.0 * std::numeric_limits<double>::epsilon();
    return std::max({quad.rel_tol * std::abs(value), quad.abs_tol, kRoundoff * magnitude});
  };

  double value = open.top().value;
  double error = open.top().error;
  double magnitude = open.top().magnitude;
  while (!open.empty()) {
    if (error <= target(value, magnitude)) break;
    if (segments >= kMaxSegments) break;
    Segment worst = open.top();
    open.pop();
    if (worst.depth >= quad.max_depth) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    Segment left = gk15(f, worst.a, mid, worst.depth + 1);
    Segment right = gk15(f, mid, worst.b, worst.depth + 1);
    out.evaluations += 30;
    ++segments;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    magnitude += left.magnitude + right.magnitude - worst.magnitude;
    open.push(left);
    open.push(right);
    // Incremental sums drift; resynchronise now and then.
    if (segments % 256 == 0) std::tie(value, error, magnitude) = totals();
  }
  std::tie(value, error, magnitude) = totals();
  out.value = value;
  out.error_estimate = error;
  out.converged = error <= target(value, magnitude);
  return out;
}

IntegralEstimate integrate_semi_inf(const Integrand& f, const QuadratureSpec& quad,
                                    double scale, double upper) {
  quad.validate();
  if (!(scale > 0.0)) throw DomainError("integration scale must be positive");
  if (std::isnan(upper)) upper = quad.truncation * scale;
  if (!(upper > 0.0)) throw DomainError("upper integration limit must be positive");
  const double t_max = std::isinf(upper) ? 1.0 : upper / (scale + upper);
  auto mapped = [&](double t) {
    const double one_minus = 1.0 - t;
    const double x = scale * t / one_minus;
    return f(x) * scale / (one_minus * one_minus);
  };
  return integrate_interval(mapped, 0.0, t_max, quad);
}

IntegralEstimate integrate_2d_semi_inf(const Integrand2D& f, const QuadratureSpec& quad,
                                       double scale_x, double scale_y) {
  const QuadratureSpec inner_spec = quad.tightened(10.0);
  long inner_evaluations = 0;
  bool inner_converged = true;
  auto outer = [&](double x) {
    auto inner = integrate_semi_inf([&](double y) { return f(x, y); }, inner_spec, scale_y);
    inner_evaluations += inner.evaluations;
    inner_converged = inner_converged && inner.converged;
    return inner.value;
  };
  IntegralEstimate out = integrate_semi_inf(outer, quad, scale_x);
  out.evaluations = inner_evaluations;
  out.converged = out.converged && inner_converged;
  return out;
}

double find_root_monotone(const Integrand& f, double target, double lo, double hi,
                          double tol) {
  if (!(tol > 0.0)) throw DomainError("root tolerance must be positive");
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  const double accept = tol * std::max(1.0, std::abs(target));
  if (std::abs(flo) <= accept) return lo;
  if (std::abs(fhi) <= accept) return hi;
  if (flo * fhi > 0.0) {
    throw BracketError("root bracket does not straddle the target");
  }
  constexpr int kMaxIterations = 200;
  bool bisect_next = false;
  for (int it = 0; it < kMaxIterations; ++it) {
    const double width = hi - lo;
    double x;
    if (bisect_next) {
      x = lo + 0.5 * width;
    } else {
      x = lo - flo * width / (fhi - flo);
      const double guard = 1e-3 * width;
      if (!(x > lo + guard && x < hi - guard)) x = lo + 0.5 * width;
    }
    const double fx = f(x) - target;
    if (std::abs(fx) <= accept) return x;
    if ((fx < 0.0) == (flo < 0.0)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
      fhi = fx;
    }
    // Force a bisection whenever the secant step failed to halve the bracket.
    bisect_next = !bisect_next && (hi - lo) > 0.5 * width;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       std::max(std::abs(lo), std::abs(hi))) {
      return 0.5 * (lo + hi);
    }
  }
  return 0.5 * (lo + hi);
}

namespace {

double trapezoid_pass(const Integrand& f, long points, double scale, double t_max) {
  // Endpoint t = t_max contributes zero when the half line is covered.
  const double h = t_max / static_cast<double>(points);
  double sum = 0.0;
  for (long k = 0; k <= points; ++k) {
    const double t = h * static_cast<double>(k);
    if (t_max == 1.0 && k == points) continue;
    const double one_minus = 1.0 - t;
    const double weight = (k == 0 || k == points) ? 0.5 : 1.0;
    sum += weight * f(scale * t / one_minus) * scale / (one_minus * one_minus);
  }
  return sum * h;
}

}  // namespace

IntegralEstimate trapezoid_semi_inf(const Integrand& f, long points, double scale,
                                    double upper) {
  if (points < 4 || points % 2 != 0) {
    throw DomainError("trapezoid reference needs an even point count >= 4");
  }
  const double t_max = std::isinf(upper) ? 1.0 : upper / (scale + upper);
  const double fine = trapezoid_pass(f, points, scale, t_max);
  const double coarse = trapezoid_pass(f, points / 2, scale, t_max);
  IntegralEstimate out;
  out.value = fine;
  out.error_estimate = std::abs(fine - coarse) / 3.0;
  out.evaluations = points + points / 2 + 2;
  return out;
}

IntegralEstimate trapezoid_2d_semi_inf(const Integrand2D& f, long points_x, long points_y,
                                       double scale_x, double scale_y) {
  long evaluations = 0;
  auto outer_fine = [&](double x) {
    auto inner = trapezoid_semi_inf([&](double y) { return f(x, y); }, points_y, scale_y);
    evaluations += inner.evaluations;
    return inner.value;
  };
  IntegralEstimate out = trapezoid_semi_inf(outer_fine, points_x, scale_x);
  out.evaluations = evaluations;
  return out;
}

}  // namespace casimir
