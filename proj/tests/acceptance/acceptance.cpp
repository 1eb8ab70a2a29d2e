// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "casimir/casimir.hpp"
#include "casimir/errors.hpp"
#include "casimir/greens.hpp"
#include "support.hpp"

using namespace casimir;
using namespace casimir::testing;

namespace {

const ResponseModel kVac = ResponseModel::vacuum();

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

struct NamedMedium {
  const char* name;
  ResponseModel model;
  double n_static;
};

std::vector<NamedMedium> amplifying() {
  return {{"gain(0.9)", gain(0.9), 1.0 - 0.81}, {"gain(0.5)", gain(0.5), 1.0 - 0.25}};
}

std::vector<NamedMedium> passive() {
  return {{"loss(0.9)", loss(0.9), 1.0 + 0.81}, {"loss(0.5)", loss(0.5), 1.0 + 0.25}};
}

Outcome vacuum_regression() {
  double worst = 0.0;
  double slowest = 0.0;
  for (double d : {0.5, 1.0, 2.0}) {
    const double exact = -std::pow(M_PI, 2) / (240.0 * std::pow(d, 4));
    for (int form = 0; form < 2; ++form) {
      const auto start = std::chrono::steady_clock::now();
      const double f = form == 0 ? force_slab_qw(kVac, kVac, d).value
                                 : force_slab_s(kVac, kVac, d).value;
      const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
      worst = std::max(worst, std::abs(f / exact - 1.0));
      slowest = std::max(slowest, took.count());
    }
  }
  return {worst <= 1e-8 && slowest < 1.0,
          fmt("max rel err %.2e (tol 1e-8), slowest point %.3f s (limit 1 s)", worst, slowest)};
}

Outcome bounds(const std::vector<NamedMedium>& media, MediumClass expected) {
  const auto grid = log_grid(0.1, 10.0, 20);
  bool ok = true;
  double smallest_margin = INFINITY;
  for (const auto& m : media) {
    const auto report = bounds_check(m.model, m.model, grid);
    ok = ok && report.medium == expected && std::abs(report.n_static - m.n_static) < 1e-12;
    for (const auto& row : report.rows) {
      const double tol = 1e-6 * std::abs(row.force_vacuum);
      const double margin = std::min(row.margin_lower, row.margin_upper);
      ok = ok && row.force < 0.0 && margin > tol;
      smallest_margin = std::min(smallest_margin, margin / std::abs(row.force_vacuum));
    }
  }
  return {ok, fmt("20 log points in [0.1, 10], smallest margin %.3e |F_vac| (need > 1e-6)",
                  smallest_margin)};
}

Outcome form_equivalence() {
  double worst = 0.0;
  auto media = amplifying();
  for (auto& m : passive()) media.push_back(m);
  for (const auto& m : media) {
    for (double d : {0.5, 1.0, 2.0, 5.0}) {
      const double qw = force_slab_qw(m.model, m.model, d).value;
      const double s = force_slab_s(m.model, m.model, d).value;
      worst = std::max(worst, std::abs(qw - s) / std::abs(qw));
    }
  }
  return {worst <= 1e-6, fmt("max |F_qw - F_s|/|F| = %.2e (tol 1e-6)", worst)};
}

Outcome monotonicity() {
  const auto grid = log_grid(1e-3, 1e3, 100);
  bool ok = true;
  auto media = amplifying();
  for (auto& m : passive()) media.push_back(m);
  for (const auto& m : media) {
    const bool increasing = m.n_static < 1.0;
    double previous = eval_imag_axis(m.model, 0.0);
    for (double w : grid) {
      const double e = eval_imag_axis(m.model, w);
      ok = ok && (increasing ? (e > previous && e < 1.0) : (e < previous && e > 1.0));
      previous = e;
    }
  }
  return {ok, "100 log points in [1e-3, 1e3] for gain(0.9), gain(0.5), loss(0.9), loss(0.5)"};
}

Outcome kk_identity() {
  double worst = 0.0;
  auto media = amplifying();
  for (auto& m : passive()) media.push_back(m);
  media.push_back({"mixed", mixed_medium(), 0.0});
  for (const auto& m : media) {
    for (double w : {0.1, 1.0, 10.0}) {
      worst = std::max(worst, std::abs(kk_imag_axis(m.model, w, QuadratureSpec{}) -
                                       eval_imag_axis(m.model, w)));
    }
  }
  return {worst <= 1e-4, fmt("max abs deviation %.2e (tol 1e-4) over 5 models", worst)};
}

Outcome fresnel_oracle() {
  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Layer> layers;
    for (int k = 0; k < 4; ++k) {
      layers.push_back({random_lorentz(rng), random_lorentz(rng), uniform(rng, 0.05, 2.0)});
    }
    if (trial % 3 == 1) layers.front().thickness = kInfiniteThickness;
    if (trial % 3 == 2) layers.back().thickness = kInfiniteThickness;
    const Stack s(layers, trial % 4 == 0 && trial % 3 == 0);
    for (int m = 0; m < 10; ++m) {
      const Polarization sigma = m % 2 == 0 ? Polarization::TE : Polarization::TM;
      const TransverseMode mode{sigma, log_uniform(rng, 1e-3, 20.0), log_uniform(rng, 1e-3, 20.0)};
      for (std::size_t j = 0; j < s.size(); ++j) {
        for (Side side : {Side::plus, Side::minus}) {
          worst = std::max(worst, std::abs(r_recursive(s, j, side, mode) -
                                           r_transfer_oracle(s, j, side, mode)));
        }
      }
    }
  }
  return {worst <= 1e-10, fmt("100 stacks x 10 modes, max |r - r_oracle| = %.2e (tol 1e-10)", worst)};
}

Outcome green_limits() {
  std::mt19937_64 rng(41);
  double worst_single = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto eps = random_lorentz(rng);
    const auto mu = random_lorentz(rng);
    const bool infinite = trial % 2 == 0;
    const Stack s({{eps, mu, infinite ? kInfiniteThickness : uniform(rng, 0.2, 3.0)}}, false);
    const Polarization sigma = trial % 4 < 2 ? Polarization::TE : Polarization::TM;
    const TransverseMode mode{sigma, log_uniform(rng, 1e-3, 20.0), log_uniform(rng, 1e-3, 20.0)};
    const double lo = infinite ? -3.0 : 0.0;
    const double hi = infinite ? 3.0 : s.right_edge(0);
    const double z = uniform(rng, lo, hi);
    const double zp = uniform(rng, lo, hi);
    const double ref = g_homogeneous(eps, mu, mode, z, zp);
    worst_single = std::max(worst_single, std::abs(g_scalar(s, mode, z, zp) - ref) / ref);
  }

  double worst_fd = 0.0;
  struct Case {
    ResponseModel eps, mu;
    double thickness;
    Polarization sigma;
    double q, w, zp, z;
  };
  const std::vector<Case> cases{
      {kVac, kVac, 1.0, Polarization::TM, 0.0, 1.0, 0.5, 0.5},
      {kVac, kVac, 1.0, Polarization::TE, 0.5, 1.0, 0.25, 0.75},
      {loss(0.9), loss(0.9), 1.5, Polarization::TE, 0.3, 0.8, 0.5, 1.0},
      {gain(0.5), kVac, 0.75, Polarization::TM, 1.2, 0.4, 0.25, 0.25},
      {loss(2.0, 1.5, 0.3), gain(0.9), 2.0, Polarization::TM, 0.1, 1.3, 1.5, 0.5}};
  for (const auto& c : cases) {
    const Stack s({{c.eps, c.mu, c.thickness}}, true);
    const TransverseMode mode{c.sigma, c.q, c.w};
    const double fd =
        fd_green_extrapolated(sample_layers(s, c.w), c.sigma, c.q, c.w, c.zp, c.z, 800);
    worst_fd = std::max(worst_fd, std::abs(g_scalar(s, mode, c.z, c.zp) / fd - 1.0));
  }
  return {worst_single <= 1e-12 && worst_fd <= 1e-6,
          fmt("single layer vs homogeneous %.2e (tol 1e-12), mirrored vs FD %.2e (tol 1e-6)",
              worst_single, worst_fd)};
}

Outcome three_layer_collapse() {
  const auto quad = derivative_quadrature();
  double worst_collapse = 0.0;
  for (const auto& [d1, d2, d3] : {std::tuple{0.25, 0.5, 0.25}, std::tuple{0.5, 1.0, 0.7},
                                   std::tuple{1.0, 0.3, 2.0}}) {
    const Stack s({{kVac, kVac, d1}, {kVac, kVac, d2}, {kVac, kVac, d3}}, true);
    const double f = force_from_action(three_layer_energy(s, 1, quad), d2).value;
    worst_collapse = std::max(worst_collapse, std::abs(f / force_vacuum(d1 + d2 + d3) - 1.0));
  }

  // Vacuum outer layers of thickness 20 around a lossy layer, middle
  // thickness 1 -> 1.1.
  const auto l = loss(0.9);
  const Layer half{kVac, kVac, kInfiniteThickness};
  const double lifshitz = energy_lifshitz(half, {l, l, 1.1}, half, quad).value -
                          energy_lifshitz(half, {l, l, 1.0}, half, quad).value;
  auto action = [&](double d2) {
    return action_3layer(Stack({{kVac, kVac, 20.0}, {l, l, d2}, {kVac, kVac, 20.0}}, true), quad)
        .value;
  };
  const double rel = std::abs((action(1.1) - action(1.0)) / lifshitz - 1.0);
  return {worst_collapse <= 1e-5 && rel <= 1e-6,
          fmt("vacuum collapse max rel err %.2e (tol 1e-5); thick-outer energy difference "
              "rel err %.2e (tol 1e-6)",
              worst_collapse, rel)};
}

Outcome ideal_mirror() {
  const Layer wall{near_mirror(), kVac, kInfiniteThickness};
  double worst = 0.0;
  for (double d : {0.5, 1.0}) {
    const auto energy = lifshitz_energy(wall, {kVac, kVac, d}, wall, derivative_quadrature());
    worst = std::max(worst, std::abs(force_from_action(energy, d).value / force_vacuum(d) - 1.0));
  }
  return {worst <= 0.01, fmt("eps_static = 1 + 1e8, max rel deviation %.2e (tol 1e-2)", worst)};
}

Outcome mixed_sign_pattern() {
  const auto m = mixed_medium();
  auto excess = [&](double d) {
    return std::abs(force_slab_qw(m, m, d).value) - std::abs(force_vacuum(d));
  };
  const double e_small = excess(0.05);
  const double e_mid = excess(1.0);
  const double e_large = excess(50.0);
  const bool signs = e_small < 0.0 && e_mid > 0.0 && e_large < 0.0;
  auto relative = [&](double d) { return excess(d) / std::abs(force_vacuum(d)); };
  const double low = find_root_monotone(relative, 0.0, 0.05, 1.0, 1e-9);
  const double high = find_root_monotone(relative, 0.0, 1.0, 50.0, 1e-9);
  const bool bracket = low >= 0.2 && high <= 5.0;
  auto sign = [](double v) { return v < 0.0 ? "-" : "+"; };
  const std::string pattern = std::string(sign(e_small)) + "," + sign(e_mid) + "," +
                              sign(e_large) + (signs ? " (expected -,+,-)" : " (expected -,+,-, wrong)");
  return {signs && bracket,
          "|F|-|F_vac| signs at d=0.05, 1, 50: " + pattern +
              fmt("; crossovers %.5f and %.4f (need within [0.2, 5])", low, high)};
}

Outcome attraction() {
  std::vector<ResponseModel> media{kVac, gain(0.9), gain(0.5), loss(0.9), loss(0.5),
                                   mixed_medium()};
  std::mt19937_64 rng(97);
  for (int k = 0; k < 10; ++k) media.push_back(random_lorentz(rng));
  const auto grid = log_grid(0.05, 50.0, 20);
  long tested = 0;
  double largest = -INFINITY;
  for (const auto& m : media) {
    for (double d : grid) {
      const double f = force_slab_qw(m, m, d).value;
      largest = std::max(largest, f / std::abs(force_vacuum(d)));
      ++tested;
    }
  }
  const auto quad = derivative_quadrature();
  for (const auto& outer : {loss(0.9), gain(0.5)}) {
    const Layer half{outer, kVac, kInfiniteThickness};
    for (double d : {0.3, 1.0, 3.0}) {
      const double f =
          force_from_action(lifshitz_energy(half, {kVac, kVac, d}, half, quad), d).value;
      largest = std::max(largest, f / std::abs(force_vacuum(d)));
      ++tested;
    }
  }
  for (const auto& middle : {loss(0.9), gain(0.5)}) {
    for (double d : {0.3, 1.0, 3.0}) {
      const Stack s({{kVac, kVac, 1.0}, {middle, middle, d}, {kVac, kVac, 1.0}}, true);
      const double f = force_from_action(three_layer_energy(s, 1, quad), d).value;
      largest = std::max(largest, f / std::abs(force_vacuum(d)));
      ++tested;
    }
  }
  return {largest < 0.0,
          fmt("%.0f forces, largest F/|F_vac| = %.3e (need < 0)", static_cast<double>(tested),
              largest)};
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "vacuum regression", vacuum_regression},
      {2, "fully-amplifying bounds", [] { return bounds(amplifying(), MediumClass::fully_amplifying); }},
      {3, "passive bounds", [] { return bounds(passive(), MediumClass::passive); }},
      {4, "form equivalence", form_equivalence},
      {5, "imaginary-axis monotonicity", monotonicity},
      {6, "causality identity", kk_identity},
      {7, "reflection oracle", fresnel_oracle},
      {8, "Green function limits", green_limits},
      {9, "three-layer collapse", three_layer_collapse},
      {10, "ideal-mirror limit", ideal_mirror},
      {11, "mixed-medium sign pattern", mixed_sign_pattern},
      {12, "attraction", attraction},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s %2d %s: %s\n", o.passed ? "PASS" : "FAIL", c.number, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
