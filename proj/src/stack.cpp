#include "casimir/stack.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

constexpr double kDecayFloor = 1e-300;

double decay_factor(double Q, double thickness) {
  if (thickness == kInfiniteThickness) return 0.0;
  const double e = std::exp(-2.0 * Q * thickness);
  return e < kDecayFloor ? 0.0 : e;
}

LayerWave make_wave(const LayerSample& layer, const TransverseMode& mode) {
  LayerWave wave;
  wave.Q = q_long(layer, mode);
  wave.pref = mode.sigma == Polarization::TE ? layer.mu : layer.eps;
  wave.thickness = layer.thickness;
  wave.decay = decay_factor(wave.Q, layer.thickness);
  return wave;
}

double interface_coefficient(const LayerWave& from, const LayerWave& to) {
  const double a = to.pref / to.Q;
  const double b = from.pref / from.Q;
  return (a - b) / (a + b);
}

void check_index(std::size_t j, std::size_t n) {
  if (j >= n) {
    std::ostringstream msg;
    msg << "layer index " << j << " out of range for a stack of " << n << " layers";
    throw IndexError(msg.str());
  }
}

}  // namespace

const char* to_string(Polarization sigma) { return sigma == Polarization::TE ? "TE" : "TM"; }

void TransverseMode::validate() const {
  if (!(q >= 0.0) || !(w >= 0.0) || !std::isfinite(q) || !std::isfinite(w)) {
    throw DomainError("mode needs finite q >= 0 and w >= 0");
  }
  if (q == 0.0 && w == 0.0) throw DomainError("mode with q = w = 0 is not allowed");
}

Stack::Stack(std::vector<Layer> layers, bool mirrors)
    : layers_(std::move(layers)), mirrors_(mirrors) {
  const std::size_t n = layers_.size();
  if (n == 0) throw DomainError("a stack needs at least one layer");
  for (std::size_t j = 0; j < n; ++j) {
    const double d = layers_[j].thickness;
    if (!(d > 0.0)) throw DomainError("layer thickness must be positive");
    if (d == kInfiniteThickness) {
      if (mirrors_) throw DomainError("stacks between mirrors need finite layers");
      if (j != 0 && j + 1 != n) throw DomainError("only outer layers may be semi-infinite");
    } else if (!std::isfinite(d)) {
      throw DomainError("layer thickness must be finite or +infinity");
    }
  }
  edges_.resize(n + 1);
  edges_[0] = layers_[0].semi_infinite() ? -kInfiniteThickness : 0.0;
  double z = layers_[0].semi_infinite() ? 0.0 : layers_[0].thickness;
  edges_[1] = z;
  for (std::size_t j = 1; j < n; ++j) {
    z += layers_[j].thickness;
    edges_[j + 1] = z;
  }
  if (n == 1 && layers_[0].semi_infinite()) edges_[1] = kInfiniteThickness;
}

const Layer& Stack::layer(std::size_t j) const {
  check_index(j, layers_.size());
  return layers_[j];
}

double Stack::left_edge(std::size_t j) const {
  check_index(j, layers_.size());
  return edges_[j];
}

double Stack::right_edge(std::size_t j) const {
  check_index(j, layers_.size());
  return edges_[j + 1];
}

double Stack::finite_thickness() const {
  double total = 0.0;
  for (const auto& l : layers_) {
    if (!l.semi_infinite()) total += l.thickness;
  }
  return total;
}

std::size_t Stack::locate(double z) const {
  if (std::isnan(z) || z < edges_.front() || z > edges_.back()) {
    std::ostringstream msg;
    msg << "coordinate z=" << z << " lies outside the stack [" << edges_.front() << ", "
        << edges_.back() << "]";
    throw DomainError(msg.str());
  }
  for (std::size_t j = 0; j < layers_.size(); ++j) {
    if (z <= edges_[j + 1]) return j;
  }
  return layers_.size() - 1;
}

Stack Stack::reversed() const {
  std::vector<Layer> copy(layers_.rbegin(), layers_.rend());
  return Stack(std::move(copy), mirrors_);
}

double wall_reflection(Polarization sigma) { return sigma == Polarization::TE ? -1.0 : 1.0; }

double q_long(const LayerSample& layer, const TransverseMode& mode) {
  mode.validate();
  const double n2 = layer.eps * layer.mu;
  if (!(n2 > 0.0)) {
    throw InvalidMedium("eps(iw) mu(iw) must be positive on the imaginary axis");
  }
  return std::sqrt(mode.q * mode.q + mode.w * mode.w * n2);
}

double q_long(const Layer& layer, const TransverseMode& mode) {
  mode.validate();
  LayerSample s{eval_imag_axis(layer.eps, mode.w), eval_imag_axis(layer.mu, mode.w),
                layer.thickness};
  return q_long(s, mode);
}

double r_interface(const LayerSample& from, const LayerSample& to, const TransverseMode& mode) {
  return interface_coefficient(make_wave(from, mode), make_wave(to, mode));
}

double r_interface(const Layer& from, const Layer& to, const TransverseMode& mode) {
  mode.validate();
  const LayerSample a{eval_imag_axis(from.eps, mode.w), eval_imag_axis(from.mu, mode.w)};
  const LayerSample b{eval_imag_axis(to.eps, mode.w), eval_imag_axis(to.mu, mode.w)};
  return r_interface(a, b, mode);
}

std::vector<LayerSample> sample_layers(const Stack& stack, double w) {
  std::vector<LayerSample> out;
  out.reserve(stack.size());
  for (const auto& l : stack.layers()) {
    out.push_back({eval_imag_axis(l.eps, w), eval_imag_axis(l.mu, w), l.thickness});
  }
  return out;
}

ReflectionTable reflection_table(std::span<const LayerSample> layers, bool mirrors,
                                 const TransverseMode& mode) {
  mode.validate();
  const std::size_t n = layers.size();
  if (n == 0) throw DomainError("a stack needs at least one layer");
  ReflectionTable table;
  table.sigma = mode.sigma;
  table.mirrors = mirrors;
  table.waves.reserve(n);
  for (const auto& l : layers) table.waves.push_back(make_wave(l, mode));

  const double terminal = mirrors ? wall_reflection(mode.sigma) : 0.0;
  table.r_plus.assign(n, terminal);
  table.r_minus.assign(n, terminal);
  for (std::size_t j = n - 1; j-- > 0;) {
    const double r_if = interface_coefficient(table.waves[j], table.waves[j + 1]);
    const double re = table.r_plus[j + 1] * table.waves[j + 1].decay;
    table.r_plus[j] = (r_if + re) / (1.0 + r_if * re);
  }
  for (std::size_t j = 1; j < n; ++j) {
    const double r_if = interface_coefficient(table.waves[j], table.waves[j - 1]);
    const double re = table.r_minus[j - 1] * table.waves[j - 1].decay;
    table.r_minus[j] = (r_if + re) / (1.0 + r_if * re);
  }
  return table;
}

ReflectionTable reflection_table(const Stack& stack, const TransverseMode& mode) {
  mode.validate();
  const auto samples = sample_layers(stack, mode.w);
  return reflection_table(samples, stack.mirrors(), mode);
}

double r_recursive(std::span<const LayerSample> layers, bool mirrors, std::size_t j, Side side,
                   const TransverseMode& mode) {
  check_index(j, layers.size());
  const auto table = reflection_table(layers, mirrors, mode);
  return side == Side::plus ? table.r_plus[j] : table.r_minus[j];
}

double r_recursive(const Stack& stack, std::size_t j, Side side, const TransverseMode& mode) {
  check_index(j, stack.size());
  const auto samples = sample_layers(stack, mode.w);
  return r_recursive(samples, stack.mirrors(), j, side, mode);
}

double d_factor(std::span<const LayerSample> layers, bool mirrors, std::size_t j,
                const TransverseMode& mode) {
  check_index(j, layers.size());
  if (layers[j].thickness == kInfiniteThickness) {
    throw DomainError("multiple-reflection factor needs a finite layer");
  }
  const auto table = reflection_table(layers, mirrors, mode);
  const double d = 1.0 - table.r_minus[j] * table.r_plus[j] * table.waves[j].decay;
  if (!(d > 0.0)) {
    std::ostringstream msg;
    msg << "round-trip gain in layer " << j << " (" << to_string(mode.sigma) << ", q=" << mode.q
        << ", w=" << mode.w << "): D=" << d;
    throw RoundTripGainError(msg.str());
  }
  return d;
}

double d_factor(const Stack& stack, std::size_t j, const TransverseMode& mode) {
  check_index(j, stack.size());
  const auto samples = sample_layers(stack, mode.w);
  return d_factor(samples, stack.mirrors(), j, mode);
}

double r_composed(std::span<const LayerSample> layers, bool mirrors, std::size_t i,
                  std::size_t j, std::size_t k, const TransverseMode& mode) {
  const std::size_t n = layers.size();
  check_index(i, n);
  check_index(j, n);
  check_index(k, n);
  const auto adjacent = [](std::size_t a, std::size_t b) { return a + 1 == b || b + 1 == a; };
  if (!adjacent(i, j) || !adjacent(j, k) || i == k) {
    throw IndexError("composed reflection needs i and k on opposite sides of j");
  }
  if (layers[j].thickness == kInfiniteThickness) {
    throw DomainError("composed reflection needs a finite middle layer");
  }
  const auto table = reflection_table(layers, mirrors, mode);
  const double r_ij = interface_coefficient(table.waves[i], table.waves[j]);
  const double r_ji = interface_coefficient(table.waves[j], table.waves[i]);
  const double t_product = (1.0 + r_ij) * (1.0 + r_ji);
  const double r_jk = k > j ? table.r_plus[j] : table.r_minus[j];
  const double e = table.waves[j].decay;
  const double denom = 1.0 - r_ji * r_jk * e;
  if (!(denom > 0.0)) {
    std::ostringstream msg;
    msg << "round-trip gain in layer " << j << " (" << to_string(mode.sigma) << ", q=" << mode.q
        << ", w=" << mode.w << "): D=" << denom;
    throw RoundTripGainError(msg.str());
  }
  return (r_ij + (t_product - r_ij * r_ji) * r_jk * e) / denom;
}

double r_composed(const Stack& stack, std::size_t i, std::size_t j, std::size_t k,
                  const TransverseMode& mode) {
  const auto samples = sample_layers(stack, mode.w);
  return r_composed(samples, stack.mirrors(), i, j, k, mode);
}

double r_transfer_oracle(std::span<const LayerSample> layers, bool mirrors, std::size_t j,
                         Side side, const TransverseMode& mode) {
  mode.validate();
  const std::size_t n = layers.size();
  check_index(j, n);
  std::vector<LayerSample> ordered(layers.begin(), layers.end());
  if (side == Side::minus) {
    std::reverse(ordered.begin(), ordered.end());
    j = n - 1 - j;
  }
  const double r_wall = wall_reflection(mode.sigma);
  if (j + 1 == n) return mirrors ? r_wall : 0.0;

  std::vector<LayerWave> waves;
  waves.reserve(n);
  for (const auto& l : ordered) waves.push_back(make_wave(l, mode));

  // State (u, p u') carried leftwards, p = 1/pref.
  auto admittance = [](const LayerWave& w) { return w.Q / w.pref; };
  auto propagate = [&](const LayerWave& w, double& u, double& flux) {
    const double t = std::tanh(w.Q * w.thickness);
    const double y = admittance(w);
    const double u_new = u - t * flux / y;
    const double flux_new = -y * t * u + flux;
    const double scale = std::max(std::abs(u_new), std::abs(flux_new));
    u = u_new / scale;
    flux = flux_new / scale;
  };

  const LayerWave& last = waves[n - 1];
  double u;
  double flux;
  if (mirrors) {
    u = 1.0 + r_wall;
    flux = admittance(last) * (r_wall - 1.0);
    propagate(last, u, flux);
  } else {
    u = 1.0;
    flux = -admittance(last);
  }
  for (std::size_t m = n - 1; m-- > j + 1;) propagate(waves[m], u, flux);

  const double y = admittance(waves[j]);
  const double a = 0.5 * (u - flux / y);
  const double b = 0.5 * (u + flux / y);
  if (a == 0.0 || !std::isfinite(a) || !std::isfinite(b)) {
    throw IndexError("singular transfer matrix");
  }
  return b / a;
}

double r_transfer_oracle(const Stack& stack, std::size_t j, Side side,
                         const TransverseMode& mode) {
  check_index(j, stack.size());
  const auto samples = sample_layers(stack, mode.w);
  return r_transfer_oracle(samples, stack.mirrors(), j, side, mode);
}

}  // namespace casimir
