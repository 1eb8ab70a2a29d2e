#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "casimir/response.hpp"
#include "casimir/stack.hpp"

namespace casimir::testing {

inline ResponseModel gain(double omega_p, double omega_0 = 1.0, double gamma = 0.001) {
  return ResponseModel::lorentz({{omega_p, omega_0, gamma, TermSign::gain}});
}

inline ResponseModel loss(double omega_p, double omega_0 = 1.0, double gamma = 0.001) {
  return ResponseModel::lorentz({{omega_p, omega_0, gamma, TermSign::loss}});
}

/// Gain resonance plus a broad loss resonance; absorbing at low frequency,
/// amplifying near omega_0 = 1.
inline ResponseModel mixed_medium() {
  return ResponseModel::lorentz(
      {{0.85, 1.0, 0.01, TermSign::gain}, {1.8, 1.5, 10.0, TermSign::loss}});
}

/// Lorentz loss medium with eps(0) = 1 + 1e8, close to an ideal mirror.
inline ResponseModel near_mirror() { return loss(1e5, 10.0, 0.001); }

/// Random valid single-term Lorentz model.
inline ResponseModel random_lorentz(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double omega_0 = 0.3 + 3.0 * u(rng);
  const double gamma = std::pow(10.0, -3.0 + 3.0 * u(rng));
  if (u(rng) < 0.5) return gain((0.05 + 0.9 * u(rng)) * omega_0, omega_0, gamma);
  return loss((0.05 + 2.0 * u(rng)) * omega_0, omega_0, gamma);
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::exp(uniform(rng, std::log(lo), std::log(hi)));
}

/// Finite-volume solution of
///   -(p u')' + p Q^2 u = delta(z - z0)  on [0, L],
/// p = 1/mu (TE) or 1/eps (TM), with u = 0 (TE) or u' = 0 (TM) at both ends.
/// Nodes fall on every interface when `cells_per_unit` times each thickness
/// is an integer. Returns u at z.
inline double fd_green(const std::vector<LayerSample>& layers, Polarization sigma, double q,
                       double w, double z0, double z, int cells_per_unit) {
  double length = 0.0;
  for (const auto& l : layers) length += l.thickness;
  const int n = static_cast<int>(std::lround(length * cells_per_unit));
  const double h = length / n;

  auto layer_at = [&](double x) -> const LayerSample& {
    double edge = 0.0;
    for (const auto& l : layers) {
      edge += l.thickness;
      if (x < edge) return l;
    }
    return layers.back();
  };
  auto coefficient = [&](const LayerSample& l) {
    return sigma == Polarization::TE ? 1.0 / l.mu : 1.0 / l.eps;
  };
  auto reaction = [&](const LayerSample& l) {
    return coefficient(l) * (q * q + w * w * l.eps * l.mu);
  };

  // Half-cell flux coefficients and lumped reaction per node.
  std::vector<double> p_half(n);
  for (int i = 0; i < n; ++i) p_half[i] = coefficient(layer_at((i + 0.5) * h));
  std::vector<double> lower(n + 1, 0.0), diag(n + 1, 0.0), upper(n + 1, 0.0), rhs(n + 1, 0.0);
  for (int i = 0; i <= n; ++i) {
    double c = 0.0;
    if (i > 0) {
      c += 0.5 * h * reaction(layer_at((i - 0.5) * h));
      diag[i] += p_half[i - 1] / h;
      lower[i] = -p_half[i - 1] / h;
    }
    if (i < n) {
      c += 0.5 * h * reaction(layer_at((i + 0.5) * h));
      diag[i] += p_half[i] / h;
      upper[i] = -p_half[i] / h;
    }
    diag[i] += c;
  }
  const int source = static_cast<int>(std::lround(z0 / h));
  rhs[source] = 1.0;

  int first = 0;
  int last = n;
  if (sigma == Polarization::TE) {
    first = 1;
    last = n - 1;
  }
  // Thomas algorithm on [first, last].
  for (int i = first + 1; i <= last; ++i) {
    const double m = lower[i] / diag[i - 1];
    diag[i] -= m * upper[i - 1];
    rhs[i] -= m * rhs[i - 1];
  }
  std::vector<double> u(n + 1, 0.0);
  u[last] = rhs[last] / diag[last];
  for (int i = last - 1; i >= first; --i) u[i] = (rhs[i] - upper[i] * u[i + 1]) / diag[i];
  return u[static_cast<std::size_t>(std::lround(z / h))];
}

/// Richardson-extrapolated fd_green from two resolutions.
inline double fd_green_extrapolated(const std::vector<LayerSample>& layers, Polarization sigma,
                                    double q, double w, double z0, double z, int cells_per_unit) {
  const double coarse = fd_green(layers, sigma, q, w, z0, z, cells_per_unit);
  const double fine = fd_green(layers, sigma, q, w, z0, z, 2 * cells_per_unit);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace casimir::testing
