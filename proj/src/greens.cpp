#include "casimir/greens.hpp"

#include <cmath>
#include <sstream>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

// r e^{-x}, zero when r vanishes so that infinite exponents stay harmless.
double reflected(double r, double x) { return r == 0.0 ? 0.0 : r * std::exp(-x); }

double multiple_reflection(const ReflectionTable& t, std::size_t j) {
  const double d = 1.0 - t.r_minus[j] * t.r_plus[j] * t.waves[j].decay;
  if (!(d > 0.0)) {
    std::ostringstream msg;
    msg << "round-trip gain in layer " << j << " (" << to_string(t.sigma) << "): D=" << d;
    throw RoundTripGainError(msg.str());
  }
  return d;
}

double same_layer(const Stack& stack, const ReflectionTable& t, std::size_t j, double z,
                  double zp, bool derivative) {
  const LayerWave& w = t.waves[j];
  const double Q = w.Q;
  const double zl = stack.left_edge(j);
  const double zr = stack.right_edge(j);
  const double rp = t.r_plus[j];
  const double rm = t.r_minus[j];
  const double dist = std::abs(z - zp);

  const double direct = std::exp(-Q * dist);
  const double right = reflected(rp, Q * (2.0 * zr - z - zp));
  const double left = reflected(rm, Q * (z + zp - 2.0 * zl));
  const double both = reflected(rm * rp, Q * (2.0 * w.thickness - dist));
  const double sum = derivative ? Q * Q * (direct - right - left + both)
                                : direct + right + left + both;
  return w.pref * sum / (2.0 * Q * multiple_reflection(t, j));
}

// Source at zp in layer j, field at z in layer l > j.
double cross_layer(const Stack& stack, const ReflectionTable& t, std::size_t j, std::size_t l,
                   double z, double zp, bool derivative) {
  const LayerWave& src = t.waves[j];
  const double zr = stack.right_edge(j);
  const double zl = stack.left_edge(j);
  const double outgoing = std::exp(-src.Q * (zr - zp));
  const double bounced = reflected(t.r_minus[j], src.Q * (zr + zp - 2.0 * zl));
  const double source = derivative ? src.Q * (outgoing - bounced) : outgoing + bounced;
  double amplitude = src.pref * source / (2.0 * src.Q * multiple_reflection(t, j));

  auto transmission = [&](std::size_t m) {
    return (1.0 + t.r_plus[m]) / (1.0 + t.r_plus[m + 1] * t.waves[m + 1].decay);
  };
  amplitude *= transmission(j);
  for (std::size_t m = j + 1; m < l; ++m) {
    amplitude *= std::exp(-t.waves[m].Q * t.waves[m].thickness) * transmission(m);
  }

  const LayerWave& dst = t.waves[l];
  const double x = z - stack.left_edge(l);
  const double forward = std::exp(-dst.Q * x);
  const double back = reflected(t.r_plus[l], dst.Q * (2.0 * dst.thickness - x));
  if (derivative) return amplitude * dst.Q * (forward - back);
  return amplitude * (forward + back);
}

double evaluate(const Stack& stack, const TransverseMode& mode, double z, double zp,
                bool derivative) {
  const std::size_t l = stack.locate(z);
  const std::size_t j = stack.locate(zp);
  const ReflectionTable table = reflection_table(stack, mode);
  if (l == j) return same_layer(stack, table, j, z, zp, derivative);
  if (l > j) return cross_layer(stack, table, j, l, z, zp, derivative);
  return cross_layer(stack, table, l, j, zp, z, derivative);
}

}  // namespace

double g_homogeneous(const ResponseModel& eps, const ResponseModel& mu,
                     const TransverseMode& mode, double z, double zp) {
  mode.validate();
  const LayerSample s{eval_imag_axis(eps, mode.w), eval_imag_axis(mu, mode.w)};
  const double Q = q_long(s, mode);
  const double pref = mode.sigma == Polarization::TE ? s.mu : s.eps;
  return pref * std::exp(-Q * std::abs(z - zp)) / (2.0 * Q);
}

double g_scalar(const Stack& stack, const TransverseMode& mode, double z, double zp) {
  return evaluate(stack, mode, z, zp, false);
}

double g_scalar_mixed_derivative(const Stack& stack, const TransverseMode& mode, double z,
                                 double zp) {
  return evaluate(stack, mode, z, zp, true);
}

Matrix2 gamma_entries(const Stack& stack, const TransverseMode& mode) {
  if (stack.mirrors()) {
    throw DomainError("boundary matrix is built on a stack without mirrors");
  }
  for (const auto& l : stack.layers()) {
    if (l.semi_infinite()) throw DomainError("boundary matrix needs finite layers");
  }
  const double z1 = 0.0;
  const double z2 = stack.finite_thickness();
  const bool derivative = mode.sigma == Polarization::TE;
  Matrix2 m;
  m.a11 = evaluate(stack, mode, z1, z1, derivative);
  m.a12 = evaluate(stack, mode, z1, z2, derivative);
  m.a21 = evaluate(stack, mode, z2, z1, derivative);
  m.a22 = evaluate(stack, mode, z2, z2, derivative);
  return m;
}

}  // namespace casimir
