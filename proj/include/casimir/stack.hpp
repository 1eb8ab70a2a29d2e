#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "casimir/response.hpp"

namespace casimir {

enum class Polarization { TE, TM };
enum class Side { plus, minus };

const char* to_string(Polarization sigma);

/// Evaluation point (sigma, q, w) on the imaginary frequency axis.
struct TransverseMode {
  Polarization sigma = Polarization::TE;
  double q = 0.0;
  double w = 0.0;

  void validate() const;
};

inline constexpr double kInfiniteThickness = std::numeric_limits<double>::infinity();

struct Layer {
  ResponseModel eps;
  ResponseModel mu;
  double thickness = kInfiniteThickness;

  bool semi_infinite() const noexcept { return thickness == kInfiniteThickness; }
};

/// Layers ordered left to right. With `mirrors`, perfect conductors sit at
/// both outer faces; otherwise the outer layers extend to infinity.
///
/// Coordinates: z = 0 at the left face of the first layer when it is finite,
/// otherwise at the interface between the first and second layer.
class Stack {
 public:
  Stack(std::vector<Layer> layers, bool mirrors);

  std::size_t size() const noexcept { return layers_.size(); }
  const Layer& layer(std::size_t j) const;
  const std::vector<Layer>& layers() const noexcept { return layers_; }
  bool mirrors() const noexcept { return mirrors_; }

  double left_edge(std::size_t j) const;
  double right_edge(std::size_t j) const;
  /// Sum of finite thicknesses.
  double finite_thickness() const;
  /// Index of the layer containing z; interface points go to the left layer.
  std::size_t locate(double z) const;

  /// Copy with layer order reversed.
  Stack reversed() const;

 private:
  std::vector<Layer> layers_;
  bool mirrors_;
  std::vector<double> edges_;
};

/// Response of one layer at one mode, all real on the imaginary axis.
struct LayerSample {
  double eps = 1.0;
  double mu = 1.0;
  double thickness = kInfiniteThickness;
};

/// Derived per-layer quantities at a mode.
struct LayerWave {
  double Q = 0.0;
  double pref = 1.0;   // mu for TE, eps for TM
  double thickness = kInfiniteThickness;
  double decay = 0.0;  // e^{-2 Q d}, zero for semi-infinite layers
};

/// Generalized reflection coefficients of every layer at one mode.
struct ReflectionTable {
  std::vector<LayerWave> waves;
  std::vector<double> r_plus;
  std::vector<double> r_minus;
  Polarization sigma = Polarization::TE;
  bool mirrors = false;
};

/// Reflection of a perfect conductor seen from inside the stack.
double wall_reflection(Polarization sigma);

double q_long(const Layer& layer, const TransverseMode& mode);
double q_long(const LayerSample& layer, const TransverseMode& mode);

double r_interface(const Layer& from, const Layer& to, const TransverseMode& mode);
double r_interface(const LayerSample& from, const LayerSample& to, const TransverseMode& mode);

std::vector<LayerSample> sample_layers(const Stack& stack, double w);
ReflectionTable reflection_table(std::span<const LayerSample> layers, bool mirrors,
                                 const TransverseMode& mode);
ReflectionTable reflection_table(const Stack& stack, const TransverseMode& mode);

/// Generalized reflection coefficient seen from inside layer j (0-based).
double r_recursive(const Stack& stack, std::size_t j, Side side, const TransverseMode& mode);
double r_recursive(std::span<const LayerSample> layers, bool mirrors, std::size_t j, Side side,
                   const TransverseMode& mode);

/// D_j = 1 - r_{j-} r_{j+} e^{-2 Q_j d_j}. Throws RoundTripGainError when
/// nonpositive.
double d_factor(const Stack& stack, std::size_t j, const TransverseMode& mode);
double d_factor(std::span<const LayerSample> layers, bool mirrors, std::size_t j,
                const TransverseMode& mode);

/// Reflection from region i off layer j, which is backed by region k.
double r_composed(const Stack& stack, std::size_t i, std::size_t j, std::size_t k,
                  const TransverseMode& mode);
double r_composed(std::span<const LayerSample> layers, bool mirrors, std::size_t i,
                  std::size_t j, std::size_t k, const TransverseMode& mode);

/// Independent evaluation of r_recursive by 2x2 propagation matrices acting
/// on the state (u, p u'), p = 1/mu (TE) or 1/eps (TM).
double r_transfer_oracle(const Stack& stack, std::size_t j, Side side,
                         const TransverseMode& mode);
double r_transfer_oracle(std::span<const LayerSample> layers, bool mirrors, std::size_t j,
                         Side side, const TransverseMode& mode);

}  // namespace casimir
