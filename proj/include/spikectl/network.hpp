#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "spikectl/matrix.hpp"
#include "spikectl/neuron.hpp"

namespace spikectl {

enum class NetworkKind { kSisoPair, kMimoGrid, kMimoRowGain, kPwa };

std::string to_string(NetworkKind kind);

/// Neurons plus the channel map that sums their signed spikes into the
/// control input. Neuron order is fixed at construction and is the id used
/// in spike trains.
class ControllerNetwork {
 public:
  ControllerNetwork(NetworkKind kind, std::size_t n_inputs, std::size_t n_channels,
                    std::vector<IafNeuron> neurons);

  NetworkKind kind() const noexcept { return kind_; }
  std::size_t n_inputs() const noexcept { return n_inputs_; }
  std::size_t n_channels() const noexcept { return n_channels_; }
  std::size_t size() const noexcept { return neurons_.size(); }

  const std::vector<IafNeuron>& neurons() const noexcept { return neurons_; }
  std::vector<IafNeuron>& neurons() noexcept { return neurons_; }
  const IafNeuron& operator[](std::size_t i) const { return neurons_.at(i); }

  /// Sum of amplitudes of the neurons feeding `channel`.
  double channel_amplitude_sum(std::size_t channel) const;
  bool all_states_zero() const noexcept;

 private:
  NetworkKind kind_;
  std::size_t n_inputs_;
  std::size_t n_channels_;
  std::vector<IafNeuron> neurons_;
};

/// Spike amplitudes of the grid construction, one matrix per polarity (nu x ny).
struct GridAmplitudes {
  Matrix positive;  // alpha_{1,i,j}
  Matrix negative;  // alpha_{2,i,j}

  static GridAmplitudes symmetric(const Matrix& alpha) { return {alpha, alpha}; }
};

/// Optional initial states; an empty vector means all zero.
using InitialStates = std::vector<double>;

ControllerNetwork build_siso_pair(double k, double alpha1, double alpha2, const InitialStates& xi0 = {});

/// Two unit-row neurons per nonzero K_ij with Delta = alpha / |K_ij|; a
/// negative K_ij flips both spike signs.
ControllerNetwork build_mimo_grid(const Matrix& k, const GridAmplitudes& alpha, const InitialStates& xi0 = {});

/// Two neurons per control channel reading K_i. y with unit gain (Delta = alpha).
ControllerNetwork build_mimo_rowgain(const Matrix& k, std::span<const double> alpha_positive,
                                     std::span<const double> alpha_negative, const InitialStates& xi0 = {});

/// Continuous piecewise-affine map
///   g(y) = c - K0 max{0, -(y - b1)} + K1 max{0, y - b1} + sum_{i>=2} (Ki - K{i-1}) max{0, y - bi}.
struct PwaFunction {
  double c = 0.0;
  std::vector<double> breakpoints;  // b1 <= ... <= bN
  std::vector<double> slopes;       // K0 ... KN

  std::size_t pieces() const noexcept { return breakpoints.size(); }
  void validate() const;
  /// Coefficient of the i-th rectified term (i = 0..N).
  double term_gain(std::size_t i) const;
};

double pwa_eval(const PwaFunction& g, double y);

/// N + 3 neurons on a scalar input: one per rectified term (omitted when its
/// gain is zero) and two constant-input neurons carrying +c and -c.
ControllerNetwork build_pwa_network(const PwaFunction& g, std::span<const double> alpha,
                                    const InitialStates& xi0 = {});

}  // namespace spikectl
