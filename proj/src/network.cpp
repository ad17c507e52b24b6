#include "spikectl/network.hpp"

#include <cmath>
#include <string>

#include "spikectl/errors.hpp"

namespace spikectl {

namespace {

Vector unit_row(std::size_t n, std::size_t j) {
  Vector w(n, 0.0);
  w[j] = 1.0;
  return w;
}

int sign_of(double v) { return v < 0.0 ? -1 : 1; }

void apply_initial_states(std::vector<IafNeuron>& neurons, const InitialStates& xi0) {
  if (xi0.empty()) return;
  if (xi0.size() != neurons.size()) {
    throw DimensionError("initial states: got " + std::to_string(xi0.size()) + " values for " +
                         std::to_string(neurons.size()) + " neurons");
  }
  for (std::size_t i = 0; i < neurons.size(); ++i) neurons[i].set_state(xi0[i]);
}

}  // namespace

std::string to_string(NetworkKind kind) {
  switch (kind) {
    case NetworkKind::kSisoPair: return "siso_pair";
    case NetworkKind::kMimoGrid: return "mimo_grid";
    case NetworkKind::kMimoRowGain: return "mimo_rowgain";
    case NetworkKind::kPwa: return "pwa";
  }
  return "unknown";
}

ControllerNetwork::ControllerNetwork(NetworkKind kind, std::size_t n_inputs, std::size_t n_channels,
                                     std::vector<IafNeuron> neurons)
    : kind_(kind), n_inputs_(n_inputs), n_channels_(n_channels), neurons_(std::move(neurons)) {
  if (neurons_.empty()) throw DomainError("network: no neurons");
  for (const IafNeuron& n : neurons_) {
    if (n.input_weights().size() != n_inputs_) throw DimensionError("network: neuron input width mismatch");
    if (n.channel() >= n_channels_) throw DimensionError("network: neuron channel out of range");
  }
}

double ControllerNetwork::channel_amplitude_sum(std::size_t channel) const {
  double s = 0.0;
  for (const IafNeuron& n : neurons_)
    if (n.channel() == channel) s += n.amplitude();
  return s;
}

bool ControllerNetwork::all_states_zero() const noexcept {
  for (const IafNeuron& n : neurons_)
    if (n.state() != 0.0) return false;
  return true;
}

ControllerNetwork build_siso_pair(double k, double alpha1, double alpha2, const InitialStates& xi0) {
  if (!(k > 0.0)) throw DomainError("build_siso_pair: K must be > 0 (flip the emitted sign for K < 0)");
  if (!(alpha1 > 0.0) || !(alpha2 > 0.0)) throw DomainError("build_siso_pair: amplitudes must be > 0");
  std::vector<IafNeuron> neurons;
  neurons.emplace_back(NeuronParams{alpha1 / k, alpha1, +1, +1, 0.0, {1.0}, 0, 0.0, "pos"});
  neurons.emplace_back(NeuronParams{alpha2 / k, alpha2, -1, -1, 0.0, {1.0}, 0, 0.0, "neg"});
  apply_initial_states(neurons, xi0);
  return ControllerNetwork(NetworkKind::kSisoPair, 1, 1, std::move(neurons));
}

ControllerNetwork build_mimo_grid(const Matrix& k, const GridAmplitudes& alpha, const InitialStates& xi0) {
  const std::size_t nu = k.rows();
  const std::size_t ny = k.cols();
  if (alpha.positive.rows() != nu || alpha.positive.cols() != ny || alpha.negative.rows() != nu ||
      alpha.negative.cols() != ny) {
    throw DimensionError("build_mimo_grid: amplitude matrices must match K's shape");
  }
  std::vector<IafNeuron> neurons;
  for (std::size_t i = 0; i < nu; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      const double kij = k(i, j);
      if (kij == 0.0) continue;
      const double a1 = alpha.positive(i, j);
      const double a2 = alpha.negative(i, j);
      if (!(a1 > 0.0) || !(a2 > 0.0)) {
        throw DomainError("build_mimo_grid: alpha(" + std::to_string(i) + "," + std::to_string(j) +
                          ") must be > 0 where K is nonzero");
      }
      const double mag = std::abs(kij);
      const int s = sign_of(kij);
      const std::string tag = std::to_string(i) + "_" + std::to_string(j);
      neurons.emplace_back(NeuronParams{a1 / mag, a1, s, +1, 0.0, unit_row(ny, j), i, 0.0, "pos_" + tag});
      neurons.emplace_back(NeuronParams{a2 / mag, a2, -s, -1, 0.0, unit_row(ny, j), i, 0.0, "neg_" + tag});
    }
  }
  if (neurons.empty()) throw DomainError("build_mimo_grid: K is all zero, network would be empty");
  apply_initial_states(neurons, xi0);
  return ControllerNetwork(NetworkKind::kMimoGrid, ny, nu, std::move(neurons));
}

ControllerNetwork build_mimo_rowgain(const Matrix& k, std::span<const double> alpha_positive,
                                     std::span<const double> alpha_negative, const InitialStates& xi0) {
  const std::size_t nu = k.rows();
  const std::size_t ny = k.cols();
  if (alpha_positive.size() != nu || alpha_negative.size() != nu) {
    throw DimensionError("build_mimo_rowgain: need one amplitude pair per control channel");
  }
  std::vector<IafNeuron> neurons;
  for (std::size_t i = 0; i < nu; ++i) {
    const auto row = k.row(i);
    bool any = false;
    for (double v : row) any = any || v != 0.0;
    if (!any) throw DomainError("build_mimo_rowgain: row " + std::to_string(i) + " of K is zero");
    if (!(alpha_positive[i] > 0.0) || !(alpha_negative[i] > 0.0)) {
      throw DomainError("build_mimo_rowgain: amplitudes must be > 0");
    }
    Vector w(row.begin(), row.end());
    const std::string tag = std::to_string(i);
    neurons.emplace_back(NeuronParams{alpha_positive[i], alpha_positive[i], +1, +1, 0.0, w, i, 0.0, "pos_" + tag});
    neurons.emplace_back(NeuronParams{alpha_negative[i], alpha_negative[i], -1, -1, 0.0, w, i, 0.0, "neg_" + tag});
  }
  apply_initial_states(neurons, xi0);
  return ControllerNetwork(NetworkKind::kMimoRowGain, ny, nu, std::move(neurons));
}

// ---------------------------------------------------------------------------

void PwaFunction::validate() const {
  const std::size_t n = breakpoints.size();
  if (n == 0) throw DomainError("pwa: at least one breakpoint is required");
  if (slopes.size() != n + 1) {
    throw DimensionError("pwa: expected " + std::to_string(n + 1) + " slopes for " + std::to_string(n) +
                         " breakpoints, got " + std::to_string(slopes.size()));
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (breakpoints[i] < breakpoints[i - 1]) throw DomainError("pwa: breakpoints must be non-decreasing");
  }
  if (n >= 2 && !(breakpoints.front() < breakpoints.back())) {
    throw DomainError("pwa: b1 < bN required when N >= 2");
  }
  if (!std::isfinite(c)) throw DomainError("pwa: c must be finite");
  for (double v : breakpoints)
    if (!std::isfinite(v)) throw DomainError("pwa: breakpoints must be finite");
  for (double v : slopes)
    if (!std::isfinite(v)) throw DomainError("pwa: slopes must be finite");
}

double PwaFunction::term_gain(std::size_t i) const {
  if (i <= 1) return slopes.at(i);
  return slopes.at(i) - slopes.at(i - 1);
}

double pwa_eval(const PwaFunction& g, double y) {
  const std::size_t n = g.breakpoints.size();
  double v = g.c - g.slopes[0] * std::max(0.0, -(y - g.breakpoints[0])) +
             g.slopes[1] * std::max(0.0, y - g.breakpoints[0]);
  for (std::size_t i = 2; i <= n; ++i) v += (g.slopes[i] - g.slopes[i - 1]) * std::max(0.0, y - g.breakpoints[i - 1]);
  return v;
}

ControllerNetwork build_pwa_network(const PwaFunction& g, std::span<const double> alpha, const InitialStates& xi0) {
  g.validate();
  const std::size_t n = g.pieces();
  if (alpha.size() != n + 3) {
    throw DimensionError("build_pwa_network: expected " + std::to_string(n + 3) + " amplitudes, got " +
                         std::to_string(alpha.size()));
  }
  for (double a : alpha)
    if (!(a > 0.0)) throw DomainError("build_pwa_network: amplitudes must be > 0");

  std::vector<IafNeuron> neurons;
  const double k0 = g.term_gain(0);
  if (k0 != 0.0) {
    neurons.emplace_back(NeuronParams{alpha[0] / std::abs(k0), alpha[0], -sign_of(k0), -1, g.breakpoints[0],
                                      {1.0}, 0, 0.0, "term_0"});
  }
  for (std::size_t i = 1; i <= n; ++i) {
    const double ki = g.term_gain(i);
    if (ki == 0.0) continue;
    neurons.emplace_back(NeuronParams{alpha[i] / std::abs(ki), alpha[i], sign_of(ki), +1, g.breakpoints[i - 1],
                                      {1.0}, 0, 0.0, "term_" + std::to_string(i)});
  }
  // constant-input neurons: zero weight, bias -c
  neurons.emplace_back(NeuronParams{alpha[n + 1], alpha[n + 1], +1, +1, -g.c, {0.0}, 0, 0.0, "const_pos"});
  neurons.emplace_back(NeuronParams{alpha[n + 2], alpha[n + 2], -1, -1, -g.c, {0.0}, 0, 0.0, "const_neg"});
  apply_initial_states(neurons, xi0);
  return ControllerNetwork(NetworkKind::kPwa, 1, 1, std::move(neurons));
}

}  // namespace spikectl
