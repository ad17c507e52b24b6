#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spikectl/matrix.hpp"

namespace spikectl {

struct NeuronParams {
  double threshold = 1.0;   // firing threshold Delta > 0
  double amplitude = 1.0;   // spike amplitude alpha > 0
  int sign_gain = 1;        // sign of emitted spikes, +-1
  int orientation = 1;      // rate is max{0, orientation * (w.y - bias)}
  double bias = 0.0;
  Vector input_weights{1.0};
  std::size_t channel = 0;  // control channel the spikes feed
  double initial_state = 0.0;
  std::string label;
};

/// Integrate-and-fire unit: integrates a rectified input and emits a signed
/// impulse of fixed amplitude whenever its state reaches the threshold.
class IafNeuron {
 public:
  explicit IafNeuron(NeuronParams p);

  double threshold() const noexcept { return p_.threshold; }
  double amplitude() const noexcept { return p_.amplitude; }
  int sign_gain() const noexcept { return p_.sign_gain; }
  int orientation() const noexcept { return p_.orientation; }
  double bias() const noexcept { return p_.bias; }
  const Vector& input_weights() const noexcept { return p_.input_weights; }
  std::size_t channel() const noexcept { return p_.channel; }
  double initial_state() const noexcept { return p_.initial_state; }
  const std::string& label() const noexcept { return p_.label; }

  /// Emulated static gain alpha / Delta.
  double gain() const noexcept { return p_.amplitude / p_.threshold; }
  double signed_amplitude() const noexcept { return p_.sign_gain * p_.amplitude; }

  double state() const noexcept { return state_; }
  void set_state(double xi);
  void reset() noexcept { state_ = 0.0; }

  /// Adds a nonnegative increment. Returns true (and resets) if the threshold is reached.
  bool integrate(double increment);

 private:
  NeuronParams p_;
  double state_ = 0.0;
};

struct SpikeEvent {
  double time = 0.0;
  std::size_t neuron_id = 0;
  std::size_t channel = 0;
  double signed_amplitude = 0.0;
};

/// max{0, orientation * (w . y - bias)}
double neuron_rate(const IafNeuron& neuron, std::span<const double> y);

/// Explicit step with a constant rate: state += rate * dt, reset on threshold.
bool neuron_step(IafNeuron& neuron, double rate, double dt);

/// A spiking signal v = v1 + v2 on [0, horizon]: v1 sampled on a
/// non-decreasing grid (repeated knots mark jumps) and integrated with the
/// trapezoid rule, v2 a train of vector-valued Dirac impulses.
class SpikingSignal {
 public:
  /// `values` is row-major, one row of length `dim` per knot.
  SpikingSignal(std::size_t dim, std::vector<double> times, std::vector<double> values,
                const std::vector<SpikeEvent>& impulses, double horizon = -1.0);

  static SpikingSignal zero(std::size_t dim, double horizon);
  static SpikingSignal impulses_only(std::size_t dim, const std::vector<SpikeEvent>& impulses,
                                     double horizon);

  std::size_t dim() const noexcept { return dim_; }
  double horizon() const noexcept { return horizon_; }
  const std::vector<double>& grid() const noexcept { return times_; }
  const std::vector<double>& dirac_times() const noexcept { return dirac_times_; }
  const std::vector<Vector>& dirac_weights() const noexcept { return dirac_weights_; }

  /// Right-continuous: a Dirac at t is included.
  Vector running_integral(double t) const;
  /// Lebesgue part only.
  Vector lebesgue_integral(double t) const;

  /// Largest interval width times the largest |v1| sample: bounds how far
  /// the sampled supremum can sit below the continuous one.
  double grid_gap_bound() const;

  SpikingSignal scaled(double a) const;
  /// Requires identical Lebesgue grids.
  SpikingSignal operator+(const SpikingSignal& other) const;

 private:
  SpikingSignal() = default;
  void build_cumulative();
  std::size_t dim_ = 1;
  double horizon_ = 0.0;
  std::vector<double> times_;
  std::vector<double> values_;
  std::vector<double> cumulative_;  // trapezoid integral at each knot, row-major
  std::vector<double> dirac_times_;
  std::vector<Vector> dirac_weights_;
};

double running_integral(const SpikingSignal& v, double t);  // dim 1 convenience

/// sup_t |int_0^t v| over grid knots and both one-sided values at each Dirac.
double star_norm(const SpikingSignal& v);

}  // namespace spikectl
