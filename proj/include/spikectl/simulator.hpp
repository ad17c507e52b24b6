#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "spikectl/matrix.hpp"
#include "spikectl/network.hpp"
#include "spikectl/neuron.hpp"
#include "spikectl/plant.hpp"

namespace spikectl {

struct SimConfig {
  double t_end = 10.0;
  double base_step = 1e-4;
  double event_tol = 1e-9;
  std::size_t sample_stride = 1;
  double merge_window = -1.0;  // negative: use event_tol

  double merge() const noexcept { return merge_window < 0.0 ? event_tol : merge_window; }
  void validate() const;
};

enum class SimStatus { kCompleted, kZenoGuardTripped };

/// Row-per-sample table of fixed width.
class SampleTable {
 public:
  explicit SampleTable(std::size_t width = 0) : width_(width) {}
  std::size_t width() const noexcept { return width_; }
  std::size_t size() const noexcept { return width_ == 0 ? rows_ : data_.size() / width_; }
  void push(std::span<const double> row);
  std::span<const double> operator[](std::size_t i) const {
    return std::span<const double>(data_).subspan(i * width_, width_);
  }

 private:
  std::size_t width_;
  std::size_t rows_ = 0;
  std::vector<double> data_;
};

struct SimResult {
  std::vector<double> times;
  SampleTable states;          // x
  SampleTable reference;       // xbar
  SampleTable outputs;         // y (plant output or replayed input)
  SampleTable neuron_states;   // xi, pre-reset at the left side of a spike
  std::vector<std::size_t> spikes_applied;  // spikes already applied at each sample
  std::vector<SpikeEvent> spikes;           // time-ordered
  std::vector<std::vector<double>> spike_times;  // per neuron
  std::vector<double> initial_xi;
  std::vector<double> max_rate;      // running max of each neuron's rate (M_emp)
  double min_dwell_ratio = 0.0;      // min over inter-spike gaps of gap * M_emp / Delta (0 if none)
  std::size_t dwell_violations = 0;  // gaps below Delta / M_emp beyond bisection slack
  double eps_num = 0.0;              // 10 * base_step * M_emp * max gain
  std::size_t steps = 0;
  SimStatus status = SimStatus::kCompleted;
  std::string status_detail;
  SimConfig config;

  std::size_t spike_count() const noexcept { return spikes.size(); }
  bool completed() const noexcept { return status == SimStatus::kCompleted; }
  /// |x - xbar| at sample i
  double state_error_norm(std::size_t i) const;
  Vector state_error(std::size_t i) const;
  double max_state_error() const;
};

/// Closed loop: plant flows exactly between spikes, neuron states follow
/// Simpson/RK4 steps along the exact output, threshold crossings are
/// localized by bisection and fire impulses into the plant.
SimResult simulate(const LtiPlant& plant, ControllerNetwork net, const ClosedLoopReference& ref,
                   const SimConfig& cfg);

/// Drives the network with an exogenous input y(t) (no plant), e.g. to
/// check PWA emulation.
using InputSignal = std::function<Vector(double)>;
SimResult replay(ControllerNetwork net, const InputSignal& input, const SimConfig& cfg);

/// Earliest time in (0, step] where `crossed` becomes true, to within tol.
/// Requires crossed(step) and monotone behaviour.
double locate_event(const std::function<bool(double)>& crossed, double step, double tol);

struct EmulationTrace {
  SpikingSignal e_signal;              // e = K y - u, one dimension per control channel
  double e_star = 0.0;                 // running star norm over samples
  std::vector<double> channel_sup;     // sup_t |int e_i|
  std::vector<double> neuron_sup;      // sup_t |g_k int rate_k - alpha_k n_k(t)|
  double identity_residual = 0.0;      // max |int e_i - sum_k G_k g_k (xi_k(t) - xi_k(0))|
  double identity_scale = 0.0;         // max|K| * max|y| * t_end
};

/// Emulation error of a run whose network emulates y -> K y.
EmulationTrace emulation_metrics(const SimResult& sim, const Matrix& k, const ControllerNetwork& net);

struct PwaTrace {
  double sup = 0.0;                    // sup_t |int (g(y) - u)|
  double amplitude_sum = 0.0;          // sum of amplitudes of present neurons
};

PwaTrace pwa_metrics(const SimResult& sim, const PwaFunction& g, const ControllerNetwork& net);

}  // namespace spikectl
