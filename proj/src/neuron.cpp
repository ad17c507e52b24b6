#include "spikectl/neuron.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spikectl/errors.hpp"

namespace spikectl {

IafNeuron::IafNeuron(NeuronParams p) : p_(std::move(p)) {
  if (!(p_.threshold > 0.0) || !std::isfinite(p_.threshold)) throw DomainError("neuron: threshold must be > 0");
  if (!(p_.amplitude > 0.0) || !std::isfinite(p_.amplitude)) throw DomainError("neuron: amplitude must be > 0");
  if (p_.sign_gain != 1 && p_.sign_gain != -1) throw DomainError("neuron: sign_gain must be +-1");
  if (p_.orientation != 1 && p_.orientation != -1) throw DomainError("neuron: orientation must be +-1");
  if (p_.input_weights.empty()) throw DimensionError("neuron: empty input weights");
  set_state(p_.initial_state);
}

void IafNeuron::set_state(double xi) {
  if (!(xi >= 0.0 && xi < p_.threshold)) {
    throw DomainError("neuron: state " + std::to_string(xi) + " outside [0, threshold)");
  }
  state_ = xi;
}

bool IafNeuron::integrate(double increment) {
  state_ += increment;
  if (state_ >= p_.threshold) {
    state_ = 0.0;
    return true;
  }
  return false;
}

double neuron_rate(const IafNeuron& neuron, std::span<const double> y) {
  if (y.size() != neuron.input_weights().size()) {
    throw DimensionError("neuron_rate: input has " + std::to_string(y.size()) + " entries, weights " +
                         std::to_string(neuron.input_weights().size()));
  }
  const double s = neuron.orientation() * (dot(neuron.input_weights(), y) - neuron.bias());
  return std::max(0.0, s);
}

bool neuron_step(IafNeuron& neuron, double rate, double dt) { return neuron.integrate(rate * dt); }

// ---------------------------------------------------------------------------

SpikingSignal::SpikingSignal(std::size_t dim, std::vector<double> times, std::vector<double> values,
                             const std::vector<SpikeEvent>& impulses, double horizon)
    : dim_(dim), times_(std::move(times)), values_(std::move(values)) {
  if (dim_ == 0) throw DimensionError("spiking signal: dim must be positive");
  if (values_.size() != times_.size() * dim_) throw DimensionError("spiking signal: values/grid size mismatch");
  for (std::size_t k = 1; k < times_.size(); ++k) {
    if (times_[k] < times_[k - 1]) throw DomainError("spiking signal: grid must be non-decreasing");
  }
  if (!times_.empty() && times_.front() < 0.0) throw DomainError("spiking signal: grid starts before 0");

  std::vector<SpikeEvent> sorted(impulses);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const SpikeEvent& a, const SpikeEvent& b) { return a.time < b.time; });
  for (const SpikeEvent& e : sorted) {
    if (e.channel >= dim_) throw DimensionError("spiking signal: impulse channel out of range");
    if (e.time < 0.0) throw DomainError("spiking signal: impulse before t = 0");
    if (dirac_times_.empty() || e.time != dirac_times_.back()) {
      dirac_times_.push_back(e.time);
      dirac_weights_.emplace_back(dim_, 0.0);
    }
    dirac_weights_.back()[e.channel] += e.signed_amplitude;
  }

  double h = horizon;
  if (h < 0.0) {
    h = 0.0;
    if (!times_.empty()) h = times_.back();
    if (!dirac_times_.empty()) h = std::max(h, dirac_times_.back());
  }
  horizon_ = h;
  if (!times_.empty() && times_.back() > horizon_) throw DomainError("spiking signal: grid beyond horizon");
  if (!dirac_times_.empty() && dirac_times_.back() > horizon_) {
    throw DomainError("spiking signal: impulse beyond horizon");
  }
  build_cumulative();
}

SpikingSignal SpikingSignal::zero(std::size_t dim, double horizon) {
  return SpikingSignal(dim, {}, {}, {}, horizon);
}

SpikingSignal SpikingSignal::impulses_only(std::size_t dim, const std::vector<SpikeEvent>& impulses,
                                           double horizon) {
  return SpikingSignal(dim, {}, {}, impulses, horizon);
}

void SpikingSignal::build_cumulative() {
  cumulative_.assign(times_.size() * dim_, 0.0);
  for (std::size_t k = 1; k < times_.size(); ++k) {
    const double h = times_[k] - times_[k - 1];
    for (std::size_t d = 0; d < dim_; ++d) {
      cumulative_[k * dim_ + d] =
          cumulative_[(k - 1) * dim_ + d] + 0.5 * h * (values_[(k - 1) * dim_ + d] + values_[k * dim_ + d]);
    }
  }
}

Vector SpikingSignal::lebesgue_integral(double t) const {
  Vector out(dim_, 0.0);
  if (times_.empty() || t <= times_.front()) return out;
  if (t >= times_.back()) {
    std::copy_n(cumulative_.begin() + static_cast<std::ptrdiff_t>((times_.size() - 1) * dim_), dim_, out.begin());
    return out;
  }
  // last knot with time <= t
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t k = static_cast<std::size_t>(it - times_.begin()) - 1;
  const double h = times_[k + 1] - times_[k];
  const double d = t - times_[k];
  for (std::size_t c = 0; c < dim_; ++c) {
    const double v0 = values_[k * dim_ + c];
    const double v1 = values_[(k + 1) * dim_ + c];
    out[c] = cumulative_[k * dim_ + c] + d * v0 + (h > 0.0 ? (v1 - v0) * d * d / (2.0 * h) : 0.0);
  }
  return out;
}

Vector SpikingSignal::running_integral(double t) const {
  if (t < 0.0 || t > horizon_) {
    throw DomainError("running_integral: t = " + std::to_string(t) + " outside [0, " + std::to_string(horizon_) + "]");
  }
  Vector out = lebesgue_integral(t);
  const auto end = std::upper_bound(dirac_times_.begin(), dirac_times_.end(), t);
  for (auto it = dirac_times_.begin(); it != end; ++it) {
    axpy(1.0, dirac_weights_[static_cast<std::size_t>(it - dirac_times_.begin())], out);
  }
  return out;
}

double SpikingSignal::grid_gap_bound() const {
  double width = 0.0;
  for (std::size_t k = 1; k < times_.size(); ++k) width = std::max(width, times_[k] - times_[k - 1]);
  double peak = 0.0;
  for (std::size_t k = 0; k < times_.size(); ++k) {
    peak = std::max(peak, norm2(std::span<const double>(values_).subspan(k * dim_, dim_)));
  }
  return width * peak;
}

SpikingSignal SpikingSignal::scaled(double a) const {
  SpikingSignal out(*this);
  for (double& v : out.values_) v *= a;
  for (double& v : out.cumulative_) v *= a;
  for (Vector& w : out.dirac_weights_)
    for (double& v : w) v *= a;
  return out;
}

SpikingSignal SpikingSignal::operator+(const SpikingSignal& other) const {
  if (dim_ != other.dim_ || times_ != other.times_) {
    throw DimensionError("spiking signal sum: signals must share dimension and grid");
  }
  SpikingSignal out;
  out.dim_ = dim_;
  out.horizon_ = std::max(horizon_, other.horizon_);
  out.times_ = times_;
  out.values_ = values_;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] += other.values_[i];
  // merge impulse trains
  std::size_t i = 0, j = 0;
  while (i < dirac_times_.size() || j < other.dirac_times_.size()) {
    const bool take_mine = j >= other.dirac_times_.size() ||
                           (i < dirac_times_.size() && dirac_times_[i] <= other.dirac_times_[j]);
    const double t = take_mine ? dirac_times_[i] : other.dirac_times_[j];
    Vector w(dim_, 0.0);
    if (i < dirac_times_.size() && dirac_times_[i] == t) axpy(1.0, dirac_weights_[i++], w);
    if (j < other.dirac_times_.size() && other.dirac_times_[j] == t) axpy(1.0, other.dirac_weights_[j++], w);
    out.dirac_times_.push_back(t);
    out.dirac_weights_.push_back(std::move(w));
  }
  out.build_cumulative();
  return out;
}

double running_integral(const SpikingSignal& v, double t) {
  if (v.dim() != 1) throw DimensionError("running_integral: scalar overload needs a 1-D signal");
  return v.running_integral(t)[0];
}

double star_norm(const SpikingSignal& v) {
  double best = 0.0;
  const std::size_t dim = v.dim();
  const auto& knots = v.grid();
  const auto& dt = v.dirac_times();
  const auto& dw = v.dirac_weights();

  // Walk knots and impulses in time order, carrying the impulse sum.
  Vector impulse_sum(dim, 0.0);
  std::size_t next_impulse = 0;
  auto absorb_impulses_until = [&](double t) {
    while (next_impulse < dt.size() && dt[next_impulse] <= t) {
      const double tau = dt[next_impulse];
      Vector pre = v.lebesgue_integral(tau);
      axpy(1.0, impulse_sum, pre);
      best = std::max(best, norm2(pre));
      axpy(1.0, dw[next_impulse], impulse_sum);
      axpy(1.0, dw[next_impulse], pre);
      best = std::max(best, norm2(pre));
      ++next_impulse;
    }
  };
  for (double t : knots) {
    absorb_impulses_until(t);
    Vector val = v.lebesgue_integral(t);
    axpy(1.0, impulse_sum, val);
    best = std::max(best, norm2(val));
  }
  absorb_impulses_until(v.horizon());
  return best;
}

}  // namespace spikectl
