#include "spikectl/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spikectl/errors.hpp"

namespace spikectl {

void SimConfig::validate() const {
  if (!(t_end > 0.0)) throw ValidationError("sim.t_end", "must be > 0");
  if (!(base_step > 0.0)) throw ValidationError("sim.base_step", "must be > 0");
  if (!(event_tol > 0.0)) throw ValidationError("sim.event_tol", "must be > 0");
  if (!(base_step < t_end)) throw ValidationError("sim.base_step", "must be < t_end");
  if (!(event_tol < base_step)) throw ValidationError("sim.event_tol", "must be < base_step");
  if (sample_stride == 0) throw ValidationError("sim.sample_stride", "must be a positive integer");
}

void SampleTable::push(std::span<const double> row) {
  if (row.size() != width_) throw DimensionError("sample table: row width mismatch");
  data_.insert(data_.end(), row.begin(), row.end());
  ++rows_;
}

double SimResult::state_error_norm(std::size_t i) const { return norm2(state_error(i)); }

Vector SimResult::state_error(std::size_t i) const { return subtract(states[i], reference[i]); }

double SimResult::max_state_error() const {
  double m = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) m = std::max(m, state_error_norm(i));
  return m;
}

double locate_event(const std::function<bool(double)>& crossed, double step, double tol) {
  double lo = 0.0;
  double hi = step;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (crossed(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

namespace {

// Plant-driven input: y = C x along the exact open-loop flow.
class PlantDrive {
 public:
  PlantDrive(const LtiPlant& plant, const ClosedLoopReference& ref, double h)
      : plant_(plant),
        ref_(ref),
        h_(h),
        exp_h_(mat_exp(plant.A(), h)),
        exp_half_(mat_exp(plant.A(), 0.5 * h)),
        ref_exp_h_(mat_exp(ref.Abar(), h)),
        x_(ref.x0()),
        xbar_(ref.x0()) {}

  std::size_t state_width() const { return plant_.nx(); }
  std::size_t output_width() const { return plant_.ny(); }
  Vector output_now() const { return plant_.C() * x_; }

  /// Outputs at tau/2 and tau ahead of the current state.
  void outputs_ahead(double tau, Vector& y_mid, Vector& y_end) const {
    if (tau == h_) {
      y_mid = plant_.C() * (exp_half_ * x_);
      y_end = plant_.C() * (exp_h_ * x_);
    } else {
      y_mid = plant_.C() * (mat_exp(plant_.A(), 0.5 * tau) * x_);
      y_end = plant_.C() * (mat_exp(plant_.A(), tau) * x_);
    }
  }

  void advance(double tau) {
    if (tau == h_) {
      x_ = exp_h_ * x_;
      xbar_ = ref_exp_h_ * xbar_;
    } else {
      x_ = mat_exp(plant_.A(), tau) * x_;
      xbar_ = mat_exp(ref_.Abar(), tau) * xbar_;
    }
  }

  void impulse(std::size_t channel, double amplitude) { x_ = apply_impulse(plant_, x_, channel, amplitude); }

  void record(SimResult& r) const {
    r.states.push(x_);
    r.reference.push(xbar_);
    r.outputs.push(plant_.C() * x_);
  }

 private:
  const LtiPlant& plant_;
  const ClosedLoopReference& ref_;
  double h_;
  Matrix exp_h_;
  Matrix exp_half_;
  Matrix ref_exp_h_;
  Vector x_;
  Vector xbar_;
};

// Exogenous input y(t).
class SignalDrive {
 public:
  SignalDrive(const InputSignal& input, std::size_t width) : input_(input), width_(width) {}

  std::size_t state_width() const { return 0; }
  std::size_t output_width() const { return width_; }
  Vector output_now() const { return checked(input_(t_)); }

  void outputs_ahead(double tau, Vector& y_mid, Vector& y_end) const {
    y_mid = checked(input_(t_ + 0.5 * tau));
    y_end = checked(input_(t_ + tau));
  }
  void advance(double tau) { t_ += tau; }
  void impulse(std::size_t, double) {}
  void record(SimResult& r) const {
    r.states.push({});
    r.reference.push({});
    r.outputs.push(output_now());
  }

 private:
  Vector checked(Vector y) const {
    if (y.size() != width_) throw DimensionError("replay: input signal width mismatch");
    return y;
  }
  const InputSignal& input_;
  std::size_t width_;
  double t_ = 0.0;
};

template <typename Drive>
SimResult run_event_loop(Drive& drive, const ControllerNetwork& net, const SimConfig& cfg) {
  cfg.validate();
  const std::size_t n = net.size();
  const auto& neurons = net.neurons();

  SimResult r;
  r.config = cfg;
  r.states = SampleTable(drive.state_width());
  r.reference = SampleTable(drive.state_width());
  r.outputs = SampleTable(drive.output_width());
  r.neuron_states = SampleTable(n);
  r.spike_times.assign(n, {});
  r.max_rate.assign(n, 0.0);

  std::vector<double> xi(n), threshold(n);
  for (std::size_t k = 0; k < n; ++k) {
    xi[k] = neurons[k].state();
    threshold[k] = neurons[k].threshold();
  }
  r.initial_xi = xi;

  double t = 0.0;
  auto sample = [&]() {
    r.times.push_back(t);
    drive.record(r);
    r.neuron_states.push(xi);
    r.spikes_applied.push_back(r.spikes.size());
  };

  std::vector<double> r0(n), rm(n), r1(n), inc(n), inc_hi(n);
  Vector y_mid, y_end;
  auto rates_of = [&](const Vector& y, std::vector<double>& out) {
    for (std::size_t k = 0; k < n; ++k) out[k] = neuron_rate(neurons[k], y);
  };
  auto note_rates = [&](const std::vector<double>& rates) {
    for (std::size_t k = 0; k < n; ++k) r.max_rate[k] = std::max(r.max_rate[k], rates[k]);
  };
  // Simpson increments over [t, t + tau]; RK4 on xi' = rate(t) reduces to this.
  auto increments = [&](double tau, std::vector<double>& out) {
    drive.outputs_ahead(tau, y_mid, y_end);
    rates_of(y_mid, rm);
    rates_of(y_end, r1);
    for (std::size_t k = 0; k < n; ++k) out[k] = tau / 6.0 * (r0[k] + 4.0 * rm[k] + r1[k]);
  };
  auto any_crossing = [&](const std::vector<double>& d) {
    for (std::size_t k = 0; k < n; ++k)
      if (xi[k] + d[k] >= threshold[k]) return true;
    return false;
  };

  rates_of(drive.output_now(), r0);
  note_rates(r0);
  sample();

  const double h = cfg.base_step;
  const double end_slack = 1e-12 * std::max(1.0, cfg.t_end);
  bool tripped = false;

  while (cfg.t_end - t > end_slack && !tripped) {
    const double dt = std::min(h, cfg.t_end - t);
    increments(dt, inc);
    note_rates(rm);
    note_rates(r1);

    if (!any_crossing(inc)) {
      for (std::size_t k = 0; k < n; ++k) xi[k] += inc[k];
      drive.advance(dt);
      t += dt;
      ++r.steps;
      r0 = r1;
      if (r.steps % cfg.sample_stride == 0 || cfg.t_end - t <= end_slack) sample();
      continue;
    }

    std::vector<double> probe(n);
    const double tau = locate_event(
        [&](double s) {
          increments(s, probe);
          return any_crossing(probe);
        },
        dt, cfg.event_tol);
    const double tau_hi = std::min(tau + cfg.merge(), dt);
    increments(tau_hi, inc_hi);
    note_rates(rm);
    note_rates(r1);
    increments(tau, inc);
    note_rates(rm);
    note_rates(r1);

    std::vector<std::size_t> firing;
    for (std::size_t k = 0; k < n; ++k) {
      if (xi[k] + inc_hi[k] >= threshold[k]) firing.push_back(k);
      xi[k] += inc[k];
    }
    drive.advance(tau);
    t += tau;
    ++r.steps;
    sample();  // left side of the spike instant

    for (std::size_t k : firing) {
      const IafNeuron& nk = neurons[k];
      drive.impulse(nk.channel(), nk.signed_amplitude());
      xi[k] = 0.0;
      auto& train = r.spike_times[k];
      if (!train.empty()) {
        const double gap = t - train.back();
        if (gap < nk.threshold() / (2.0 * r.max_rate[k])) {
          tripped = true;
          r.status = SimStatus::kZenoGuardTripped;
          r.status_detail = "neuron " + std::to_string(k) + " inter-spike gap " + std::to_string(gap) +
                            " below half the dwell bound at t = " + std::to_string(t);
        }
      }
      train.push_back(t);
      r.spikes.push_back(SpikeEvent{t, k, nk.channel(), nk.signed_amplitude()});
    }
    sample();  // right side

    rates_of(drive.output_now(), r0);
    note_rates(r0);
  }

  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, r.max_rate[k] * neurons[k].gain());
  r.eps_num = 10.0 * h * worst;

  // Dwell time against the whole-run rate bound. Each spike instant carries
  // up to event_tol of localization error.
  double min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k) {
    const auto& train = r.spike_times[k];
    const double m = r.max_rate[k];
    const double delta = threshold[k];
    for (std::size_t j = 1; j < train.size(); ++j) {
      const double gap = train[j] - train[j - 1];
      min_ratio = std::min(min_ratio, gap * m / delta);
      if (gap < delta / m * (1.0 - 1e-6) - 2.0 * cfg.event_tol) ++r.dwell_violations;
    }
  }
  r.min_dwell_ratio = std::isfinite(min_ratio) ? min_ratio : 0.0;
  return r;
}

}  // namespace

SimResult simulate(const LtiPlant& plant, ControllerNetwork net, const ClosedLoopReference& ref,
                   const SimConfig& cfg) {
  if (net.n_inputs() != plant.ny()) {
    throw DimensionError("simulate: network reads " + std::to_string(net.n_inputs()) + " outputs, plant has " +
                         std::to_string(plant.ny()));
  }
  if (net.n_channels() != plant.nu()) {
    throw DimensionError("simulate: network drives " + std::to_string(net.n_channels()) +
                         " channels, plant has " + std::to_string(plant.nu()));
  }
  if (ref.Abar().rows() != plant.nx()) throw DimensionError("simulate: reference order mismatch");
  PlantDrive drive(plant, ref, cfg.base_step);
  return run_event_loop(drive, net, cfg);
}

SimResult replay(ControllerNetwork net, const InputSignal& input, const SimConfig& cfg) {
  SignalDrive drive(input, net.n_inputs());
  return run_event_loop(drive, net, cfg);
}

// ---------------------------------------------------------------------------

EmulationTrace emulation_metrics(const SimResult& sim, const Matrix& k, const ControllerNetwork& net) {
  const std::size_t nu = net.n_channels();
  const std::size_t ny = net.n_inputs();
  if (k.rows() != nu || k.cols() != ny) throw DimensionError("emulation_metrics: K shape mismatch");
  const std::size_t samples = sim.times.size();
  const std::size_t nn = net.size();

  std::vector<double> values(samples * nu);
  double max_y = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const auto y = sim.outputs[i];
    for (double v : y) max_y = std::max(max_y, std::abs(v));
    const Vector ky = k * y;
    std::copy(ky.begin(), ky.end(), values.begin() + static_cast<std::ptrdiff_t>(i * nu));
  }
  std::vector<SpikeEvent> impulses = sim.spikes;
  for (SpikeEvent& e : impulses) e.signed_amplitude = -e.signed_amplitude;

  EmulationTrace tr{SpikingSignal(nu, sim.times, values, impulses, sim.config.t_end), 0.0, {}, {}, 0.0, 0.0};
  tr.channel_sup.assign(nu, 0.0);
  tr.neuron_sup.assign(nn, 0.0);
  tr.identity_scale = k.max_abs() * max_y * sim.config.t_end;

  Vector lebesgue(nu, 0.0), impulse_sum(nu, 0.0);
  std::vector<double> rate_integral(nn, 0.0), prev_rate(nn, 0.0), rate(nn, 0.0);
  std::vector<std::size_t> fired(nn, 0);
  std::size_t applied = 0;

  for (std::size_t i = 0; i < samples; ++i) {
    const auto y = sim.outputs[i];
    for (std::size_t q = 0; q < nn; ++q) rate[q] = neuron_rate(net[q], y);
    if (i > 0) {
      const double h = sim.times[i] - sim.times[i - 1];
      for (std::size_t c = 0; c < nu; ++c) lebesgue[c] += 0.5 * h * (values[(i - 1) * nu + c] + values[i * nu + c]);
      for (std::size_t q = 0; q < nn; ++q) rate_integral[q] += 0.5 * h * (prev_rate[q] + rate[q]);
    }
    prev_rate = rate;
    for (; applied < sim.spikes_applied[i]; ++applied) {
      const SpikeEvent& e = sim.spikes[applied];
      impulse_sum[e.channel] += e.signed_amplitude;
      ++fired[e.neuron_id];
    }
    Vector integral = subtract(lebesgue, impulse_sum);
    tr.e_star = std::max(tr.e_star, norm2(integral));
    for (std::size_t c = 0; c < nu; ++c) tr.channel_sup[c] = std::max(tr.channel_sup[c], std::abs(integral[c]));

    const auto xi = sim.neuron_states[i];
    Vector predicted(nu, 0.0);
    for (std::size_t q = 0; q < nn; ++q) {
      const IafNeuron& nq = net[q];
      predicted[nq.channel()] += nq.sign_gain() * nq.gain() * (xi[q] - sim.initial_xi[q]);
      const double err = nq.gain() * rate_integral[q] - nq.amplitude() * static_cast<double>(fired[q]);
      tr.neuron_sup[q] = std::max(tr.neuron_sup[q], std::abs(err));
    }
    for (std::size_t c = 0; c < nu; ++c) {
      tr.identity_residual = std::max(tr.identity_residual, std::abs(integral[c] - predicted[c]));
    }
  }
  return tr;
}

PwaTrace pwa_metrics(const SimResult& sim, const PwaFunction& g, const ControllerNetwork& net) {
  if (net.n_inputs() != 1) throw DimensionError("pwa_metrics: scalar-input network expected");
  PwaTrace tr;
  for (const IafNeuron& n : net.neurons()) tr.amplitude_sum += n.amplitude();
  double integral = 0.0, spikes = 0.0, prev = 0.0;
  std::size_t applied = 0;
  for (std::size_t i = 0; i < sim.times.size(); ++i) {
    const double gy = pwa_eval(g, sim.outputs[i][0]);
    if (i > 0) integral += 0.5 * (sim.times[i] - sim.times[i - 1]) * (prev + gy);
    prev = gy;
    for (; applied < sim.spikes_applied[i]; ++applied) spikes += sim.spikes[applied].signed_amplitude;
    tr.sup = std::max(tr.sup, std::abs(integral - spikes));
  }
  return tr;
}

}  // namespace spikectl
