#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spikectl/errors.hpp"
#include "spikectl/neuron.hpp"

using namespace spikectl;
using doctest::Approx;

namespace {

IafNeuron make(double delta, double alpha, int sign, int orientation, double bias = 0.0) {
  return IafNeuron(NeuronParams{delta, alpha, sign, orientation, bias, {1.0}, 0, 0.0, ""});
}

SpikingSignal sampled(double t_end, std::size_t n, double (*f)(double)) {
  std::vector<double> t(n + 1), v(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    t[i] = t_end * static_cast<double>(i) / static_cast<double>(n);
    v[i] = f(t[i]);
  }
  return SpikingSignal(1, t, v, {}, t_end);
}

}  // namespace

TEST_CASE("neuron parameters are validated") {
  CHECK_THROWS_AS(make(0.0, 1.0, 1, 1), DomainError);
  CHECK_THROWS_AS(make(1.0, -1.0, 1, 1), DomainError);
  CHECK_THROWS_AS(make(1.0, 1.0, 2, 1), DomainError);
  CHECK_THROWS_AS(make(1.0, 1.0, 1, 0), DomainError);
  IafNeuron n = make(0.5, 0.1, 1, 1);
  CHECK(n.gain() == Approx(0.2));
  CHECK_THROWS_AS(n.set_state(0.5), DomainError);
  CHECK_THROWS_AS(n.set_state(-0.1), DomainError);
  n.set_state(0.25);
  CHECK(n.state() == 0.25);
}

TEST_CASE("neuron_rate") {
  const IafNeuron pos = make(1, 1, 1, +1);
  const IafNeuron neg = make(1, 1, -1, -1);
  CHECK(neuron_rate(pos, Vector{2.0}) == 2.0);
  CHECK(neuron_rate(neg, Vector{2.0}) == 0.0);
  CHECK(neuron_rate(neg, Vector{-3.0}) == 3.0);
  CHECK(neuron_rate(make(1, 1, 1, +1, 1.0), Vector{0.5}) == 0.0);
  CHECK(neuron_rate(make(1, 1, 1, +1, 1.0), Vector{1.5}) == 0.5);
  CHECK_THROWS_AS(neuron_rate(pos, Vector{1.0, 2.0}), DimensionError);

  const IafNeuron weighted(NeuronParams{1, 1, 1, 1, 0.0, {2.0, -1.0}, 0, 0.0, ""});
  CHECK(neuron_rate(weighted, Vector{1.0, 0.5}) == 1.5);
}

TEST_CASE("neuron_step spikes on a ramp") {
  IafNeuron n = make(0.5, 0.5, 1, 1);
  std::vector<double> spikes;
  const double dt = 1e-3;
  for (int k = 1; k <= 2000; ++k)
    if (neuron_step(n, 1.0, dt)) spikes.push_back(k * dt);
  REQUIRE(spikes.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(spikes[i] == Approx(0.5 * (i + 1)).epsilon(1e-9));

  IafNeuron idle = make(0.5, 0.5, 1, 1);
  for (int k = 0; k < 1000; ++k) CHECK_FALSE(neuron_step(idle, 0.0, dt));

  // rate = t: first spike when t^2 / 2 = 0.5
  IafNeuron ramp = make(0.5, 0.5, 1, 1);
  double first = -1.0;
  const double h = 1e-5;
  for (int k = 0; k < 200000 && first < 0; ++k) {
    const double t = k * h;
    if (neuron_step(ramp, t + 0.5 * h, h)) first = t + h;
  }
  CHECK(first == Approx(1.0).epsilon(1e-5));
}

TEST_CASE("running_integral") {
  const SpikingSignal d = SpikingSignal::impulses_only(1, {SpikeEvent{1.0, 0, 0, 3.0}}, 2.0);
  CHECK(running_integral(d, 0.5) == 0.0);
  CHECK(running_integral(d, 1.0) == 3.0);
  CHECK_THROWS_AS(running_integral(d, 2.5), DomainError);

  const SpikingSignal s = sampled(std::numbers::pi, 20000, [](double t) { return std::sin(t); });
  CHECK(running_integral(s, std::numbers::pi) == Approx(2.0).epsilon(1e-8));
  CHECK(running_integral(s, std::numbers::pi / 2) == Approx(1.0).epsilon(1e-8));

  const SpikingSignal pair =
      SpikingSignal::impulses_only(1, {SpikeEvent{1.0, 0, 0, 2.0}, SpikeEvent{2.0, 1, 0, -2.0}}, 3.0);
  CHECK(running_integral(pair, 3.0) == 0.0);
  CHECK(running_integral(pair, 1.5) == 2.0);
}

TEST_CASE("star_norm examples") {
  const SpikingSignal pair =
      SpikingSignal::impulses_only(1, {SpikeEvent{1.0, 0, 0, 2.0}, SpikeEvent{2.0, 1, 0, -2.0}}, 3.0);
  CHECK(star_norm(pair) == 2.0);
  CHECK(star_norm(SpikingSignal::impulses_only(1, {SpikeEvent{0.3, 0, 0, 3.0}}, 1.0)) == 3.0);
  CHECK(star_norm(SpikingSignal::impulses_only(1, {SpikeEvent{0.3, 0, 0, -3.0}}, 1.0)) == 3.0);
  CHECK(star_norm(SpikingSignal::zero(2, 1.0)) == 0.0);

  const SpikingSignal s = sampled(4 * std::numbers::pi, 40000, [](double t) { return std::sin(t); });
  CHECK(star_norm(s) == Approx(2.0).epsilon(1e-6));

  // the pre-jump value is the supremum: int 1 ds reaches 1 at t = 1, then a -1 Dirac
  std::vector<double> t{0.0, 1.0, 1.0, 2.0};
  std::vector<double> v{1.0, 1.0, 0.0, 0.0};
  const SpikingSignal jump(1, t, v, {SpikeEvent{1.0, 0, 0, -1.0}}, 2.0);
  CHECK(star_norm(jump) == Approx(1.0));
  CHECK(running_integral(jump, 2.0) == Approx(0.0));
}

TEST_CASE("coincident impulses sum") {
  const SpikingSignal s =
      SpikingSignal::impulses_only(2, {SpikeEvent{0.5, 0, 0, 1.0}, SpikeEvent{0.5, 1, 0, 1.0}, SpikeEvent{0.5, 2, 1, -1.0}},
                                   1.0);
  REQUIRE(s.dirac_times().size() == 1);
  CHECK(s.dirac_weights()[0] == Vector{2.0, -1.0});
  CHECK(star_norm(s) == Approx(std::sqrt(5.0)));
}

TEST_CASE("signal validation") {
  CHECK_THROWS_AS(SpikingSignal(1, {0.0, 1.0}, {1.0}, {}, 1.0), DimensionError);
  CHECK_THROWS_AS(SpikingSignal(1, {0.5, 0.2}, {1.0, 1.0}, {}, 1.0), DomainError);
  CHECK_THROWS_AS(SpikingSignal(1, {0.0, 1.0}, {1.0, 1.0}, {SpikeEvent{2.0, 0, 0, 1.0}}, 1.0), DomainError);
  CHECK_THROWS_AS(SpikingSignal(1, {0.0, 1.0}, {1.0, 1.0}, {SpikeEvent{0.5, 0, 1, 1.0}}, 1.0), DimensionError);
  const SpikingSignal a(1, {0.0, 1.0}, {1.0, 1.0}, {}, 1.0);
  const SpikingSignal b(1, {0.0, 0.5, 1.0}, {1.0, 1.0, 1.0}, {}, 1.0);
  CHECK_THROWS_AS(a + b, DimensionError);
}
