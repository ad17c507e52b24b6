#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "spikectl/errors.hpp"
#include "spikectl/network.hpp"
#include "spikectl/simulator.hpp"

using namespace spikectl;
using doctest::Approx;

namespace {

// Segment form: locate the piece containing y and integrate slopes from b1,
// where the rectified-sum form takes the value c.
double segment_eval(const PwaFunction& g, double y) {
  const auto& b = g.breakpoints;
  const auto& k = g.slopes;
  if (y <= b[0]) return g.c + k[0] * (y - b[0]);
  double v = g.c;
  for (std::size_t i = 0; i < b.size(); ++i) {
    const double hi = i + 1 < b.size() ? b[i + 1] : INFINITY;
    v += k[i + 1] * (std::min(y, hi) - b[i]);
    if (y <= hi) break;
  }
  return v;
}

PwaFunction random_pwa(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pieces(1, 6);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  PwaFunction g;
  const int n = pieces(rng);
  for (int i = 0; i < n; ++i) g.breakpoints.push_back(u(rng));
  std::sort(g.breakpoints.begin(), g.breakpoints.end());
  for (int i = 0; i <= n; ++i) g.slopes.push_back(u(rng));
  g.c = u(rng);
  return g;
}

}  // namespace

TEST_CASE("siso pair") {
  const ControllerNetwork net = build_siso_pair(2.0, 0.1, 0.2);
  REQUIRE(net.size() == 2);
  CHECK(net[0].threshold() == Approx(0.05));
  CHECK(net[1].threshold() == Approx(0.1));
  CHECK(net[0].orientation() == 1);
  CHECK(net[1].orientation() == -1);
  CHECK(net[0].sign_gain() == 1);
  CHECK(net[1].sign_gain() == -1);
  CHECK(net[0].gain() == Approx(2.0));
  CHECK(net[1].gain() == Approx(2.0));
  CHECK(net.channel_amplitude_sum(0) == Approx(0.3));
  CHECK(net.all_states_zero());
  CHECK_THROWS_AS(build_siso_pair(0.0, 0.1, 0.1), DomainError);
  CHECK_THROWS_AS(build_siso_pair(2.0, 0.0, 0.1), DomainError);

  const ControllerNetwork init = build_siso_pair(2.0, 0.1, 0.1, {0.01, 0.02});
  CHECK(init[1].state() == 0.02);
  CHECK_THROWS_AS(build_siso_pair(2.0, 0.1, 0.1, {0.05, 0.0}), DomainError);
  CHECK_THROWS_AS(build_siso_pair(2.0, 0.1, 0.1, {0.0}), DimensionError);
}

TEST_CASE("mimo grid") {
  const Matrix k{{-0.5, -2}, {5, 0.5}};
  Matrix alpha{{1, 4}, {3, 0.3}};
  alpha *= 1.0 / 25.0;
  const ControllerNetwork net = build_mimo_grid(k, GridAmplitudes::symmetric(alpha));
  REQUIRE(net.size() == 8);
  CHECK(net[0].threshold() == Approx(0.08));
  // negative K flips both signs
  CHECK(net[0].sign_gain() == -1);
  CHECK(net[1].sign_gain() == 1);
  CHECK(net[4].sign_gain() == 1);
  for (std::size_t q = 0; q < net.size(); ++q) {
    const std::size_t i = q / 4, j = (q / 2) % 2;
    CHECK(net[q].channel() == i);
    CHECK(net[q].gain() == Approx(std::abs(k(i, j))).epsilon(1e-15));
    CHECK(net[q].input_weights()[j] == 1.0);
    CHECK(net[q].input_weights()[1 - j] == 0.0);
  }
  CHECK(net.channel_amplitude_sum(0) == Approx(2 * 5.0 / 25));

  const ControllerNetwork sparse = build_mimo_grid(Matrix{{1, 0}, {0, 2}}, GridAmplitudes::symmetric(Matrix(2, 2, 0.1)));
  CHECK(sparse.size() == 4);
  CHECK_THROWS_AS(build_mimo_grid(Matrix(2, 2), GridAmplitudes::symmetric(Matrix(2, 2, 0.1))), DomainError);
  CHECK_THROWS_AS(build_mimo_grid(k, GridAmplitudes::symmetric(Matrix(2, 3, 0.1))), DimensionError);
}

TEST_CASE("grid with one entry reproduces the siso pair bitwise") {
  // unstable scalar plant with b = -1 so that K = 2 > 0 stabilizes it
  const LtiPlant flip(Matrix{{0.5}}, Matrix{{-1.0}}, Matrix{{1.0}});
  const ClosedLoopReference ref(flip, Matrix{{2.0}}, Vector{1.0});
  SimConfig cfg;
  cfg.t_end = 2.0;
  const SimResult a = simulate(flip, build_siso_pair(2.0, 0.05, 0.08), ref, cfg);
  const SimResult b = simulate(flip, build_mimo_grid(Matrix{{2.0}}, {Matrix{{0.05}}, Matrix{{0.08}}}), ref, cfg);
  REQUIRE(a.spike_count() > 10);
  REQUIRE(a.spike_count() == b.spike_count());
  for (std::size_t i = 0; i < a.spike_count(); ++i) {
    CHECK(a.spikes[i].time == b.spikes[i].time);
    CHECK(a.spikes[i].neuron_id == b.spikes[i].neuron_id);
    CHECK(a.spikes[i].signed_amplitude == b.spikes[i].signed_amplitude);
  }
}

TEST_CASE("row-gain network") {
  const Matrix k{{-0.5, -2}, {5, 0.5}};
  const std::vector<double> a{0.05, 0.05};
  const ControllerNetwork net = build_mimo_rowgain(k, a, a);
  REQUIRE(net.size() == 4);
  for (const IafNeuron& n : net.neurons()) CHECK(n.gain() == Approx(1.0));
  CHECK(net[0].input_weights() == Vector{-0.5, -2});
  CHECK(neuron_rate(net[0], Vector{1.0, 1.0}) == 0.0);
  CHECK(neuron_rate(net[1], Vector{1.0, 1.0}) == Approx(2.5));
  CHECK_THROWS_AS(build_mimo_rowgain(Matrix{{1, 1}, {0, 0}}, a, a), DomainError);
  CHECK_THROWS_AS(build_mimo_rowgain(k, std::vector<double>{0.1}, a), DimensionError);
}

TEST_CASE("pwa evaluation") {
  const PwaFunction abs_g{0.0, {0.0}, {-1.0, 1.0}};
  CHECK(pwa_eval(abs_g, -3.0) == 3.0);
  CHECK(pwa_eval(abs_g, 2.5) == 2.5);
  CHECK(pwa_eval(abs_g, 0.0) == 0.0);

  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int trial = 0; trial < 50; ++trial) {
    const PwaFunction g = random_pwa(rng);
    CHECK(pwa_eval(g, g.breakpoints[0]) == Approx(g.c).epsilon(1e-12));
    for (int k = 0; k < 1000; ++k) {
      const double y = u(rng);
      CHECK(pwa_eval(g, y) == Approx(segment_eval(g, y)).epsilon(1e-12).scale(1.0));
    }
    double max_slope = 0.0;
    for (double s : g.slopes) max_slope = std::max(max_slope, std::abs(s));
    for (double b : g.breakpoints) {
      const double h = 1e-6;
      CHECK(std::abs(pwa_eval(g, b + h) - pwa_eval(g, b - h)) <= max_slope * 2 * h * 1.01 + 1e-13);
    }
  }
}

TEST_CASE("pwa network") {
  const PwaFunction abs_g{0.0, {0.0}, {-1.0, 1.0}};
  const std::vector<double> alpha{0.1, 0.2, 0.3, 0.4};
  const ControllerNetwork net = build_pwa_network(abs_g, alpha);
  REQUIRE(net.size() == 4);
  CHECK(net[0].sign_gain() == 1);
  CHECK(net[1].sign_gain() == 1);
  CHECK(net[0].threshold() == Approx(0.1));
  CHECK(net[1].threshold() == Approx(0.2));
  CHECK(net[0].orientation() == -1);
  // c = 0: constant neurons have zero rate
  CHECK(neuron_rate(net[2], Vector{7.0}) == 0.0);
  CHECK(neuron_rate(net[3], Vector{-7.0}) == 0.0);

  const PwaFunction affine{5.0, {0.0}, {2.0, 2.0}};
  const ControllerNetwork c5 = build_pwa_network(affine, std::vector<double>{0.1, 0.1, 0.5, 0.5});
  const IafNeuron& pos_c = c5[c5.size() - 2];
  CHECK(neuron_rate(pos_c, Vector{-100.0}) == 5.0);
  CHECK(neuron_rate(c5[c5.size() - 1], Vector{100.0}) == 0.0);

  // a zero middle term is omitted
  const PwaFunction kink{0.0, {-1.0, 1.0}, {1.0, 1.0, 3.0}};
  CHECK(kink.term_gain(1) == 1.0);
  CHECK(kink.term_gain(2) == 2.0);
  const PwaFunction flat{0.0, {-1.0, 1.0}, {1.0, 1.0, 1.0}};
  CHECK(build_pwa_network(flat, std::vector<double>{0.1, 0.1, 0.1, 0.1, 0.1}).size() == 4);

  CHECK_THROWS_AS(build_pwa_network(abs_g, std::vector<double>{0.1, 0.1, 0.1}), DimensionError);
  CHECK_THROWS_AS(build_pwa_network(abs_g, std::vector<double>{0.1, 0.1, 0.0, 0.1}), DomainError);
}
