#include "spikectl/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spikectl/errors.hpp"

namespace spikectl {

namespace {

double pair_term(double a1, double a2, BoundForm form) {
  if (a1 < 0.0 || a2 < 0.0) throw DomainError("bound: amplitudes must be >= 0");
  return form == BoundForm::kMax ? std::max(a1, a2) : a1 + a2;
}

}  // namespace

double siso_bound(double gamma, double alpha1, double alpha2, bool xi0_zero) {
  return gamma * pair_term(alpha1, alpha2, xi0_zero ? BoundForm::kMax : BoundForm::kSum);
}

double mimo_bound(double gamma, const GridAmplitudes& alpha, BoundForm form) {
  const Matrix& p = alpha.positive;
  const Matrix& q = alpha.negative;
  if (p.rows() != q.rows() || p.cols() != q.cols()) throw DimensionError("mimo_bound: amplitude shapes differ");
  double total = 0.0;
  for (std::size_t i = 0; i < p.rows(); ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < p.cols(); ++j) row += pair_term(p(i, j), q(i, j), form);
    total += row * row;
  }
  return gamma * std::sqrt(total);
}

double rowgain_bound(double gamma, std::span<const double> alpha_positive, std::span<const double> alpha_negative,
                     BoundForm form) {
  if (alpha_positive.size() != alpha_negative.size()) throw DimensionError("rowgain_bound: length mismatch");
  double total = 0.0;
  for (std::size_t i = 0; i < alpha_positive.size(); ++i) {
    const double a = pair_term(alpha_positive[i], alpha_negative[i], form);
    total += a * a;
  }
  return gamma * std::sqrt(total);
}

double pwa_bound(std::span<const double> alpha) {
  double s = 0.0;
  for (double a : alpha) {
    if (a < 0.0) throw DomainError("pwa_bound: amplitudes must be >= 0");
    s += a;
  }
  return s;
}

double practical_bound(const DecayEnvelope& envelope, double x0_norm, double gamma, double e_star_bound, double t) {
  if (t < 0.0) throw DomainError("practical_bound: t must be >= 0");
  return envelope.c * std::exp(-envelope.lambda * t) * x0_norm + gamma * e_star_bound;
}

bool CertReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check& CertReport::check(const std::string& name) const {
  for (const Check& c : checks)
    if (c.name == name) return c;
  throw std::out_of_range("no check named " + name);
}

CertReport verify(const SimResult& sim, const EmulationTrace& trace, const CertInputs& in) {
  CertReport rep;
  rep.gamma = in.gamma;
  rep.envelope = in.envelope;
  rep.e_star_bound = in.e_star_bound;
  rep.xtilde_bound = in.gamma * in.e_star_bound;
  rep.ultimate_bound = rep.xtilde_bound;
  rep.eps_num = sim.eps_num;
  rep.spike_count = sim.spike_count();
  for (const auto& train : sim.spike_times) rep.spikes_per_neuron.push_back(train.size());
  rep.e_star = trace.e_star;

  const double state_slack = in.gamma * sim.eps_num;
  const bool has_states = sim.states.width() > 0;
  double x0_norm = 0.0;
  if (has_states && sim.states.size() > 0) x0_norm = norm2(sim.states[0]);

  double worst_practical = -std::numeric_limits<double>::infinity();
  double practical_at_worst = 0.0, x_at_worst = 0.0;
  if (has_states) {
    for (std::size_t i = 0; i < sim.times.size(); ++i) {
      rep.max_xtilde = std::max(rep.max_xtilde, sim.state_error_norm(i));
      const double x = norm2(sim.states[i]);
      const double b = practical_bound(in.envelope, x0_norm, in.gamma, in.e_star_bound, sim.times[i]);
      if (x - b > worst_practical) {
        worst_practical = x - b;
        practical_at_worst = b;
        x_at_worst = x;
      }
    }
  }

  auto add = [&](std::string name, double achieved, double bound, double slack) {
    rep.checks.push_back(Check{std::move(name), achieved, bound, slack, achieved <= bound + slack});
  };
  add("xtilde", rep.max_xtilde, rep.xtilde_bound, state_slack);
  add("e_star", trace.e_star, in.e_star_bound, sim.eps_num);
  if (has_states) add("practical", x_at_worst, practical_at_worst, state_slack);
  add("dwell_violations", static_cast<double>(sim.dwell_violations), 0.0, 0.0);
  add("zeno_guard", sim.completed() ? 0.0 : 1.0, 0.0, 0.0);
  add("identity_residual", trace.identity_residual, in.identity_rel_tol * trace.identity_scale, 1e-12);
  return rep;
}

RefinementCheck refinement_check(const SimResult& coarse, const EmulationTrace& coarse_trace,
                                 const SimResult& fine, const EmulationTrace& fine_trace, double gamma) {
  RefinementCheck rc;
  rc.coarse_xtilde = coarse.max_state_error();
  rc.fine_xtilde = fine.max_state_error();
  rc.coarse_e_star = coarse_trace.e_star;
  rc.fine_e_star = fine_trace.e_star;
  rc.eps_num = coarse.eps_num;
  rc.gamma = gamma;
  rc.pass = std::abs(rc.coarse_e_star - rc.fine_e_star) < 2.0 * rc.eps_num &&
            std::abs(rc.coarse_xtilde - rc.fine_xtilde) < 2.0 * gamma * rc.eps_num;
  return rc;
}

}  // namespace spikectl
