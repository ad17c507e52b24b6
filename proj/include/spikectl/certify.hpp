#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spikectl/matrixkit.hpp"
#include "spikectl/network.hpp"
#include "spikectl/simulator.hpp"

namespace spikectl {

/// kSum: alpha1 + alpha2 per pair (any initial neuron states).
/// kMax: max(alpha1, alpha2) per pair, valid when every xi(0) = 0.
enum class BoundForm { kSum, kMax };

double siso_bound(double gamma, double alpha1, double alpha2, bool xi0_zero);

/// gamma * sqrt( sum_i ( sum_j a_ij )^2 ) with a_ij the pair term of `form`.
double mimo_bound(double gamma, const GridAmplitudes& alpha, BoundForm form = BoundForm::kSum);

/// gamma * sqrt( sum_i a_i^2 ) with one pair per control channel.
double rowgain_bound(double gamma, std::span<const double> alpha_positive, std::span<const double> alpha_negative,
                     BoundForm form = BoundForm::kSum);

/// Signal-level bound on |int (g(y) - u)|: the plain sum of amplitudes.
double pwa_bound(std::span<const double> alpha);

/// c e^{-lambda t} |x0| + gamma * e_star_bound
double practical_bound(const DecayEnvelope& envelope, double x0_norm, double gamma, double e_star_bound, double t);

struct CertInputs {
  double gamma = 0.0;
  DecayEnvelope envelope;
  double e_star_bound = 0.0;   // bound on the star norm of e = K y - u
  double identity_rel_tol = 1e-6;
};

struct Check {
  std::string name;
  double achieved = 0.0;
  double bound = 0.0;
  double slack = 0.0;
  bool pass = false;
};

struct CertReport {
  double gamma = 0.0;
  DecayEnvelope envelope;
  double e_star_bound = 0.0;
  double xtilde_bound = 0.0;
  double ultimate_bound = 0.0;  // t -> infinity limit of the practical bound
  double eps_num = 0.0;
  double max_xtilde = 0.0;
  double e_star = 0.0;
  std::size_t spike_count = 0;
  std::vector<std::size_t> spikes_per_neuron;
  std::vector<Check> checks;

  bool pass() const;
  const Check& check(const std::string& name) const;
};

/// Runs every check against a completed simulation. Failures are report
/// content; the comparison is achieved <= bound + slack with slack derived
/// from the run's eps_num.
CertReport verify(const SimResult& sim, const EmulationTrace& trace, const CertInputs& in);

/// Suprema at base_step h and h/2 must agree to within 2 eps_num(h).
struct RefinementCheck {
  double coarse_xtilde = 0.0;
  double fine_xtilde = 0.0;
  double coarse_e_star = 0.0;
  double fine_e_star = 0.0;
  double eps_num = 0.0;
  double gamma = 0.0;
  bool pass = false;
};

RefinementCheck refinement_check(const SimResult& coarse, const EmulationTrace& coarse_trace,
                                 const SimResult& fine, const EmulationTrace& fine_trace, double gamma);

}  // namespace spikectl
