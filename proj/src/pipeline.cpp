#include "spikectl/pipeline.hpp"

#include "spikectl/errors.hpp"

namespace spikectl {

namespace {

struct Measured {
  SimResult sim;
  EmulationTrace trace;
};

Measured measure(const LtiPlant& plant, const ControllerNetwork& net, const ClosedLoopReference& ref,
                 const SimConfig& cfg, const Matrix& k) {
  SimResult sim = simulate(plant, net, ref, cfg);
  EmulationTrace trace = emulation_metrics(sim, k, net);
  return {std::move(sim), std::move(trace)};
}

}  // namespace

LoopOutcome run_loop(const Scenario& s, bool refine) {
  s.require_loop();
  const LtiPlant& plant = *s.plant;
  const ControllerSpec& spec = *s.controller;
  ClosedLoopReference ref(plant, spec.K, s.x0);

  GainOptions gopts;
  gopts.integrand_norm = s.certify.gain_norm;
  GainResult gain = isiss_gain_detail(ref.Abar(), plant.B(), gopts);

  ControllerNetwork net = build_network(spec);
  Measured m = measure(plant, net, ref, s.sim, spec.K);

  const BoundForm form = effective_bound_form(s);
  CertInputs in;
  in.gamma = gain.gamma;
  in.envelope = gain.envelope;
  in.e_star_bound = e_star_bound(spec, form);
  CertReport report = verify(m.sim, m.trace, in);

  LoopOutcome out{std::move(net), std::move(m.sim), std::move(m.trace), gain, form, std::move(report), {}};
  if (refine && out.sim.completed()) {
    SimConfig fine_cfg = s.sim;
    fine_cfg.base_step *= 0.5;
    Measured fine = measure(plant, out.network, ref, fine_cfg, spec.K);
    out.refinement = refinement_check(out.sim, out.trace, fine.sim, fine.trace, gain.gamma);
  }
  return out;
}

PwaOutcome run_pwa(const Scenario& s) {
  if (!s.pwa) throw ValidationError("pwa", "missing required key");
  const PwaSpec& p = *s.pwa;
  ControllerNetwork net = build_pwa_network(p.g, p.alpha, p.initial_xi);
  SimResult sim = replay(net, p.input.make(), s.sim);
  PwaTrace trace = pwa_metrics(sim, p.g, net);
  const double bound = pwa_bound(p.alpha);
  const bool pass = sim.completed() && trace.sup <= bound + sim.eps_num;
  return {std::move(net), std::move(sim), trace, bound, pass};
}

}  // namespace spikectl
