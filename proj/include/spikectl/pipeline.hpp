#pragma once

#include <optional>
#include <string>

#include "spikectl/certify.hpp"
#include "spikectl/matrixkit.hpp"
#include "spikectl/network.hpp"
#include "spikectl/scenario.hpp"
#include "spikectl/simulator.hpp"

namespace spikectl {

/// Everything a closed-loop scenario produces.
struct LoopOutcome {
  ControllerNetwork network;
  SimResult sim;
  EmulationTrace trace;
  GainResult gain;
  BoundForm form = BoundForm::kSum;
  CertReport report;
  std::optional<RefinementCheck> refinement;
};

/// Simulates, measures the emulation error and verifies it against the bounds.
/// With `refine`, repeats the run at half the base step for the convergence check.
LoopOutcome run_loop(const Scenario& s, bool refine = false);

struct PwaOutcome {
  ControllerNetwork network;
  SimResult sim;
  PwaTrace trace;
  double bound = 0.0;
  bool pass = false;
};

PwaOutcome run_pwa(const Scenario& s);

}  // namespace spikectl
