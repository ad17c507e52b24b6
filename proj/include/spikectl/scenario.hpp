#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spikectl/certify.hpp"
#include "spikectl/matrixkit.hpp"
#include "spikectl/network.hpp"
#include "spikectl/plant.hpp"
#include "spikectl/simulator.hpp"

namespace spikectl {

inline constexpr int kSchemaVersion = 1;

struct ControllerSpec {
  NetworkKind kind = NetworkKind::kMimoGrid;
  Matrix K;
  GridAmplitudes grid_alpha;                    // siso pair: 1x1 matrices
  std::vector<double> row_alpha_positive;       // row-gain only
  std::vector<double> row_alpha_negative;
  InitialStates initial_xi;                     // empty: all zero
};

struct CertifySpec {
  GainNorm gain_norm = GainNorm::kInduced2;
  std::optional<BoundForm> bound_form;          // empty: max form iff all xi(0) = 0
};

struct OutputSpec {
  std::string trajectory = "trajectory.csv";
  std::string spikes = "spikes.csv";
  std::string report = "report.json";
  int precision = 9;
};

/// Scalar test input for PWA replay.
struct InputSpec {
  std::string kind = "sine";                    // "sine" or "multisine"
  double amplitude = 1.0;
  double frequency = 1.0;                       // Hz; for multisine the band edge
  double phase = 0.0;
  double offset = 0.0;
  int components = 5;                           // multisine only
  std::uint64_t seed = 1;                       // multisine only

  InputSignal make() const;
};

struct PwaSpec {
  PwaFunction g;
  std::vector<double> alpha;                    // N + 3 amplitudes
  InitialStates initial_xi;
  InputSpec input;
};

struct Scenario {
  std::string name;
  std::optional<LtiPlant> plant;
  std::optional<ControllerSpec> controller;
  Vector x0;
  SimConfig sim;
  CertifySpec certify;
  OutputSpec outputs;
  std::optional<PwaSpec> pwa;

  bool has_loop() const noexcept { return plant.has_value() && controller.has_value(); }
  /// Throws ValidationError unless plant, controller and x0 are present and consistent.
  void require_loop() const;
};

/// Parses and validates a JSON scenario document. Diagnostics name the
/// offending key (e.g. "controller.alpha[1][0]").
Scenario parse_scenario(std::string_view text, bool strict = true);
std::string dump_scenario(const Scenario& s);

std::vector<std::string> preset_names();
Scenario preset(const std::string& name);

ControllerNetwork build_network(const ControllerSpec& spec);
bool initial_states_zero(const ControllerSpec& spec);
BoundForm effective_bound_form(const Scenario& s);
/// Amplitude factor of the emulation-error bound (the xtilde bound divided by gamma).
double e_star_bound(const ControllerSpec& spec, BoundForm form);

}  // namespace spikectl
