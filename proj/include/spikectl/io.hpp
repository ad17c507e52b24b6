#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "spikectl/certify.hpp"
#include "spikectl/neuron.hpp"
#include "spikectl/simulator.hpp"

namespace spikectl {

/// Shortest "%.<precision>g" rendering.
std::string format_number(double v, int precision = 9);

/// t,x1..xn,xbar1..xbarn,xtilde_norm
std::string trajectory_csv(const SimResult& sim, int precision = 9);
/// t,neuron_id,channel,signed_amplitude
std::string spikes_csv(const std::vector<SpikeEvent>& spikes, int precision = 9);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
CsvTable parse_csv(std::string_view text);

/// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

struct RunSummary {
  std::string scenario;
  std::string network;
  std::size_t neurons = 0;
  std::size_t samples = 0;
  std::size_t steps = 0;
  std::string status;
};

/// Structured (JSON) report with every bound, achieved value, eps_num and pass flag.
std::string report_json(const RunSummary& run, const CertReport& rep, const RefinementCheck* refinement = nullptr);

}  // namespace spikectl
