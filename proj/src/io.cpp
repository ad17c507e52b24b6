#include "spikectl/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "spikectl/errors.hpp"

namespace spikectl {

std::string format_number(double v, int precision) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

std::string trajectory_csv(const SimResult& sim, int precision) {
  const std::size_t n = sim.states.width();
  std::ostringstream os;
  os << "t";
  for (std::size_t i = 1; i <= n; ++i) os << ",x" << i;
  for (std::size_t i = 1; i <= n; ++i) os << ",xbar" << i;
  os << ",xtilde_norm\n";
  for (std::size_t k = 0; k < sim.times.size(); ++k) {
    os << format_number(sim.times[k], precision);
    for (double v : sim.states[k]) os << ',' << format_number(v, precision);
    for (double v : sim.reference[k]) os << ',' << format_number(v, precision);
    os << ',' << format_number(n == 0 ? 0.0 : sim.state_error_norm(k), precision) << '\n';
  }
  return os.str();
}

std::string spikes_csv(const std::vector<SpikeEvent>& spikes, int precision) {
  std::ostringstream os;
  os << "t,neuron_id,channel,signed_amplitude\n";
  for (const SpikeEvent& e : spikes) {
    os << format_number(e.time, precision) << ',' << e.neuron_id << ',' << e.channel << ','
       << format_number(e.signed_amplitude, precision) << '\n';
  }
  return os.str();
}

CsvTable parse_csv(std::string_view text) {
  CsvTable table;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;

    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (table.header.empty()) {
      for (auto c : cells) table.header.emplace_back(c);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw ValidationError("csv line " + std::to_string(line_no), "wrong number of fields");
    }
    std::vector<double> row;
    for (auto c : cells) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (ec != std::errc() || ptr != c.data() + c.size())
        throw ValidationError("csv line " + std::to_string(line_no), "not a number: '" + std::string(c) + "'");
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string report_json(const RunSummary& run, const CertReport& rep, const RefinementCheck* refinement) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["scenario"] = run.scenario;
  j["network"] = run.network;
  j["neurons"] = run.neurons;
  j["samples"] = run.samples;
  j["steps"] = run.steps;
  j["status"] = run.status;
  j["gamma"] = rep.gamma;
  j["envelope"] = {{"c", rep.envelope.c}, {"lambda", rep.envelope.lambda}};
  j["e_star_bound"] = rep.e_star_bound;
  j["xtilde_bound"] = rep.xtilde_bound;
  j["ultimate_bound"] = rep.ultimate_bound;
  j["eps_num"] = rep.eps_num;
  j["achieved"] = {{"max_xtilde", rep.max_xtilde},
                   {"e_star", rep.e_star},
                   {"spike_count", rep.spike_count},
                   {"spikes_per_neuron", rep.spikes_per_neuron}};
  ordered_json checks = ordered_json::array();
  for (const Check& c : rep.checks) {
    checks.push_back({{"name", c.name},
                      {"achieved", c.achieved},
                      {"bound", c.bound},
                      {"slack", c.slack},
                      {"pass", c.pass}});
  }
  j["checks"] = checks;
  if (refinement) {
    j["refinement"] = {{"coarse_xtilde", refinement->coarse_xtilde}, {"fine_xtilde", refinement->fine_xtilde},
                       {"coarse_e_star", refinement->coarse_e_star}, {"fine_e_star", refinement->fine_e_star},
                       {"eps_num", refinement->eps_num},             {"pass", refinement->pass}};
  }
  j["pass"] = rep.pass() && (!refinement || refinement->pass);
  return j.dump(2) + "\n";
}

}  // namespace spikectl
