// spikectl: simulate and certify spiking controllers from the command line.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "spikectl/errors.hpp"
#include "spikectl/io.hpp"
#include "spikectl/kernels.hpp"
#include "spikectl/pipeline.hpp"
#include "spikectl/scenario.hpp"

namespace fs = std::filesystem;
using namespace spikectl;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitGuard = 3;

struct CommonArgs {
  std::string scenario;
  std::string preset;
  std::string out_dir = ".";
  std::optional<double> step;
  std::optional<double> t_end;
  bool strict = true;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_out_dir = true) {
  auto* sc = cmd->add_option("--scenario", a.scenario, "JSON scenario file");
  auto* pr = cmd->add_option("--preset", a.preset, "built-in scenario (see `spikectl presets`)");
  sc->excludes(pr);
  if (with_out_dir) cmd->add_option("--out-dir", a.out_dir, "directory for output files");
  cmd->add_option("--step", a.step, "override sim.base_step");
  cmd->add_option("--t-end", a.t_end, "override sim.t_end");
  cmd->add_flag("--strict,!--no-strict", a.strict, "reject unknown scenario keys (default on)");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("--scenario", "cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Scenario load(const CommonArgs& a, const std::string& fallback_preset = "") {
  Scenario s;
  if (!a.scenario.empty()) {
    s = parse_scenario(read_file(a.scenario), a.strict);
    if (s.name.empty()) s.name = fs::path(a.scenario).stem().string();
  } else if (!a.preset.empty()) {
    s = preset(a.preset);
  } else if (!fallback_preset.empty()) {
    s = preset(fallback_preset);
  } else {
    throw ValidationError("--scenario", "one of --scenario or --preset is required");
  }
  if (a.step) s.sim.base_step = *a.step;
  if (a.t_end) s.sim.t_end = *a.t_end;
  s.sim.validate();
  return s;
}

std::string describe(const ControllerNetwork& net) {
  return to_string(net.kind()) + " (" + std::to_string(net.size()) + " neurons)";
}

void write_run_files(const Scenario& s, const SimResult& sim, const fs::path& dir) {
  write_file_atomic(dir / s.outputs.trajectory, trajectory_csv(sim, s.outputs.precision));
  write_file_atomic(dir / s.outputs.spikes, spikes_csv(sim.spikes, s.outputs.precision));
}

int guard_status(const SimResult& sim) {
  if (sim.completed()) return kExitOk;
  std::cerr << "error: zeno guard tripped: " << sim.status_detail << "\n";
  return kExitGuard;
}

int cmd_simulate(const CommonArgs& a) {
  const Scenario s = load(a);
  s.require_loop();
  const LoopOutcome out = run_loop(s);
  write_run_files(s, out.sim, a.out_dir);
  std::cout << "scenario    " << s.name << "\n"
            << "network     " << describe(out.network) << "\n"
            << "spikes      " << out.sim.spike_count() << "\n"
            << "max |xt|    " << format_number(out.sim.max_state_error(), 6) << "\n"
            << "e_star      " << format_number(out.trace.e_star, 6) << "\n"
            << "wrote       " << (fs::path(a.out_dir) / s.outputs.trajectory).string() << ", "
            << (fs::path(a.out_dir) / s.outputs.spikes).string() << "\n";
  return guard_status(out.sim);
}

RunSummary summary_of(const Scenario& s, const LoopOutcome& out) {
  return {s.name, to_string(out.network.kind()), out.network.size(), out.sim.times.size(), out.sim.steps,
          out.sim.completed() ? "completed" : "zeno_guard_tripped"};
}

int cmd_certify(const CommonArgs& a, bool refine) {
  const Scenario s = load(a);
  s.require_loop();
  const LoopOutcome out = run_loop(s, refine);
  write_run_files(s, out.sim, a.out_dir);
  const RefinementCheck* rc = out.refinement ? &*out.refinement : nullptr;
  write_file_atomic(fs::path(a.out_dir) / s.outputs.report, report_json(summary_of(s, out), out.report, rc));

  const CertReport& r = out.report;
  std::cout << "scenario    " << s.name << "\n"
            << "network     " << describe(out.network) << "\n"
            << "gamma       " << format_number(r.gamma, 6) << "  (c = " << format_number(r.envelope.c, 6)
            << ", lambda = " << format_number(r.envelope.lambda, 6) << ")\n"
            << "bound form  " << (out.form == BoundForm::kMax ? "max" : "sum") << "\n"
            << "spikes      " << r.spike_count << "\n"
            << "eps_num     " << format_number(r.eps_num, 3) << "\n";
  for (const Check& c : r.checks) {
    std::cout << "  " << std::left << std::setw(18) << c.name << std::right << std::setw(12)
              << format_number(c.achieved, 6) << " <= " << std::setw(12) << format_number(c.bound, 6) << "  "
              << (c.pass ? "pass" : "FAIL") << "\n";
  }
  if (rc) {
    std::cout << "  refinement         |dxt| = " << format_number(std::abs(rc->coarse_xtilde - rc->fine_xtilde), 3)
              << ", |de*| = " << format_number(std::abs(rc->coarse_e_star - rc->fine_e_star), 3) << "  "
              << (rc->pass ? "pass" : "FAIL") << "\n";
  }
  const bool pass = r.pass() && (!rc || rc->pass);
  std::cout << "overall     " << (pass ? "pass" : "FAIL") << "\n";
  if (!out.sim.completed()) return kExitGuard;
  return pass ? kExitOk : kExitFailure;
}

Matrix matrix_arg(const std::string& text, const std::string& key) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw ValidationError(key, "expected a JSON matrix such as [[-1]] or a number");
  }
  if (j.is_number()) return Matrix(1, 1, j.get<double>());
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ValidationError(key, "expected an array of rows");
  const std::size_t rows = j.size(), cols = j[0].size();
  std::vector<double> data;
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ValidationError(key, "ragged matrix");
    for (const auto& v : j[i]) {
      if (!v.is_number()) throw ValidationError(key, "non-numeric entry");
      data.push_back(v.get<double>());
    }
  }
  return Matrix(rows, cols, std::move(data));
}

int cmd_gain(const CommonArgs& a, const std::string& f_text, const std::string& g_text, const std::string& norm) {
  Matrix f, g;
  std::string label;
  if (!f_text.empty() || !g_text.empty()) {
    if (f_text.empty() || g_text.empty()) throw ValidationError("--F", "--F and --G must be given together");
    f = matrix_arg(f_text, "--F");
    g = matrix_arg(g_text, "--G");
  } else {
    const Scenario s = load(a);
    s.require_loop();
    f = s.plant->closed_loop(s.controller->K);
    g = s.plant->B();
    label = s.name;
  }
  if (!f.square()) throw ValidationError("--F", "must be square");
  if (g.rows() != f.rows()) throw ValidationError("--G", "row count must match F");
  GainOptions opts;
  if (norm == "frobenius") {
    opts.integrand_norm = GainNorm::kFrobenius;
  } else if (norm != "induced2") {
    throw ValidationError("--norm", "expected induced2 or frobenius");
  }
  if (!is_hurwitz(f)) throw ValidationError("--F", "not Hurwitz; the gain is unbounded");
  const GainResult r = isiss_gain_detail(f, g, opts);
  if (!label.empty()) std::cout << "scenario  " << label << "\n";
  // the quadrature is accurate to ~1e-6 relative; do not print noise digits
  std::cout << "gamma     " << format_number(r.gamma, 7) << "\n"
            << "|G|       " << format_number(r.norm_G, 9) << "\n"
            << "integral  " << format_number(r.integral, 7) << "\n"
            << "c         " << format_number(r.envelope.c, 9) << "\n"
            << "lambda    " << format_number(r.envelope.lambda, 9) << "\n"
            << "horizon   " << format_number(r.horizon, 6) << " (" << r.panels << " panels)\n";
  return kExitOk;
}

int cmd_pwa(const CommonArgs& a) {
  const Scenario s = load(a, "pwa-abs");
  const PwaOutcome out = run_pwa(s);
  write_file_atomic(fs::path(a.out_dir) / s.outputs.spikes, spikes_csv(out.sim.spikes, s.outputs.precision));
  std::cout << "scenario    " << s.name << "\n"
            << "network     " << describe(out.network) << "\n"
            << "spikes      " << out.sim.spike_count() << "\n"
            << "sup|int(g(y) - u)|  " << format_number(out.trace.sup, 6) << " <= " << format_number(out.bound, 6)
            << " + " << format_number(out.sim.eps_num, 3) << "  " << (out.pass ? "pass" : "FAIL") << "\n";
  if (!out.sim.completed()) return kExitGuard;
  return out.pass ? kExitOk : kExitFailure;
}

int cmd_table1(const CommonArgs& a) {
  const std::vector<std::string> names{"batch-reactor-I", "batch-reactor-II", "batch-reactor-III"};
  std::vector<Scenario> scenarios;
  for (const auto& n : names) {
    Scenario s = preset(n);
    if (a.step) s.sim.base_step = *a.step;
    if (a.t_end) s.sim.t_end = *a.t_end;
    s.sim.validate();
    s.outputs.trajectory = n + "_trajectory.csv";
    s.outputs.spikes = n + "_spikes.csv";
    s.outputs.report = n + "_report.json";
    scenarios.push_back(std::move(s));
  }

  struct Row {
    std::optional<LoopOutcome> out;
    std::string error;
  };
  auto rows = kernels::run_batch_omp<Row>(scenarios.size(), [&](std::size_t i) {
    Row r;
    try {
      r.out = run_loop(scenarios[i]);
      const Scenario& s = scenarios[i];
      write_run_files(s, r.out->sim, a.out_dir);
      write_file_atomic(fs::path(a.out_dir) / s.outputs.report,
                        report_json(summary_of(s, *r.out), r.out->report));
    } catch (const std::exception& e) {
      r.error = e.what();
    }
    return r;
  });

  std::cout << std::left << std::setw(12) << "controller" << std::right << std::setw(10) << "spikes"
            << std::setw(16) << "bound |xt|" << std::setw(16) << "max |xt|" << std::setw(12) << "eps_num"
            << std::setw(8) << "check" << "\n";
  const char* labels[] = {"I", "II", "III"};
  int status = kExitOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].out) {
      std::cerr << "error: " << names[i] << ": " << rows[i].error << "\n";
      status = kExitFailure;
      continue;
    }
    const LoopOutcome& o = *rows[i].out;
    std::cout << std::left << std::setw(12) << labels[i] << std::right << std::setw(10) << o.sim.spike_count()
              << std::setw(16) << format_number(o.report.xtilde_bound, 5) << std::setw(16)
              << format_number(o.report.max_xtilde, 5) << std::setw(12) << format_number(o.sim.eps_num, 3)
              << std::setw(8) << (o.report.pass() ? "pass" : "FAIL") << "\n";
    if (!o.sim.completed()) status = kExitGuard;
  }
  return status;
}

int cmd_presets(const std::string& show) {
  if (!show.empty()) {
    std::cout << dump_scenario(preset(show));
    return kExitOk;
  }
  for (const auto& n : preset_names()) std::cout << n << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate and certify spiking integrate-and-fire controllers for LTI plants"};
  app.require_subcommand(1);

  CommonArgs sim_args, cert_args, gain_args, pwa_args, table_args;
  auto* sim = app.add_subcommand("simulate", "run a scenario and write trajectory + spike CSVs");
  add_common(sim, sim_args);

  bool refine = false;
  auto* cert = app.add_subcommand("certify", "simulate, verify against the guaranteed bounds, write a report");
  add_common(cert, cert_args);
  cert->add_flag("--refine", refine, "repeat at half the step and check convergence of the suprema");

  std::string f_text, g_text, norm = "induced2";
  auto* gain = app.add_subcommand("gain", "iSISS gain and decay envelope of (F, G)");
  add_common(gain, gain_args, false);
  gain->add_option("--F", f_text, "Hurwitz matrix as JSON, e.g. [[-1]]");
  gain->add_option("--G", g_text, "input matrix as JSON, e.g. [[1]]");
  gain->add_option("--norm", norm, "integrand norm: induced2 or frobenius");

  auto* pwa = app.add_subcommand("pwa-approx", "replay a signal through a PWA network and check its bound");
  add_common(pwa, pwa_args);

  auto* table = app.add_subcommand("table1", "batch-reactor controllers I/II/III side by side");
  table->add_option("--out-dir", table_args.out_dir, "directory for output files");
  table->add_option("--step", table_args.step, "override sim.base_step");
  table->add_option("--t-end", table_args.t_end, "override sim.t_end");

  std::string show;
  auto* presets = app.add_subcommand("presets", "list built-in scenarios");
  presets->add_option("--show", show, "print a preset as a scenario file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*sim) return cmd_simulate(sim_args);
    if (*cert) return cmd_certify(cert_args, refine);
    if (*gain) return cmd_gain(gain_args, f_text, g_text, norm);
    if (*pwa) return cmd_pwa(pwa_args);
    if (*table) return cmd_table1(table_args);
    if (*presets) return cmd_presets(show);
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
