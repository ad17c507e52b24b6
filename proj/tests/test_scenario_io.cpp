#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "spikectl/errors.hpp"
#include "spikectl/io.hpp"
#include "spikectl/pipeline.hpp"
#include "spikectl/scenario.hpp"

using namespace spikectl;
using nlohmann::json;

namespace {

json scalar_doc() {
  return json::parse(R"({
    "schema_version": 1,
    "name": "scalar",
    "plant": {"A": [[1.0]], "B": [[-1.0]], "C": [[1.0]]},
    "controller": {"kind": "siso_pair", "K": 2.0, "alpha": [0.1, 0.1]},
    "reference": {"x0": [1.0]},
    "sim": {"t_end": 1.0, "base_step": 1e-4}
  })");
}

std::string key_of(const std::string& text, bool strict = true) {
  try {
    parse_scenario(text, strict);
  } catch (const ValidationError& e) {
    return e.key();
  }
  return "";
}

}  // namespace

TEST_CASE("minimal scenario parses") {
  const Scenario s = parse_scenario(scalar_doc().dump());
  REQUIRE(s.has_loop());
  CHECK(s.controller->kind == NetworkKind::kSisoPair);
  CHECK(s.sim.t_end == 1.0);
  CHECK(s.outputs.precision == 9);
  CHECK(effective_bound_form(s) == BoundForm::kMax);
  CHECK(e_star_bound(*s.controller, BoundForm::kMax) == doctest::Approx(0.1));
  CHECK(e_star_bound(*s.controller, BoundForm::kSum) == doctest::Approx(0.2));
}

TEST_CASE("diagnostics name the offending key") {
  json d = scalar_doc();
  d["plant"].erase("A");
  CHECK(key_of(d.dump()) == "plant.A");

  d = scalar_doc();
  d["controller"]["alpha"] = {0.1, -0.1};
  CHECK(key_of(d.dump()) == "controller.alpha[1]");

  d = scalar_doc();
  d["controller"]["alpha"] = {0.1, 0.0};
  CHECK(key_of(d.dump()) == "controller.alpha[1]");

  d = scalar_doc();
  d["sim"]["t_ned"] = 3;
  CHECK(key_of(d.dump()) == "sim.t_ned");
  CHECK(key_of(d.dump(), false).empty());

  d = scalar_doc();
  d.erase("schema_version");
  CHECK(key_of(d.dump()) == "schema_version");
  d["schema_version"] = 2;
  CHECK(key_of(d.dump()) == "schema_version");

  d = scalar_doc();
  d["plant"]["C"] = {{1.0, 0.0}};
  CHECK(key_of(d.dump()) == "plant.C");

  d = scalar_doc();
  d["reference"]["x0"] = {1.0, 2.0};
  CHECK(key_of(d.dump()) == "reference.x0");

  d = scalar_doc();
  d["plant"]["A"] = {{1.0, 2.0}, {3.0}};
  CHECK(key_of(d.dump()) == "plant.A[1]");

  d = scalar_doc();
  d["controller"]["kind"] = "grid";
  CHECK(key_of(d.dump()) == "controller.kind");

  d = scalar_doc();
  d["controller"]["initial_xi"] = {0.06, 0.0};  // Delta = 0.05
  CHECK(key_of(d.dump()) == "controller");

  d = scalar_doc();
  d["sim"]["base_step"] = 2.0;
  CHECK(key_of(d.dump()) == "sim.base_step");

  CHECK(key_of("{not json") == "<document>");
}

TEST_CASE("shape mismatch reports shapes") {
  Scenario s = preset("batch-reactor-I");
  json d = json::parse(dump_scenario(s));
  d["controller"]["K"] = {{1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}};
  d["controller"]["alpha"] = {{0.1, 0.1, 0.1}, {0.1, 0.1, 0.1}};
  try {
    parse_scenario(d.dump());
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.key() == "controller.K");
    CHECK(std::string(e.what()).find("2x3") != std::string::npos);
    CHECK(std::string(e.what()).find("2x2") != std::string::npos);
  }
}

TEST_CASE("presets round-trip through the file format") {
  for (const std::string& name : preset_names()) {
    const Scenario a = preset(name);
    const std::string text = dump_scenario(a);
    const Scenario b = parse_scenario(text);
    CHECK(dump_scenario(b) == text);
  }
  CHECK_THROWS_AS(preset("nope"), ValidationError);

  const Scenario br = preset("batch-reactor-I");
  CHECK(br.controller->grid_alpha.positive(0, 1) == doctest::Approx(4.0 / 25));
  CHECK(br.sim.t_end == 10.0);
  CHECK(br.x0 == Vector{5.51, 7.08, 2.91, 5.11});
}

TEST_CASE("number formatting") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(1234567890.0) == "1.23456789e+09");
  CHECK(format_number(5.0) == "5");
  CHECK(format_number(1.0 / 3.0, 4) == "0.3333");
}

TEST_CASE("CSV output round-trips and is deterministic") {
  Scenario s = preset("scalar-demo");
  s.sim.t_end = 1.0;
  const LoopOutcome a = run_loop(s);
  const LoopOutcome b = run_loop(s);
  const std::string traj = trajectory_csv(a.sim);
  const std::string spikes = spikes_csv(a.sim.spikes);
  CHECK(traj == trajectory_csv(b.sim));
  CHECK(spikes == spikes_csv(b.sim.spikes));

  const CsvTable t = parse_csv(traj);
  CHECK(t.header == std::vector<std::string>{"t", "x1", "xbar1", "xtilde_norm"});
  REQUIRE(t.rows.size() == a.sim.times.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(format_number(t.rows[i][0]) == format_number(a.sim.times[i]));
    CHECK(format_number(t.rows[i][1]) == format_number(a.sim.states[i][0]));
    CHECK(format_number(t.rows[i][2]) == format_number(a.sim.reference[i][0]));
    CHECK(t.rows[i][1] == doctest::Approx(a.sim.states[i][0]).epsilon(1e-8));
  }

  const CsvTable sp = parse_csv(spikes);
  CHECK(sp.header == std::vector<std::string>{"t", "neuron_id", "channel", "signed_amplitude"});
  REQUIRE(sp.rows.size() == a.sim.spike_count());
  for (std::size_t i = 0; i < sp.rows.size(); ++i) {
    CHECK(sp.rows[i][1] == static_cast<double>(a.sim.spikes[i].neuron_id));
    CHECK(sp.rows[i][3] == doctest::Approx(a.sim.spikes[i].signed_amplitude));
  }

  CHECK_THROWS_AS(parse_csv("a,b\n1,2\n3\n"), ValidationError);
  CHECK_THROWS_AS(parse_csv("a\nx\n"), ValidationError);
}

TEST_CASE("atomic write and report") {
  const auto dir = std::filesystem::temp_directory_path() / "spikectl_io_test";
  std::filesystem::remove_all(dir);
  const auto path = dir / "sub" / "out.txt";
  write_file_atomic(path, "hello\n");
  write_file_atomic(path, "world\n");
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == "world\n");
  CHECK_FALSE(std::filesystem::exists(dir / "sub" / "out.txt.tmp"));

  Scenario s = preset("scalar-demo");
  s.sim.t_end = 1.0;
  const LoopOutcome o = run_loop(s, true);
  REQUIRE(o.refinement);
  const json rep = json::parse(report_json({s.name, "siso_pair", 2, o.sim.times.size(), o.sim.steps, "completed"},
                                           o.report, &*o.refinement));
  CHECK(rep["pass"] == true);
  CHECK(rep["gamma"].get<double>() == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(rep["checks"].size() == o.report.checks.size());
  CHECK(rep["achieved"]["spike_count"] == o.sim.spike_count());
  CHECK(rep.contains("eps_num"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("pwa scenario") {
  const Scenario s = preset("pwa-abs");
  const PwaOutcome o = run_pwa(s);
  CHECK(o.bound == doctest::Approx(0.4));
  CHECK(o.pass);
  CHECK(o.sim.spike_count() > 0);

  json d = json::parse(dump_scenario(s));
  d["pwa"]["alpha"] = {0.1, 0.1, 0.1};
  CHECK(key_of(d.dump()) == "pwa.alpha");
  d = json::parse(dump_scenario(s));
  d["pwa"]["input"]["kind"] = "square";
  CHECK(key_of(d.dump()) == "pwa.input.kind");
}
