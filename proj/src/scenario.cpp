#include "spikectl/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include <json.hpp>

#include "spikectl/errors.hpp"

namespace spikectl {

using nlohmann::json;

namespace {

std::string at_key(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& path, bool strict) {
  if (!obj.is_object()) throw ValidationError(path.empty() ? "<root>" : path, "expected an object");
  if (!strict) return;
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) throw ValidationError(at_key(path, item.key()), "unknown key");
  }
}

const json& need(const json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ValidationError(at_key(path, key), "missing required key");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ValidationError(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(path, "must be finite");
  return d;
}

double positive(const json& v, const std::string& path) {
  const double d = number(v, path);
  if (!(d > 0.0)) throw ValidationError(path, "must be > 0");
  return d;
}

std::vector<double> vector_of(const json& v, const std::string& path) {
  if (!v.is_array()) throw ValidationError(path, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], at_index(path, i)));
  return out;
}

std::vector<double> positive_vector(const json& v, const std::string& path) {
  std::vector<double> out = vector_of(v, path);
  for (std::size_t i = 0; i < out.size(); ++i)
    if (!(out[i] > 0.0)) throw ValidationError(at_index(path, i), "must be > 0");
  return out;
}

Matrix matrix_of(const json& v, const std::string& path) {
  if (!v.is_array() || v.empty()) throw ValidationError(path, "expected a non-empty array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  std::vector<double> data;
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string rp = at_index(path, i);
    std::vector<double> row = vector_of(v[i], rp);
    if (i == 0) cols = row.size();
    if (row.empty() || row.size() != cols) {
      throw ValidationError(rp, "row has " + std::to_string(row.size()) + " entries, expected " +
                                    std::to_string(cols == 0 ? 1 : cols));
    }
    data.insert(data.end(), row.begin(), row.end());
  }
  return Matrix(rows, cols, std::move(data));
}

std::string shape(const Matrix& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

void require_shape(const Matrix& m, std::size_t rows, std::size_t cols, const std::string& path) {
  if (m.rows() != rows || m.cols() != cols) {
    throw ValidationError(path, "shape " + shape(m) + ", expected " + std::to_string(rows) + "x" +
                                    std::to_string(cols));
  }
}

void require_positive(const Matrix& m, const std::string& path) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!(m(i, j) > 0.0)) throw ValidationError(at_index(at_index(path, i), j), "must be > 0");
}

NetworkKind kind_of(const json& v, const std::string& path) {
  if (!v.is_string()) throw ValidationError(path, "expected a string");
  const std::string s = v.get<std::string>();
  if (s == "siso_pair") return NetworkKind::kSisoPair;
  if (s == "mimo_grid") return NetworkKind::kMimoGrid;
  if (s == "mimo_rowgain") return NetworkKind::kMimoRowGain;
  throw ValidationError(path, "unknown controller kind '" + s + "' (siso_pair, mimo_grid, mimo_rowgain)");
}

ControllerSpec parse_controller(const json& c, bool strict) {
  const std::string p = "controller";
  only_keys(c, {"kind", "K", "alpha", "initial_xi"}, p, strict);
  ControllerSpec spec;
  spec.kind = kind_of(need(c, "kind", p), at_key(p, "kind"));

  const json& kj = need(c, "K", p);
  spec.K = kj.is_number() ? Matrix(1, 1, number(kj, "controller.K")) : matrix_of(kj, "controller.K");

  const json& aj = need(c, "alpha", p);
  const std::string ap = "controller.alpha";
  switch (spec.kind) {
    case NetworkKind::kSisoPair: {
      require_shape(spec.K, 1, 1, "controller.K");
      std::vector<double> a = positive_vector(aj, ap);
      if (a.size() != 2) throw ValidationError(ap, "siso_pair expects [alpha1, alpha2]");
      spec.grid_alpha = {Matrix(1, 1, a[0]), Matrix(1, 1, a[1])};
      break;
    }
    case NetworkKind::kMimoGrid: {
      if (aj.is_object()) {
        only_keys(aj, {"positive", "negative"}, ap, strict);
        spec.grid_alpha.positive = matrix_of(need(aj, "positive", ap), at_key(ap, "positive"));
        spec.grid_alpha.negative = matrix_of(need(aj, "negative", ap), at_key(ap, "negative"));
      } else {
        spec.grid_alpha = GridAmplitudes::symmetric(matrix_of(aj, ap));
      }
      const std::string pp = aj.is_object() ? at_key(ap, "positive") : ap;
      const std::string np = aj.is_object() ? at_key(ap, "negative") : ap;
      require_shape(spec.grid_alpha.positive, spec.K.rows(), spec.K.cols(), pp);
      require_shape(spec.grid_alpha.negative, spec.K.rows(), spec.K.cols(), np);
      require_positive(spec.grid_alpha.positive, pp);
      require_positive(spec.grid_alpha.negative, np);
      break;
    }
    case NetworkKind::kMimoRowGain: {
      only_keys(aj, {"positive", "negative"}, ap, strict);
      spec.row_alpha_positive = positive_vector(need(aj, "positive", ap), at_key(ap, "positive"));
      spec.row_alpha_negative = positive_vector(need(aj, "negative", ap), at_key(ap, "negative"));
      for (const auto* v : {&spec.row_alpha_positive, &spec.row_alpha_negative}) {
        if (v->size() != spec.K.rows()) {
          throw ValidationError(at_key(ap, v == &spec.row_alpha_positive ? "positive" : "negative"),
                                "length " + std::to_string(v->size()) + ", expected " +
                                    std::to_string(spec.K.rows()) + " (rows of K)");
        }
      }
      break;
    }
    case NetworkKind::kPwa:
      break;
  }
  if (auto it = c.find("initial_xi"); it != c.end()) spec.initial_xi = vector_of(*it, "controller.initial_xi");
  try {
    (void)build_network(spec);
  } catch (const std::invalid_argument& e) {
    throw ValidationError("controller", e.what());
  } catch (const std::domain_error& e) {
    throw ValidationError("controller", e.what());
  }
  return spec;
}

InputSpec parse_input(const json& j, bool strict, const std::string& p) {
  only_keys(j, {"kind", "amplitude", "frequency", "phase", "offset", "components", "seed"}, p, strict);
  InputSpec in;
  if (auto it = j.find("kind"); it != j.end()) {
    if (!it->is_string()) throw ValidationError(at_key(p, "kind"), "expected a string");
    in.kind = it->get<std::string>();
    if (in.kind != "sine" && in.kind != "multisine")
      throw ValidationError(at_key(p, "kind"), "unknown input kind '" + in.kind + "' (sine, multisine)");
  }
  if (auto it = j.find("amplitude"); it != j.end()) in.amplitude = number(*it, at_key(p, "amplitude"));
  if (auto it = j.find("frequency"); it != j.end()) in.frequency = positive(*it, at_key(p, "frequency"));
  if (auto it = j.find("phase"); it != j.end()) in.phase = number(*it, at_key(p, "phase"));
  if (auto it = j.find("offset"); it != j.end()) in.offset = number(*it, at_key(p, "offset"));
  if (auto it = j.find("components"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 1)
      throw ValidationError(at_key(p, "components"), "must be a positive integer");
    in.components = it->get<int>();
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
      throw ValidationError(at_key(p, "seed"), "must be a non-negative integer");
    in.seed = it->get<std::uint64_t>();
  }
  return in;
}

PwaSpec parse_pwa(const json& j, bool strict) {
  const std::string p = "pwa";
  only_keys(j, {"c", "breakpoints", "slopes", "alpha", "initial_xi", "input"}, p, strict);
  PwaSpec spec;
  spec.g.c = number(need(j, "c", p), "pwa.c");
  spec.g.breakpoints = vector_of(need(j, "breakpoints", p), "pwa.breakpoints");
  spec.g.slopes = vector_of(need(j, "slopes", p), "pwa.slopes");
  try {
    spec.g.validate();
  } catch (const std::exception& e) {
    throw ValidationError("pwa", e.what());
  }
  spec.alpha = positive_vector(need(j, "alpha", p), "pwa.alpha");
  if (spec.alpha.size() != spec.g.pieces() + 3) {
    throw ValidationError("pwa.alpha", "length " + std::to_string(spec.alpha.size()) + ", expected N + 3 = " +
                                           std::to_string(spec.g.pieces() + 3));
  }
  if (auto it = j.find("initial_xi"); it != j.end()) spec.initial_xi = vector_of(*it, "pwa.initial_xi");
  if (auto it = j.find("input"); it != j.end()) spec.input = parse_input(*it, strict, "pwa.input");
  try {
    (void)build_pwa_network(spec.g, spec.alpha, spec.initial_xi);
  } catch (const std::exception& e) {
    throw ValidationError("pwa", e.what());
  }
  return spec;
}

SimConfig parse_sim(const json& j, bool strict) {
  const std::string p = "sim";
  only_keys(j, {"t_end", "base_step", "event_tol", "sample_stride", "merge_window"}, p, strict);
  SimConfig cfg;
  if (auto it = j.find("t_end"); it != j.end()) cfg.t_end = positive(*it, "sim.t_end");
  if (auto it = j.find("base_step"); it != j.end()) cfg.base_step = positive(*it, "sim.base_step");
  if (auto it = j.find("event_tol"); it != j.end()) cfg.event_tol = positive(*it, "sim.event_tol");
  if (auto it = j.find("merge_window"); it != j.end()) cfg.merge_window = number(*it, "sim.merge_window");
  if (auto it = j.find("sample_stride"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 1)
      throw ValidationError("sim.sample_stride", "must be a positive integer");
    cfg.sample_stride = it->get<std::size_t>();
  }
  cfg.validate();
  return cfg;
}

CertifySpec parse_certify(const json& j, bool strict) {
  only_keys(j, {"gain_norm", "bound_form"}, "certify", strict);
  CertifySpec spec;
  if (auto it = j.find("gain_norm"); it != j.end()) {
    const std::string s = it->is_string() ? it->get<std::string>() : "";
    if (s == "induced2") {
      spec.gain_norm = GainNorm::kInduced2;
    } else if (s == "frobenius") {
      spec.gain_norm = GainNorm::kFrobenius;
    } else {
      throw ValidationError("certify.gain_norm", "expected \"induced2\" or \"frobenius\"");
    }
  }
  if (auto it = j.find("bound_form"); it != j.end()) {
    const std::string s = it->is_string() ? it->get<std::string>() : "";
    if (s == "sum") {
      spec.bound_form = BoundForm::kSum;
    } else if (s == "max") {
      spec.bound_form = BoundForm::kMax;
    } else if (s != "auto") {
      throw ValidationError("certify.bound_form", "expected \"sum\", \"max\" or \"auto\"");
    }
  }
  return spec;
}

OutputSpec parse_outputs(const json& j, bool strict) {
  only_keys(j, {"trajectory", "spikes", "report", "precision"}, "outputs", strict);
  OutputSpec out;
  auto str = [&](const char* key, std::string& dst) {
    if (auto it = j.find(key); it != j.end()) {
      if (!it->is_string() || it->get<std::string>().empty())
        throw ValidationError(std::string("outputs.") + key, "expected a non-empty file name");
      dst = it->get<std::string>();
    }
  };
  str("trajectory", out.trajectory);
  str("spikes", out.spikes);
  str("report", out.report);
  if (auto it = j.find("precision"); it != j.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 1 || it->get<long long>() > 17)
      throw ValidationError("outputs.precision", "must be an integer in [1, 17]");
    out.precision = it->get<int>();
  }
  return out;
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

const Matrix& batch_a() {
  static const Matrix a{{1.38, -0.2077, 6.715, -5.676},
                        {-0.5814, -4.29, 0.0, 0.675},
                        {1.067, 4.273, -6.654, 5.893},
                        {0.048, 4.273, 1.343, -2.104}};
  return a;
}

Scenario batch_reactor(const std::string& name, double alpha_scale, Vector x0) {
  Scenario s;
  s.name = name;
  s.plant = LtiPlant(batch_a(), Matrix{{0.0, 0.0}, {5.679, 0.0}, {1.136, -3.146}, {1.136, 0.0}},
                     Matrix{{1.0, 0.0, 1.0, -1.0}, {0.0, 1.0, 0.0, 0.0}});
  ControllerSpec c;
  c.kind = NetworkKind::kMimoGrid;
  c.K = Matrix{{-0.5, -2.0}, {5.0, 0.5}};
  Matrix alpha{{1.0, 4.0}, {3.0, 0.3}};
  alpha *= alpha_scale / 25.0;
  c.grid_alpha = GridAmplitudes::symmetric(alpha);
  s.controller = c;
  s.x0 = std::move(x0);
  s.sim.t_end = 10.0;
  s.sim.base_step = 1e-4;
  s.sim.event_tol = 1e-9;
  s.certify.gain_norm = GainNorm::kFrobenius;
  return s;
}

}  // namespace

InputSignal InputSpec::make() const {
  const double two_pi = 2.0 * std::numbers::pi;
  if (kind == "sine") {
    const double a = amplitude, w = two_pi * frequency, ph = phase, off = offset;
    return [=](double t) { return Vector{off + a * std::sin(w * t + ph)}; };
  }
  // Random-phase multisine, band-limited to `frequency`, peak at most `amplitude`.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> freq, phs, amp;
  for (int i = 0; i < components; ++i) {
    freq.push_back(frequency * (0.1 + 0.9 * unit(rng)));
    phs.push_back(two_pi * unit(rng));
    amp.push_back(amplitude / components);
  }
  const double off = offset;
  return [=](double t) {
    double v = off;
    for (std::size_t i = 0; i < freq.size(); ++i) v += amp[i] * std::sin(two_pi * freq[i] * t + phs[i]);
    return Vector{v};
  };
}

void Scenario::require_loop() const {
  if (!plant) throw ValidationError("plant", "missing required key");
  if (!controller) throw ValidationError("controller", "missing required key");
  if (x0.size() != plant->nx()) {
    throw ValidationError("reference.x0", "length " + std::to_string(x0.size()) + ", expected " +
                                              std::to_string(plant->nx()) + " (order of A)");
  }
}

Scenario parse_scenario(std::string_view text, bool strict) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("<document>", e.what());
  }
  only_keys(doc, {"schema_version", "name", "plant", "controller", "reference", "sim", "certify", "outputs", "pwa"},
            "", strict);
  const json& ver = need(doc, "schema_version", "");
  if (!ver.is_number_integer() || ver.get<long long>() != kSchemaVersion) {
    throw ValidationError("schema_version", "unsupported, expected " + std::to_string(kSchemaVersion));
  }

  Scenario s;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ValidationError("name", "expected a string");
    s.name = it->get<std::string>();
  }
  if (auto it = doc.find("plant"); it != doc.end()) {
    only_keys(*it, {"A", "B", "C"}, "plant", strict);
    Matrix a = matrix_of(need(*it, "A", "plant"), "plant.A");
    Matrix b = matrix_of(need(*it, "B", "plant"), "plant.B");
    Matrix c = matrix_of(need(*it, "C", "plant"), "plant.C");
    if (!a.square()) throw ValidationError("plant.A", "must be square, got " + shape(a));
    if (b.rows() != a.rows())
      throw ValidationError("plant.B", "shape " + shape(b) + " has " + std::to_string(b.rows()) +
                                           " rows, A is " + shape(a));
    if (c.cols() != a.rows())
      throw ValidationError("plant.C", "shape " + shape(c) + " has " + std::to_string(c.cols()) +
                                           " columns, A is " + shape(a));
    s.plant = LtiPlant(std::move(a), std::move(b), std::move(c));
  }
  if (auto it = doc.find("controller"); it != doc.end()) {
    s.controller = parse_controller(*it, strict);
    if (s.plant) {
      require_shape(s.controller->K, s.plant->nu(), s.plant->ny(), "controller.K");
    }
  }
  if (auto it = doc.find("reference"); it != doc.end()) {
    only_keys(*it, {"x0"}, "reference", strict);
    s.x0 = vector_of(need(*it, "x0", "reference"), "reference.x0");
  }
  if (auto it = doc.find("sim"); it != doc.end()) s.sim = parse_sim(*it, strict);
  if (auto it = doc.find("certify"); it != doc.end()) s.certify = parse_certify(*it, strict);
  if (auto it = doc.find("outputs"); it != doc.end()) s.outputs = parse_outputs(*it, strict);
  if (auto it = doc.find("pwa"); it != doc.end()) s.pwa = parse_pwa(*it, strict);

  if (s.plant || s.controller || doc.contains("reference")) s.require_loop();
  if (!s.has_loop() && !s.pwa) throw ValidationError("plant", "scenario needs a plant/controller loop or a pwa block");
  return s;
}

std::string dump_scenario(const Scenario& s) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  if (!s.name.empty()) doc["name"] = s.name;
  if (s.plant) doc["plant"] = {{"A", matrix_json(s.plant->A())}, {"B", matrix_json(s.plant->B())},
                               {"C", matrix_json(s.plant->C())}};
  if (s.controller) {
    const ControllerSpec& c = *s.controller;
    json cj;
    switch (c.kind) {
      case NetworkKind::kSisoPair:
        cj["kind"] = "siso_pair";
        cj["K"] = c.K(0, 0);
        cj["alpha"] = {c.grid_alpha.positive(0, 0), c.grid_alpha.negative(0, 0)};
        break;
      case NetworkKind::kMimoGrid:
        cj["kind"] = "mimo_grid";
        cj["K"] = matrix_json(c.K);
        if (c.grid_alpha.positive == c.grid_alpha.negative) {
          cj["alpha"] = matrix_json(c.grid_alpha.positive);
        } else {
          cj["alpha"] = {{"positive", matrix_json(c.grid_alpha.positive)},
                         {"negative", matrix_json(c.grid_alpha.negative)}};
        }
        break;
      case NetworkKind::kMimoRowGain:
        cj["kind"] = "mimo_rowgain";
        cj["K"] = matrix_json(c.K);
        cj["alpha"] = {{"positive", c.row_alpha_positive}, {"negative", c.row_alpha_negative}};
        break;
      case NetworkKind::kPwa:
        break;
    }
    if (!c.initial_xi.empty()) cj["initial_xi"] = c.initial_xi;
    doc["controller"] = cj;
  }
  if (s.has_loop()) doc["reference"] = {{"x0", s.x0}};
  doc["sim"] = {{"t_end", s.sim.t_end},
                {"base_step", s.sim.base_step},
                {"event_tol", s.sim.event_tol},
                {"sample_stride", s.sim.sample_stride},
                {"merge_window", s.sim.merge_window}};
  json cert;
  cert["gain_norm"] = s.certify.gain_norm == GainNorm::kFrobenius ? "frobenius" : "induced2";
  cert["bound_form"] = !s.certify.bound_form ? "auto" : (*s.certify.bound_form == BoundForm::kMax ? "max" : "sum");
  doc["certify"] = cert;
  doc["outputs"] = {{"trajectory", s.outputs.trajectory},
                    {"spikes", s.outputs.spikes},
                    {"report", s.outputs.report},
                    {"precision", s.outputs.precision}};
  if (s.pwa) {
    const PwaSpec& p = *s.pwa;
    json pj = {{"c", p.g.c}, {"breakpoints", p.g.breakpoints}, {"slopes", p.g.slopes}, {"alpha", p.alpha}};
    if (!p.initial_xi.empty()) pj["initial_xi"] = p.initial_xi;
    pj["input"] = {{"kind", p.input.kind},          {"amplitude", p.input.amplitude},
                   {"frequency", p.input.frequency}, {"phase", p.input.phase},
                   {"offset", p.input.offset},       {"components", p.input.components},
                   {"seed", p.input.seed}};
    doc["pwa"] = pj;
  }
  return doc.dump(2) + "\n";
}

std::vector<std::string> preset_names() {
  return {"batch-reactor-I", "batch-reactor-II", "batch-reactor-III", "batch-reactor-rest",
          "batch-reactor-rowgain", "scalar-demo", "pwa-abs"};
}

Scenario preset(const std::string& name) {
  const Vector x0{5.51, 7.08, 2.91, 5.11};
  if (name == "batch-reactor-I") return batch_reactor(name, 1.0, x0);
  if (name == "batch-reactor-II") return batch_reactor(name, 0.25, x0);
  if (name == "batch-reactor-III") return batch_reactor(name, 1.0 / 15.0, x0);
  if (name == "batch-reactor-rest") return batch_reactor(name, 1.0, Vector(4, 0.0));
  if (name == "batch-reactor-rowgain") {
    Scenario s = batch_reactor(name, 1.0, x0);
    s.controller->kind = NetworkKind::kMimoRowGain;
    s.controller->grid_alpha = {};
    s.controller->row_alpha_positive = {0.1, 0.1};
    s.controller->row_alpha_negative = {0.1, 0.1};
    return s;
  }
  if (name == "scalar-demo") {
    Scenario s;
    s.name = name;
    s.plant = LtiPlant(Matrix{{1.0}}, Matrix{{-1.0}}, Matrix{{1.0}});
    ControllerSpec c;
    c.kind = NetworkKind::kSisoPair;
    c.K = Matrix{{2.0}};
    c.grid_alpha = {Matrix{{0.1}}, Matrix{{0.1}}};
    s.controller = c;
    s.x0 = {1.0};
    s.sim.t_end = 5.0;
    return s;
  }
  if (name == "pwa-abs") {
    Scenario s;
    s.name = name;
    PwaSpec p;
    p.g = PwaFunction{0.0, {0.0}, {-1.0, 1.0}};
    p.alpha = {0.1, 0.1, 0.1, 0.1};
    p.input.kind = "sine";
    p.input.amplitude = 2.0;
    p.input.frequency = 0.5;
    s.pwa = p;
    s.sim.t_end = 10.0;
    return s;
  }
  std::string known;
  for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
  throw ValidationError("--preset", "unknown preset '" + name + "' (" + known + ")");
}

ControllerNetwork build_network(const ControllerSpec& spec) {
  switch (spec.kind) {
    case NetworkKind::kSisoPair:
      return build_siso_pair(spec.K(0, 0), spec.grid_alpha.positive(0, 0), spec.grid_alpha.negative(0, 0),
                             spec.initial_xi);
    case NetworkKind::kMimoGrid:
      return build_mimo_grid(spec.K, spec.grid_alpha, spec.initial_xi);
    case NetworkKind::kMimoRowGain:
      return build_mimo_rowgain(spec.K, spec.row_alpha_positive, spec.row_alpha_negative, spec.initial_xi);
    case NetworkKind::kPwa:
      break;
  }
  throw ValidationError("controller.kind", "pwa networks are configured in the pwa block");
}

bool initial_states_zero(const ControllerSpec& spec) {
  return std::all_of(spec.initial_xi.begin(), spec.initial_xi.end(), [](double v) { return v == 0.0; });
}

BoundForm effective_bound_form(const Scenario& s) {
  if (s.certify.bound_form) return *s.certify.bound_form;
  return s.controller && initial_states_zero(*s.controller) ? BoundForm::kMax : BoundForm::kSum;
}

double e_star_bound(const ControllerSpec& spec, BoundForm form) {
  switch (spec.kind) {
    case NetworkKind::kSisoPair:
      return siso_bound(1.0, spec.grid_alpha.positive(0, 0), spec.grid_alpha.negative(0, 0),
                        form == BoundForm::kMax);
    case NetworkKind::kMimoGrid: {
      // pairs for K_ij = 0 are not built and carry no error
      GridAmplitudes present = spec.grid_alpha;
      for (std::size_t i = 0; i < spec.K.rows(); ++i)
        for (std::size_t j = 0; j < spec.K.cols(); ++j)
          if (spec.K(i, j) == 0.0) present.positive(i, j) = present.negative(i, j) = 0.0;
      return mimo_bound(1.0, present, form);
    }
    case NetworkKind::kMimoRowGain:
      return rowgain_bound(1.0, spec.row_alpha_positive, spec.row_alpha_negative, form);
    case NetworkKind::kPwa:
      break;
  }
  throw ValidationError("controller.kind", "no emulation bound for pwa networks");
}

}  // namespace spikectl
