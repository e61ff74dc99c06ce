#include "chemoflux/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace chemoflux {

using json = nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

int line_of_byte(const std::string& text, size_t byte) {
  int line = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where + ": expected an object");
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* k : allowed) {
      if (item.key() == k) {
        known = true;
        break;
      }
    }
    if (!known) fail(where + ": unknown key \"" + item.key() + "\"");
  }
}

double get_num(const json& obj, const char* key, double fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) fail(where + "." + key + ": expected a number");
  return v.get<double>();
}

int get_int(const json& obj, const char* key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) fail(where + "." + key + ": expected an integer");
  return v.get<int>();
}

bool get_bool(const json& obj, const char* key, bool fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_boolean()) fail(where + "." + key + ": expected a boolean");
  return v.get<bool>();
}

std::string get_str(const json& obj, const char* key, const std::string& fallback,
                    const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) fail(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> get_num_array(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : v) {
    if (!x.is_number()) fail(where + ": expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

// ---- ScalarFunc <-> json ----

ScalarFunc decode_func(const json& obj, const std::string& where) {
  const std::string preset = get_str(obj, "preset", "zero", where);
  if (preset == "zero") {
    check_keys(obj, where, {"preset"});
    return preset_zero();
  }
  if (preset == "constant") {
    check_keys(obj, where, {"preset", "value"});
    return preset_constant(get_num(obj, "value", 0.0, where));
  }
  if (preset == "linear") {
    check_keys(obj, where, {"preset", "slope"});
    return preset_linear(get_num(obj, "slope", 1.0, where));
  }
  if (preset == "logistic") {
    check_keys(obj, where, {"preset", "rho0", "k"});
    return preset_logistic_f(get_num(obj, "rho0", 1.0, where), get_num(obj, "k", 1.0, where));
  }
  if (preset == "saturating") {
    check_keys(obj, where, {"preset", "coeff"});
    return preset_saturating(get_num(obj, "coeff", 1.0, where));
  }
  if (preset == "ramp") {
    check_keys(obj, where, {"preset", "g0", "tau"});
    return preset_ramp_g(get_num(obj, "g0", 1.0, where), get_num(obj, "tau", 1.0, where));
  }
  if (preset == "table") {
    check_keys(obj, where, {"preset", "x", "y"});
    if (!obj.contains("x") || !obj.contains("y")) fail(where + ": table needs x and y");
    try {
      return preset_table(get_num_array(obj.at("x"), where + ".x"),
                          get_num_array(obj.at("y"), where + ".y"));
    } catch (const Error& e) {
      fail(where + ": " + e.what());
    }
  }
  fail(where + ": unknown function preset \"" + preset + "\"");
}

json encode_func(const ScalarFunc& f) {
  json j;
  switch (f.kind) {
    case ScalarFunc::Kind::Zero:
      j["preset"] = "zero";
      break;
    case ScalarFunc::Kind::Constant:
      j["preset"] = "constant";
      j["value"] = f.c0;
      break;
    case ScalarFunc::Kind::Linear:
      j["preset"] = "linear";
      j["slope"] = f.c0;
      break;
    case ScalarFunc::Kind::Logistic:
      j["preset"] = "logistic";
      j["rho0"] = f.c0;
      j["k"] = f.c1;
      break;
    case ScalarFunc::Kind::Saturating:
      j["preset"] = "saturating";
      j["coeff"] = f.c0;
      break;
    case ScalarFunc::Kind::Ramp:
      j["preset"] = "ramp";
      j["g0"] = f.c0;
      j["tau"] = f.c1;
      break;
    case ScalarFunc::Kind::Table:
      j["preset"] = "table";
      j["x"] = f.xs;
      j["y"] = f.ys;
      break;
  }
  return j;
}

// ---- FieldInit <-> json ----

FieldInit decode_init(const json& obj, const std::string& where) {
  const std::string preset = get_str(obj, "preset", "constant", where);
  if (preset == "constant") {
    check_keys(obj, where, {"preset", "value"});
    return init_constant(get_num(obj, "value", 0.0, where));
  }
  if (preset == "gaussian") {
    check_keys(obj, where, {"preset", "center", "width", "amplitude", "offset"});
    return init_gaussian(get_num(obj, "center", 0.5, where), get_num(obj, "width", 0.1, where),
                         get_num(obj, "amplitude", 1.0, where),
                         get_num(obj, "offset", 0.0, where));
  }
  if (preset == "cosine") {
    check_keys(obj, where, {"preset", "mean", "amplitude", "mode"});
    return init_cosine_mode(get_num(obj, "mean", 0.0, where),
                            get_num(obj, "amplitude", 0.0, where),
                            get_int(obj, "mode", 1, where));
  }
  if (preset == "table") {
    check_keys(obj, where, {"preset", "values"});
    if (!obj.contains("values")) fail(where + ": table needs values");
    return init_table(get_num_array(obj.at("values"), where + ".values"));
  }
  fail(where + ": unknown initial preset \"" + preset + "\"");
}

json encode_init(const FieldInit& f) {
  json j;
  switch (f.kind) {
    case FieldInit::Kind::Constant:
      j["preset"] = "constant";
      j["value"] = f.value;
      break;
    case FieldInit::Kind::Gaussian:
      j["preset"] = "gaussian";
      j["center"] = f.center;
      j["width"] = f.width;
      j["amplitude"] = f.amplitude;
      j["offset"] = f.offset;
      break;
    case FieldInit::Kind::CosineMode:
      j["preset"] = "cosine";
      j["mean"] = f.mean;
      j["amplitude"] = f.amplitude;
      j["mode"] = f.mode;
      break;
    case FieldInit::Kind::Table:
      j["preset"] = "table";
      j["values"] = f.table;
      break;
  }
  return j;
}

json merge(json base, const json& overlay, bool top = true) {
  if (!base.is_object() || !overlay.is_object()) return overlay;
  // a nested object that names its own preset is atomic: stale keys from the
  // base preset must not leak into it
  if (!top && overlay.contains("preset")) return overlay;
  for (const auto& item : overlay.items()) {
    if (base.contains(item.key())) {
      base[item.key()] = merge(base.at(item.key()), item.value(), false);
    } else {
      base[item.key()] = item.value();
    }
  }
  return base;
}

json figure1_json() {
  const Figure1Preset fig = figure1_preset();
  json j;
  j["params"] = {{"d1", fig.params.d1},         {"d2", fig.params.d2},
                 {"d3", fig.params.d3},         {"d4", fig.params.d4},
                 {"alpha1", fig.params.alpha1}, {"alpha2", fig.params.alpha2},
                 {"beta1", fig.params.beta1},   {"beta2", fig.params.beta2},
                 {"mu", fig.params.mu},         {"mu_a", fig.params.mu_a},
                 {"mu_b", fig.params.mu_b},     {"k_capacity", fig.params.k_capacity}};
  j["functions"] = {{"rho", encode_func(fig.funcs.rho)},
                    {"f", encode_func(fig.funcs.f)},
                    {"h", encode_func(fig.funcs.h)},
                    {"g", encode_func(fig.funcs.g)}};
  j["initial"] = {{"u", encode_init(fig.initial.u)},
                  {"v", encode_init(fig.initial.v)},
                  {"a", encode_init(fig.initial.a)},
                  {"b", encode_init(fig.initial.b)}};
  return j;
}

void apply_override(json& root, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) {
    fail("override \"" + spec + "\" is not of the form key.path=value");
  }
  const std::string path = spec.substr(0, eq);
  const std::string raw = spec.substr(eq + 1);

  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // bare words become strings ("upwind", "figure1", ...)
  }

  json* node = &root;
  size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) fail("override \"" + spec + "\" has an empty path segment");
    if (dot == std::string::npos) {
      if (key == "preset" && node != &root && node->is_object()) {
        // switching a function/initial preset discards the old one's keys
        *node = json::object();
      }
      (*node)[key] = value;
      break;
    }
    if (!node->contains(key) || !(*node)[key].is_object()) (*node)[key] = json::object();
    node = &(*node)[key];
    start = dot + 1;
  }
}

RunMode decode_mode(const std::string& s) {
  if (s == "simulate") return RunMode::Simulate;
  if (s == "picard") return RunMode::Picard;
  if (s == "steady") return RunMode::Steady;
  if (s == "averages") return RunMode::Averages;
  if (s == "check") return RunMode::Check;
  fail("unknown mode \"" + s + "\"");
}

AdvectionScheme decode_scheme(const std::string& s) {
  if (s == "upwind") return AdvectionScheme::Upwind;
  if (s == "central") return AdvectionScheme::Central;
  fail("unknown advection scheme \"" + s + "\"");
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::Simulate:
      return "simulate";
    case RunMode::Picard:
      return "picard";
    case RunMode::Steady:
      return "steady";
    case RunMode::Averages:
      return "averages";
    case RunMode::Check:
      return "check";
  }
  return "simulate";
}

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    fail("parse error at line " + std::to_string(line_of_byte(text, e.byte)) + ": " + e.what());
  }
  if (!root.is_object()) fail("configuration must be a JSON object");

  const std::string preset = get_str(root, "preset", "", "config");
  if (!preset.empty()) {
    if (preset != "figure1") fail("unknown preset \"" + preset + "\"");
    root = merge(figure1_json(), root);
  }
  for (const auto& spec : overrides) apply_override(root, spec);

  check_keys(root, "config",
             {"mode", "preset", "mesh", "solver", "params", "functions", "initial", "output",
              "picard", "steady", "averages"});

  RunConfig cfg;
  cfg.mode = decode_mode(get_str(root, "mode", "simulate", "config"));
  cfg.preset = get_str(root, "preset", "", "config");

  if (root.contains("mesh")) {
    const json& m = root.at("mesh");
    check_keys(m, "mesh", {"n_cells"});
    cfg.mesh.n_cells = get_int(m, "n_cells", cfg.mesh.n_cells, "mesh");
    if (cfg.mesh.n_cells < 4) fail("mesh.n_cells must be at least 4");
  }

  if (root.contains("solver")) {
    const json& s = root.at("solver");
    check_keys(s, "solver",
               {"t_end", "dt_max", "cfl_safety", "scheme", "positivity_tol", "snapshot_every",
                "diagnostics_every"});
    cfg.solver.t_end = get_num(s, "t_end", cfg.solver.t_end, "solver");
    cfg.solver.dt_max = get_num(s, "dt_max", cfg.solver.dt_max, "solver");
    cfg.solver.cfl_safety = get_num(s, "cfl_safety", cfg.solver.cfl_safety, "solver");
    cfg.solver.scheme = decode_scheme(get_str(
        s, "scheme", cfg.solver.scheme == AdvectionScheme::Upwind ? "upwind" : "central",
        "solver"));
    cfg.solver.positivity_tol = get_num(s, "positivity_tol", cfg.solver.positivity_tol, "solver");
    cfg.solver.snapshot_every = get_int(s, "snapshot_every", cfg.solver.snapshot_every, "solver");
    cfg.solver.diagnostics_every =
        get_int(s, "diagnostics_every", cfg.solver.diagnostics_every, "solver");
    if (!(cfg.solver.t_end >= 0.0)) fail("solver.t_end must be >= 0");
    if (!(cfg.solver.dt_max > 0.0)) fail("solver.dt_max must be > 0");
    if (!(cfg.solver.cfl_safety > 0.0 && cfg.solver.cfl_safety <= 1.0)) {
      fail("solver.cfl_safety must lie in (0, 1]");
    }
    if (cfg.solver.snapshot_every < 1 || cfg.solver.diagnostics_every < 1) {
      fail("solver cadences must be >= 1");
    }
  }

  if (root.contains("params")) {
    const json& p = root.at("params");
    check_keys(p, "params",
               {"d1", "d2", "d3", "d4", "alpha1", "alpha2", "beta1", "beta2", "mu", "mu_a",
                "mu_b", "k_capacity"});
    cfg.params.d1 = get_num(p, "d1", cfg.params.d1, "params");
    cfg.params.d2 = get_num(p, "d2", cfg.params.d2, "params");
    cfg.params.d3 = get_num(p, "d3", cfg.params.d3, "params");
    cfg.params.d4 = get_num(p, "d4", cfg.params.d4, "params");
    cfg.params.alpha1 = get_num(p, "alpha1", cfg.params.alpha1, "params");
    cfg.params.alpha2 = get_num(p, "alpha2", cfg.params.alpha2, "params");
    cfg.params.beta1 = get_num(p, "beta1", cfg.params.beta1, "params");
    cfg.params.beta2 = get_num(p, "beta2", cfg.params.beta2, "params");
    cfg.params.mu = get_num(p, "mu", cfg.params.mu, "params");
    cfg.params.mu_a = get_num(p, "mu_a", cfg.params.mu_a, "params");
    cfg.params.mu_b = get_num(p, "mu_b", cfg.params.mu_b, "params");
    cfg.params.k_capacity = get_num(p, "k_capacity", cfg.params.k_capacity, "params");
  }

  if (root.contains("functions")) {
    const json& f = root.at("functions");
    check_keys(f, "functions", {"rho", "f", "h", "g"});
    if (f.contains("rho")) cfg.funcs.rho = decode_func(f.at("rho"), "functions.rho");
    if (f.contains("f")) cfg.funcs.f = decode_func(f.at("f"), "functions.f");
    if (f.contains("h")) cfg.funcs.h = decode_func(f.at("h"), "functions.h");
    if (f.contains("g")) cfg.funcs.g = decode_func(f.at("g"), "functions.g");
  }

  if (root.contains("initial")) {
    const json& i = root.at("initial");
    check_keys(i, "initial", {"u", "v", "a", "b"});
    if (i.contains("u")) cfg.initial.u = decode_init(i.at("u"), "initial.u");
    if (i.contains("v")) cfg.initial.v = decode_init(i.at("v"), "initial.v");
    if (i.contains("a")) cfg.initial.a = decode_init(i.at("a"), "initial.a");
    if (i.contains("b")) cfg.initial.b = decode_init(i.at("b"), "initial.b");
  }

  if (root.contains("output")) {
    const json& o = root.at("output");
    check_keys(o, "output", {"dir", "formats"});
    cfg.output.dir = get_str(o, "dir", cfg.output.dir, "output");
    if (o.contains("formats")) {
      const json& fmts = o.at("formats");
      if (!fmts.is_array()) fail("output.formats: expected an array");
      cfg.output.csv = cfg.output.json = cfg.output.svg = false;
      for (const auto& f : fmts) {
        if (!f.is_string()) fail("output.formats: expected an array of strings");
        const std::string name = f.get<std::string>();
        if (name == "csv") {
          cfg.output.csv = true;
        } else if (name == "json") {
          cfg.output.json = true;
        } else if (name == "svg") {
          cfg.output.svg = true;
        } else {
          fail("output.formats: unknown format \"" + name + "\"");
        }
      }
    }
  }

  if (root.contains("picard")) {
    const json& p = root.at("picard");
    check_keys(p, "picard", {"horizons", "iterations", "time_steps"});
    if (p.contains("horizons")) {
      cfg.picard.horizons = get_num_array(p.at("horizons"), "picard.horizons");
    }
    cfg.picard.iterations = get_int(p, "iterations", cfg.picard.iterations, "picard");
    cfg.picard.time_steps = get_int(p, "time_steps", cfg.picard.time_steps, "picard");
    if (cfg.picard.horizons.empty()) fail("picard.horizons must not be empty");
    for (double T : cfg.picard.horizons) {
      if (!(T > 0.0)) fail("picard.horizons must be positive");
    }
    if (cfg.picard.iterations < 2) fail("picard.iterations must be >= 2");
    if (cfg.picard.time_steps < 1) fail("picard.time_steps must be >= 1");
  }

  if (root.contains("steady")) {
    const json& s = root.at("steady");
    check_keys(s, "steady",
               {"gamma", "delta", "p", "k1", "x0", "c", "d", "grid_points", "relax", "g1", "g2",
                "mu_a", "mu_b", "epsilon", "q", "relax_cells"});
    cfg.steady.profile.gamma = get_num(s, "gamma", cfg.steady.profile.gamma, "steady");
    cfg.steady.profile.delta = get_num(s, "delta", cfg.steady.profile.delta, "steady");
    cfg.steady.profile.p = get_num(s, "p", cfg.steady.profile.p, "steady");
    cfg.steady.profile.k1 = get_num(s, "k1", cfg.steady.profile.k1, "steady");
    cfg.steady.profile.x0 = get_num(s, "x0", cfg.steady.profile.x0, "steady");
    cfg.steady.profile.c = get_num(s, "c", cfg.steady.profile.c, "steady");
    cfg.steady.profile.d = get_num(s, "d", cfg.steady.profile.d, "steady");
    cfg.steady.grid_points = get_int(s, "grid_points", cfg.steady.grid_points, "steady");
    cfg.steady.relax = get_bool(s, "relax", cfg.steady.relax, "steady");
    cfg.steady.g1 = get_num(s, "g1", cfg.steady.g1, "steady");
    cfg.steady.g2 = get_num(s, "g2", cfg.steady.g2, "steady");
    cfg.steady.mu_a = get_num(s, "mu_a", cfg.steady.mu_a, "steady");
    cfg.steady.mu_b = get_num(s, "mu_b", cfg.steady.mu_b, "steady");
    cfg.steady.epsilon = get_num(s, "epsilon", cfg.steady.epsilon, "steady");
    cfg.steady.q = get_num(s, "q", cfg.steady.q, "steady");
    cfg.steady.relax_cells = get_int(s, "relax_cells", cfg.steady.relax_cells, "steady");
    if (cfg.steady.grid_points < 10) fail("steady.grid_points must be >= 10");
    if (cfg.steady.relax_cells < 4) fail("steady.relax_cells must be >= 4");
  }

  if (root.contains("averages")) {
    const json& a = root.at("averages");
    check_keys(a, "averages", {"t_end", "samples", "compare"});
    cfg.averages.t_end = get_num(a, "t_end", cfg.averages.t_end, "averages");
    cfg.averages.samples = get_int(a, "samples", cfg.averages.samples, "averages");
    cfg.averages.compare = get_bool(a, "compare", cfg.averages.compare, "averages");
    if (!(cfg.averages.t_end > 0.0)) fail("averages.t_end must be > 0");
    if (cfg.averages.samples < 2) fail("averages.samples must be >= 2");
  }

  try {
    const ValidationReport report = validate(cfg.params, cfg.funcs, 256,
                                             /*waive_figure1=*/cfg.preset == "figure1");
    if (!report.passed()) {
      std::ostringstream oss;
      oss << "model validation failed:";
      for (const auto& v : report.violations) {
        if (v.waived) continue;
        oss << "\n  " << v.assumption << " [" << v.where << "]: " << v.message;
      }
      fail(oss.str());
    }
  } catch (const NonFiniteSampleError& e) {
    fail(std::string("model validation failed: ") + e.what());
  }

  return cfg;
}

RunConfig parse_config_file(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open config file: " + path);
  std::ostringstream oss;
  oss << in.rdbuf();
  return parse_config(oss.str(), overrides);
}

std::string write_config(const RunConfig& cfg) {
  json root;
  root["mode"] = to_string(cfg.mode);
  root["preset"] = cfg.preset;
  root["mesh"] = {{"n_cells", cfg.mesh.n_cells}};
  root["solver"] = {
      {"t_end", cfg.solver.t_end},
      {"dt_max", cfg.solver.dt_max},
      {"cfl_safety", cfg.solver.cfl_safety},
      {"scheme", cfg.solver.scheme == AdvectionScheme::Upwind ? "upwind" : "central"},
      {"positivity_tol", cfg.solver.positivity_tol},
      {"snapshot_every", cfg.solver.snapshot_every},
      {"diagnostics_every", cfg.solver.diagnostics_every}};
  root["params"] = {{"d1", cfg.params.d1},         {"d2", cfg.params.d2},
                    {"d3", cfg.params.d3},         {"d4", cfg.params.d4},
                    {"alpha1", cfg.params.alpha1}, {"alpha2", cfg.params.alpha2},
                    {"beta1", cfg.params.beta1},   {"beta2", cfg.params.beta2},
                    {"mu", cfg.params.mu},         {"mu_a", cfg.params.mu_a},
                    {"mu_b", cfg.params.mu_b},     {"k_capacity", cfg.params.k_capacity}};
  root["functions"] = {{"rho", encode_func(cfg.funcs.rho)},
                       {"f", encode_func(cfg.funcs.f)},
                       {"h", encode_func(cfg.funcs.h)},
                       {"g", encode_func(cfg.funcs.g)}};
  root["initial"] = {{"u", encode_init(cfg.initial.u)},
                     {"v", encode_init(cfg.initial.v)},
                     {"a", encode_init(cfg.initial.a)},
                     {"b", encode_init(cfg.initial.b)}};
  json formats = json::array();
  if (cfg.output.csv) formats.push_back("csv");
  if (cfg.output.json) formats.push_back("json");
  if (cfg.output.svg) formats.push_back("svg");
  root["output"] = {{"dir", cfg.output.dir}, {"formats", formats}};
  root["picard"] = {{"horizons", cfg.picard.horizons},
                    {"iterations", cfg.picard.iterations},
                    {"time_steps", cfg.picard.time_steps}};
  root["steady"] = {{"gamma", cfg.steady.profile.gamma},
                    {"delta", cfg.steady.profile.delta},
                    {"p", cfg.steady.profile.p},
                    {"k1", cfg.steady.profile.k1},
                    {"x0", cfg.steady.profile.x0},
                    {"c", cfg.steady.profile.c},
                    {"d", cfg.steady.profile.d},
                    {"grid_points", cfg.steady.grid_points},
                    {"relax", cfg.steady.relax},
                    {"g1", cfg.steady.g1},
                    {"g2", cfg.steady.g2},
                    {"mu_a", cfg.steady.mu_a},
                    {"mu_b", cfg.steady.mu_b},
                    {"epsilon", cfg.steady.epsilon},
                    {"q", cfg.steady.q},
                    {"relax_cells", cfg.steady.relax_cells}};
  root["averages"] = {{"t_end", cfg.averages.t_end},
                      {"samples", cfg.averages.samples},
                      {"compare", cfg.averages.compare}};
  return root.dump(2) + "\n";
}

bool operator==(const RunConfig& lhs, const RunConfig& rhs) {
  return write_config(lhs) == write_config(rhs);
}

}  // namespace chemoflux
