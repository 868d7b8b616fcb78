#include "config.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>
#include <vector>

#include "errors.hpp"

namespace gch {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// key -> raw value text, duplicates rejected.
std::map<std::string, std::string> tokenize(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = text.size();
    std::string line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw invalid_input("config line " + std::to_string(line_no) +
                          ": expected 'key = value', got '" + line + "'");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw invalid_input("config line " + std::to_string(line_no) +
                          ": empty key");
    }
    if (!kv.emplace(key, value).second) {
      throw invalid_input("duplicate key '" + key + "'");
    }
  }
  return kv;
}

struct KeyBag {
  std::map<std::string, std::string> kv;

  std::optional<std::string> take(const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  }
  bool has(const std::string& key) const { return kv.count(key) != 0; }
};

double to_double(const std::string& key, const std::string& raw) {
  const char* s = raw.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0') {
    throw invalid_input("key '" + key + "': expected a number, got '" + raw +
                        "'");
  }
  return v;
}

long long to_int(const std::string& key, const std::string& raw) {
  const char* s = raw.c_str();
  char* end = nullptr;
  long long v = std::strtoll(s, &end, 10);
  if (end == s || *end != '\0') {
    throw invalid_input("key '" + key + "': expected an integer, got '" +
                        raw + "'");
  }
  return v;
}

std::uint64_t to_u64(const std::string& key, const std::string& raw) {
  const char* s = raw.c_str();
  if (*s == '-') {
    throw invalid_input("key '" + key + "': expected a nonnegative integer");
  }
  char* end = nullptr;
  std::uint64_t v = std::strtoull(s, &end, 10);
  if (end == s || *end != '\0') {
    throw invalid_input("key '" + key + "': expected an integer, got '" +
                        raw + "'");
  }
  return v;
}

std::vector<std::string> split_array(const std::string& key,
                                     const std::string& raw) {
  std::string t = trim(raw);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw invalid_input("key '" + key + "': expected an array like [a, b]");
  }
  std::string inner = trim(t.substr(1, t.size() - 2));
  std::vector<std::string> items;
  if (inner.empty()) return items;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = inner.find(',', pos);
    if (comma == std::string::npos) {
      items.push_back(trim(inner.substr(pos)));
      break;
    }
    items.push_back(trim(inner.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return items;
}

std::vector<double> to_double_array(const std::string& key,
                                    const std::string& raw) {
  std::vector<double> out;
  for (const std::string& item : split_array(key, raw)) {
    out.push_back(to_double(key, item));
  }
  return out;
}

std::vector<int> to_int_array(const std::string& key, const std::string& raw) {
  std::vector<int> out;
  for (const std::string& item : split_array(key, raw)) {
    long long v = to_int(key, item);
    if (v < -(1LL << 31) || v >= (1LL << 31)) {
      throw invalid_input("key '" + key + "': entry out of range");
    }
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool is_localized(InitialKind kind) {
  return kind == InitialKind::gaussian ||
         kind == InitialKind::mollified_peakon;
}

}  // namespace

double default_monitor_s(int k) { return 2.0 * (k - 1) + 1.5 + 0.1; }

void ScenarioConfig::validate() const {
  model.validate();
  if (model.k < 1) throw invalid_input("model.k must be >= 1");
  if (model.p < 1) throw invalid_input("model.p must be >= 1");
  if (!preset.empty() && !(preset_params(preset) == model)) {
    throw invalid_input(
        "model.preset '" + preset +
        "' does not match the explicit model parameters in the config");
  }
  if (grid_n < 8 || (grid_n & (grid_n - 1)) != 0) {
    throw invalid_input("grid.n must be a power of two >= 8");
  }
  if (!(grid_length > 0.0) || !std::isfinite(grid_length)) {
    throw invalid_input("grid.length must be positive and finite");
  }
  control.validate();
  if (!(control.t_end > 0.0)) {
    throw invalid_input("control.t_end must be positive");
  }
  if (!std::isfinite(initial.amplitude)) {
    throw invalid_input("initial.amplitude must be finite");
  }
  if (!std::isfinite(initial.center)) {
    throw invalid_input("initial.center must be finite");
  }
  if (!(initial.width > 0.0) || !std::isfinite(initial.width)) {
    throw invalid_input("initial.width must be positive and finite");
  }
  if (!(initial.mollify_width > 0.0) ||
      !std::isfinite(initial.mollify_width)) {
    throw invalid_input("initial.mollify_width must be positive and finite");
  }
  if (initial.kind == InitialKind::cosine_packet) {
    if (initial.modes.empty()) {
      throw invalid_input("initial.modes must name at least one mode");
    }
    for (int m : initial.modes) {
      if (m < 1) throw invalid_input("initial.modes entries must be >= 1");
      if (m >= grid_n / 2) {
        throw invalid_input(
            "initial.modes entries must lie below Nyquist (grid.n/2)");
      }
    }
  }
  if (outputs.snapshot_cadence < 1) {
    throw invalid_input("outputs.cadence must be >= 1");
  }
  if (!(monitor_s > 0.0) || !std::isfinite(monitor_s)) {
    throw invalid_input("monitor_s must be positive and finite");
  }
  if (initial.seed != seed) {
    throw invalid_input(
        "initial data draws from the scenario 'seed'; set that key instead "
        "of a separate sampler seed");
  }
}

ScenarioConfig parse_config(const std::string& text) {
  KeyBag bag{tokenize(text)};
  ScenarioConfig cfg;

  // --- model ---
  if (auto preset = bag.take("model.preset")) {
    for (const char* key : {"model.k", "model.p", "model.b",
                            "model.g_coeffs"}) {
      if (bag.has(key)) {
        throw invalid_input(std::string("model.preset excludes '") + key +
                            "'");
      }
    }
    cfg.model = preset_params(*preset);  // throws for unknown names
    cfg.preset = *preset;
  } else {
    auto k = bag.take("model.k"), p = bag.take("model.p"),
         b = bag.take("model.b");
    if (!k || !p || !b) {
      throw invalid_input(
          "missing model: give model.preset or all of model.k, model.p, "
          "model.b");
    }
    long long ki = to_int("model.k", *k);
    if (ki < 1) throw invalid_input("model.k must be >= 1");
    long long pi = to_int("model.p", *p);
    if (pi < 1) throw invalid_input("model.p must be >= 1");
    cfg.model.k = static_cast<int>(ki);
    cfg.model.p = static_cast<int>(pi);
    cfg.model.b = to_double("model.b", *b);
    if (!std::isfinite(cfg.model.b)) {
      throw invalid_input("model.b must be finite");
    }
    if (auto g = bag.take("model.g_coeffs")) {
      cfg.model.g_coeffs = to_double_array("model.g_coeffs", *g);
    }
  }

  // --- grid ---
  auto n = bag.take("grid.n");
  if (!n) throw invalid_input("missing required key 'grid.n'");
  long long n_points = to_int("grid.n", *n);
  if (n_points < 8 || n_points > (1 << 24) ||
      (n_points & (n_points - 1)) != 0) {
    throw invalid_input("grid.n must be a power of two >= 8");
  }
  cfg.grid_n = static_cast<int>(n_points);

  // --- initial (kind first: the grid-length default depends on it) ---
  if (auto kind = bag.take("initial.kind")) {
    cfg.initial.kind = initial_kind_from_string(*kind);
  }
  if (auto a = bag.take("initial.amplitude")) {
    cfg.initial.amplitude = to_double("initial.amplitude", *a);
  }
  if (auto w = bag.take("initial.width")) {
    cfg.initial.width = to_double("initial.width", *w);
  }
  if (auto m = bag.take("initial.modes")) {
    cfg.initial.modes = to_int_array("initial.modes", *m);
  }
  if (auto mw = bag.take("initial.mollify_width")) {
    cfg.initial.mollify_width = to_double("initial.mollify_width", *mw);
  }

  if (auto l = bag.take("grid.length")) {
    cfg.grid_length = to_double("grid.length", *l);
  } else {
    cfg.grid_length =
        is_localized(cfg.initial.kind) ? 40.0 : 2.0 * std::numbers::pi;
  }
  if (auto c = bag.take("initial.center")) {
    cfg.initial.center = to_double("initial.center", *c);
  } else {
    cfg.initial.center = cfg.grid_length / 2.0;
  }

  // --- control ---
  auto t_end = bag.take("control.t_end");
  if (!t_end) throw invalid_input("missing required key 'control.t_end'");
  cfg.control.t_end = to_double("control.t_end", *t_end);
  if (auto dt = bag.take("control.dt")) {
    cfg.control.dt = to_double("control.dt", *dt);
  }
  if (auto cfl = bag.take("control.cfl")) {
    cfg.control.cfl_safety = to_double("control.cfl", *cfl);
  }
  if (auto thr = bag.take("control.breaking_threshold")) {
    cfg.control.breaking_threshold =
        to_double("control.breaking_threshold", *thr);
  }
  if (auto ms = bag.take("control.max_steps")) {
    cfg.control.max_steps = to_int("control.max_steps", *ms);
  }

  // --- outputs ---
  if (auto csv = bag.take("outputs.csv")) cfg.outputs.csv_path = *csv;
  if (auto snap = bag.take("outputs.snapshots")) {
    cfg.outputs.snapshot_path = *snap;
  }
  if (auto cad = bag.take("outputs.cadence")) {
    cfg.outputs.snapshot_cadence = to_int("outputs.cadence", *cad);
  }

  // --- scalars ---
  if (auto ms = bag.take("monitor_s")) {
    cfg.monitor_s = to_double("monitor_s", *ms);
  } else {
    cfg.monitor_s = default_monitor_s(cfg.model.k);
  }
  if (auto seed = bag.take("seed")) {
    cfg.seed = to_u64("seed", *seed);
    cfg.initial.seed = cfg.seed;
  } else {
    cfg.initial.seed = cfg.seed;
  }

  if (!bag.kv.empty()) {
    throw invalid_input("unknown key '" + bag.kv.begin()->first + "'");
  }

  cfg.validate();
  return cfg;
}

std::string render_config(const ScenarioConfig& cfg) {
  cfg.validate();
  std::string out;
  auto line = [&](const std::string& key, const std::string& value) {
    out += key + " = " + value + "\n";
  };

  if (!cfg.preset.empty()) {
    line("model.preset", cfg.preset);
  } else {
    line("model.k", std::to_string(cfg.model.k));
    line("model.p", std::to_string(cfg.model.p));
    line("model.b", format_double(cfg.model.b));
    if (!cfg.model.g_coeffs.empty()) {
      std::string arr = "[";
      for (std::size_t i = 0; i < cfg.model.g_coeffs.size(); ++i) {
        if (i) arr += ", ";
        arr += format_double(cfg.model.g_coeffs[i]);
      }
      line("model.g_coeffs", arr + "]");
    }
  }

  line("grid.n", std::to_string(cfg.grid_n));
  line("grid.length", format_double(cfg.grid_length));

  if (cfg.control.dt) line("control.dt", format_double(*cfg.control.dt));
  line("control.cfl", format_double(cfg.control.cfl_safety));
  line("control.t_end", format_double(cfg.control.t_end));
  line("control.breaking_threshold",
       format_double(cfg.control.breaking_threshold));
  line("control.max_steps", std::to_string(cfg.control.max_steps));

  line("initial.kind", to_string(cfg.initial.kind));
  line("initial.amplitude", format_double(cfg.initial.amplitude));
  line("initial.center", format_double(cfg.initial.center));
  line("initial.width", format_double(cfg.initial.width));
  {
    std::string arr = "[";
    for (std::size_t i = 0; i < cfg.initial.modes.size(); ++i) {
      if (i) arr += ", ";
      arr += std::to_string(cfg.initial.modes[i]);
    }
    line("initial.modes", arr + "]");
  }
  line("initial.mollify_width", format_double(cfg.initial.mollify_width));

  if (!cfg.outputs.csv_path.empty()) line("outputs.csv", cfg.outputs.csv_path);
  if (!cfg.outputs.snapshot_path.empty()) {
    line("outputs.snapshots", cfg.outputs.snapshot_path);
  }
  line("outputs.cadence", std::to_string(cfg.outputs.snapshot_cadence));

  line("monitor_s", format_double(cfg.monitor_s));
  line("seed", std::to_string(cfg.seed));
  return out;
}

}  // namespace gch
