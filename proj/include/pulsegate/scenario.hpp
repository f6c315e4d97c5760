// Copyright 2026 The Pulsegate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scenario configuration (JSON, versioned schema) and the runners behind the
// command-line subcommands. Runners are pure: they turn a validated
// configuration into tables, a JSON summary and a list of violated numerical
// invariants. Writing files is left to write_outputs().

#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "pulsegate/closed_form.hpp"
#include "pulsegate/error.hpp"
#include "pulsegate/fock.hpp"
#include "pulsegate/gate.hpp"
#include "pulsegate/grid.hpp"
#include "pulsegate/io.hpp"
#include "pulsegate/jsa.hpp"
#include "pulsegate/moments.hpp"
#include "pulsegate/parallel.hpp"
#include "pulsegate/schmidt.hpp"
#include "pulsegate/spectra.hpp"

namespace pulsegate::scenario {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

enum class Command { Block, Swap, Spectrum, PhaseSweep, ThetaSweep, Twin, Select, Jsa, Oracle, Validate };

inline const std::map<std::string, Command>& command_names() {
  static const std::map<std::string, Command> names{
      {"block", Command::Block},         {"swap", Command::Swap},     {"spectrum", Command::Spectrum},
      {"phase-sweep", Command::PhaseSweep}, {"theta-sweep", Command::ThetaSweep}, {"twin", Command::Twin},
      {"select", Command::Select},       {"jsa", Command::Jsa},       {"oracle", Command::Oracle},
      {"validate", Command::Validate}};
  return names;
}

inline std::string command_name(Command c) {
  for (const auto& [k, v] : command_names())
    if (v == c) return k;
  return "?";
}

/// Artifacts (table file stems) produced by each command.
inline std::vector<std::string> artifacts_of(Command c) {
  switch (c) {
    case Command::Block:
    case Command::Swap:
    case Command::Spectrum: return {"weights", "spectrum", "observables"};
    case Command::PhaseSweep: return {"phase_map"};
    case Command::ThetaSweep: return {"theta_sweep"};
    case Command::Twin: return {"twin"};
    case Command::Select: return {"select"};
    case Command::Jsa: return {"jsa_sweep", "jsa_spectrum"};
    case Command::Oracle: return {"oracle"};
    case Command::Validate: return {};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Configuration model.

enum class SeedKind { Single, Twin };

struct SeedSection {
  SeedKind kind = SeedKind::Single;
  std::optional<double> G;
  std::optional<double> leading_squeezing;  // G sqrt(lambda_0)
  std::optional<double> geometric_ratio;
  std::size_t count = 0;
  std::vector<double> lambdas;  // resolved
  double mode_center = 0.0;
  double mode_width = 1.0;
};

struct GateSection {
  double theta = 0.0;
  std::vector<int> orders;
  std::vector<double> weights;  // |mu_k|^2
  std::vector<double> phases;   // arg mu_k
};

struct SweepSection {
  std::string axis;  // "theta" | "phase"
  double start = 0.0;
  double stop = 0.0;
  std::size_t points = 0;

  std::vector<double> values() const {
    std::vector<double> v(points);
    for (std::size_t i = 0; i < points; ++i)
      v[i] = points == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(points - 1);
    return v;
  }
};

struct GridSection {
  double half_width = 8.0;
  std::size_t points = 2048;
  FrequencyGrid grid() const { return FrequencyGrid::symmetric(half_width, points); }
};

struct SelectSection {
  int order = 0;
  std::vector<double> thetas{0.5 * kPi, 0.5 * kPi};
};

struct JsaSection {
  std::vector<double> ratios;
  std::vector<JsaApproximation> approximations{JsaApproximation::Gaussian};
  double pump_width = 1.0;
  std::size_t signal_points = 256;
  std::size_t output_points = 256;
  double output_widths = 5.0;
  std::size_t reported_modes = 8;
};

struct OracleSection {
  int cutoff = 24;
  double g = 0.5;
  double theta = 0.25 * kPi;
  std::vector<std::string> scenarios{"single", "swap", "twin_swap"};
};

struct ScenarioConfig {
  int schema_version = kSchemaVersion;
  std::string name;
  std::optional<Command> command;
  std::optional<SeedSection> seed;
  std::optional<GateSection> gate;
  std::optional<SweepSection> sweep;
  GridSection grid;
  PhaseConvention convention = PhaseConvention::ImaginaryPowers;
  std::vector<std::string> outputs;
  std::optional<SelectSection> select;
  std::optional<JsaSection> jsa;
  std::optional<OracleSection> oracle;
  std::size_t workers = 0;  // 0: default pool size
  json source;              // parsed input, for hashing

  std::string hash() const { return io::hex64(io::fnv1a64(source.dump())); }
  std::size_t worker_count() const { return workers == 0 ? default_worker_count() : workers; }
};

// ---------------------------------------------------------------------------
// Parsing helpers. Every error names the offending field.

namespace detail {

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }
inline std::string at_index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

inline void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

inline void reject_unknown(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
  expect_object(j, path);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError(join(path, it.key()), "unknown key");
  }
}

inline double number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
  return v;
}

inline double positive(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v > 0.0)) throw ConfigError(path, "must be positive");
  return v;
}

inline double non_negative(const json& j, const std::string& path) {
  const double v = number(j, path);
  if (!(v >= 0.0)) throw ConfigError(path, "must be non-negative");
  return v;
}

inline long long integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path, "expected an integer");
  return j.get<long long>();
}

inline std::size_t count_at_least(const json& j, const std::string& path, long long minimum) {
  const long long v = integer(j, path);
  if (v < minimum) throw ConfigError(path, "must be >= " + std::to_string(minimum));
  return static_cast<std::size_t>(v);
}

inline std::string string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

inline const json& array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  return j;
}

}  // namespace detail

/// Angle given as a number (radians) or as text such as "pi/2", "3*pi/4",
/// "-pi", "0.25pi", "2pi".
inline double parse_angle(const json& j, const std::string& path) {
  if (j.is_number()) return detail::number(j, path);
  if (!j.is_string()) throw ConfigError(path, "expected an angle (number or expression like \"pi/2\")");
  static const std::regex re(R"(^\s*([+-]?)\s*(\d+(?:\.\d*)?|\.\d+)?\s*\*?\s*pi\s*(?:/\s*(\d+(?:\.\d*)?|\.\d+))?\s*$)");
  std::smatch m;
  const std::string text = j.get<std::string>();
  if (std::regex_match(text, m, re)) {
    double v = kPi;
    if (m[2].matched) v *= std::stod(m[2].str());
    if (m[3].matched) {
      const double d = std::stod(m[3].str());
      if (d == 0.0) throw ConfigError(path, "division by zero in angle expression");
      v /= d;
    }
    return m[1].str() == "-" ? -v : v;
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(path, "cannot parse angle \"" + text + "\"");
}

inline SeedSection parse_seed(const json& j, const std::string& path) {
  using namespace detail;
  reject_unknown(j, path, {"type", "G", "leading_squeezing", "lambda", "mode_center", "mode_width"});
  SeedSection s;
  if (j.contains("type")) {
    const auto t = string(j["type"], join(path, "type"));
    if (t == "single")
      s.kind = SeedKind::Single;
    else if (t == "twin")
      s.kind = SeedKind::Twin;
    else
      throw ConfigError(join(path, "type"), "must be \"single\" or \"twin\"");
  }
  if (j.contains("G") == j.contains("leading_squeezing"))
    throw ConfigError(path, "give exactly one of \"G\" and \"leading_squeezing\"");
  if (j.contains("G")) s.G = non_negative(j["G"], join(path, "G"));
  if (j.contains("leading_squeezing"))
    s.leading_squeezing = non_negative(j["leading_squeezing"], join(path, "leading_squeezing"));
  if (j.contains("mode_center")) s.mode_center = number(j["mode_center"], join(path, "mode_center"));
  if (j.contains("mode_width")) s.mode_width = positive(j["mode_width"], join(path, "mode_width"));

  const std::string lp = join(path, "lambda");
  if (!j.contains("lambda")) throw ConfigError(lp, "missing Schmidt coefficient specification");
  const json& l = j["lambda"];
  reject_unknown(l, lp, {"geometric_ratio", "count", "values"});
  if (l.contains("values") == l.contains("geometric_ratio"))
    throw ConfigError(lp, "give exactly one of \"values\" and \"geometric_ratio\"");
  if (l.contains("values")) {
    if (l.contains("count")) throw ConfigError(join(lp, "count"), "only used with \"geometric_ratio\"");
    const json& v = array(l["values"], join(lp, "values"));
    if (v.empty()) throw ConfigError(join(lp, "values"), "at least one coefficient required");
    double sum = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      s.lambdas.push_back(non_negative(v[i], at_index(join(lp, "values"), i)));
      if (i > 0 && s.lambdas[i] > s.lambdas[i - 1])
        throw ConfigError(at_index(join(lp, "values"), i), "Schmidt coefficients must be non-increasing");
      sum += s.lambdas[i];
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ConfigError(join(lp, "values"), "Schmidt coefficients must sum to 1");
    s.count = s.lambdas.size();
  } else {
    const double r = number(l["geometric_ratio"], join(lp, "geometric_ratio"));
    if (!(r >= 0.0 && r < 1.0)) throw ConfigError(join(lp, "geometric_ratio"), "must lie in [0, 1)");
    if (!l.contains("count")) throw ConfigError(join(lp, "count"), "required with \"geometric_ratio\"");
    s.count = count_at_least(l["count"], join(lp, "count"), 1);
    if (s.count > 64) throw ConfigError(join(lp, "count"), "at most 64 Schmidt modes are supported");
    s.geometric_ratio = r;
    s.lambdas = geometric_schmidt_weights(r, s.count);
  }
  if (s.leading_squeezing && !(s.lambdas.front() > 0.0))
    throw ConfigError(lp, "leading Schmidt coefficient must be positive");
  return s;
}

inline GateSection parse_gate(const json& j, const std::string& path) {
  using namespace detail;
  reject_unknown(j, path, {"theta", "orders", "weights", "phases"});
  GateSection g;
  if (!j.contains("theta")) throw ConfigError(join(path, "theta"), "required");
  g.theta = parse_angle(j["theta"], join(path, "theta"));
  if (!j.contains("orders")) throw ConfigError(join(path, "orders"), "required");
  const json& o = array(j["orders"], join(path, "orders"));
  if (o.empty()) throw ConfigError(join(path, "orders"), "at least one matched order required");
  std::set<int> seen;
  for (std::size_t i = 0; i < o.size(); ++i) {
    const long long n = integer(o[i], at_index(join(path, "orders"), i));
    if (n < 0) throw ConfigError(at_index(join(path, "orders"), i), "must be non-negative");
    if (!seen.insert(static_cast<int>(n)).second)
      throw ConfigError(at_index(join(path, "orders"), i), "matched orders must be distinct");
    g.orders.push_back(static_cast<int>(n));
  }
  const std::size_t m = g.orders.size();
  if (j.contains("weights")) {
    const json& w = array(j["weights"], join(path, "weights"));
    if (w.size() != m) throw ConfigError(join(path, "weights"), "one weight per matched order required");
    for (std::size_t i = 0; i < m; ++i) g.weights.push_back(non_negative(w[i], at_index(join(path, "weights"), i)));
  } else {
    g.weights.assign(m, 1.0 / static_cast<double>(m));
  }
  if (j.contains("phases")) {
    const json& p = array(j["phases"], join(path, "phases"));
    if (p.size() != m) throw ConfigError(join(path, "phases"), "one phase per matched order required");
    for (std::size_t i = 0; i < m; ++i) g.phases.push_back(parse_angle(p[i], at_index(join(path, "phases"), i)));
  } else {
    g.phases.assign(m, 0.0);
  }
  // Surface the normalization condition at parse time.
  std::vector<cplx> mu;
  for (std::size_t i = 0; i < m; ++i) mu.push_back(std::polar(std::sqrt(g.weights[i]), g.phases[i]));
  try {
    (void)normalize_projections(mu);
  } catch (const NormalizationError& e) {
    throw ConfigError(join(path, "weights"), e.what());
  }
  return g;
}

inline SweepSection parse_sweep(const json& j, const std::string& path) {
  using namespace detail;
  reject_unknown(j, path, {"axis", "start", "stop", "points"});
  SweepSection s;
  if (!j.contains("axis")) throw ConfigError(join(path, "axis"), "required");
  s.axis = string(j["axis"], join(path, "axis"));
  if (s.axis != "theta" && s.axis != "phase") throw ConfigError(join(path, "axis"), "must be \"theta\" or \"phase\"");
  for (const char* k : {"start", "stop", "points"})
    if (!j.contains(k)) throw ConfigError(join(path, k), "required");
  s.start = parse_angle(j["start"], join(path, "start"));
  s.stop = parse_angle(j["stop"], join(path, "stop"));
  s.points = count_at_least(j["points"], join(path, "points"), 1);
  if (s.points > 100000) throw ConfigError(join(path, "points"), "at most 100000 sweep points");
  return s;
}

inline GridSection parse_grid(const json& j, const std::string& path) {
  using namespace detail;
  reject_unknown(j, path, {"half_width", "points"});
  GridSection g;
  if (j.contains("half_width")) g.half_width = positive(j["half_width"], join(path, "half_width"));
  if (j.contains("points")) g.points = count_at_least(j["points"], join(path, "points"), 2);
  if (g.points > 1'000'000) throw ConfigError(join(path, "points"), "at most 1000000 grid points");
  return g;
}

inline SelectSection parse_select(const json& j, const std::string& path) {
  using namespace detail;
  reject_unknown(j, path, {"order", "thetas"});
  SelectSection s;
  if (!j.contains("order")) throw ConfigError(join(path, "order"), "required");
  const long long n = integer(j["order"], join(path, "order"));
  if (n < 0) throw ConfigError(join(path, "order"), "must be non-negative");
  s.order = static_cast<int>(n);
  if (j.contains("thetas")) {
    const json& t = array(j["thetas"], join(path, "thetas"));
    if (t.size() != 2) throw ConfigError(join(path, "thetas"), "exactly two gate angles required");
    for (std::size_t i = 0; i < 2; ++i) s.thetas[i] = parse_angle(t[i], at_index(join(path, "thetas"), i));
  }
  for (std::size_t i = 0; i < 2; ++i)
    if (std::abs(s.thetas[i] - 0.5 * kPi) > 1e-12)
      throw ConfigError(at_index(join(path, "thetas"), i),
                        "mode selection needs full conversion (theta = pi/2) in both gates; partial conversion "
                        "would leave squeezed light in the other Schmidt modes");
  return s;
}

inline JsaSection parse_jsa(const json& j, const std::string& path) {
  using namespace detail;
  reject_unknown(j, path,
                 {"ratios", "log_sweep", "approximation", "pump_width", "signal_points", "output_points",
                  "output_widths", "reported_modes"});
  JsaSection s;
  if (j.contains("ratios") == j.contains("log_sweep"))
    throw ConfigError(path, "give exactly one of \"ratios\" and \"log_sweep\"");
  if (j.contains("ratios")) {
    const json& r = array(j["ratios"], join(path, "ratios"));
    if (r.empty()) throw ConfigError(join(path, "ratios"), "at least one ratio required");
    for (std::size_t i = 0; i < r.size(); ++i) s.ratios.push_back(positive(r[i], at_index(join(path, "ratios"), i)));
  } else {
    const std::string lp = join(path, "log_sweep");
    const json& l = j["log_sweep"];
    reject_unknown(l, lp, {"start", "stop", "points"});
    for (const char* k : {"start", "stop", "points"})
      if (!l.contains(k)) throw ConfigError(join(lp, k), "required");
    const double a = positive(l["start"], join(lp, "start"));
    const double b = positive(l["stop"], join(lp, "stop"));
    const std::size_t n = count_at_least(l["points"], join(lp, "points"), 1);
    if (n > 1000) throw ConfigError(join(lp, "points"), "at most 1000 ratios");
    for (std::size_t i = 0; i < n; ++i)
      s.ratios.push_back(n == 1 ? a : a * std::pow(b / a, static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  if (j.contains("approximation")) {
    const auto a = string(j["approximation"], join(path, "approximation"));
    if (a == "gaussian")
      s.approximations = {JsaApproximation::Gaussian};
    else if (a == "sinc")
      s.approximations = {JsaApproximation::Sinc};
    else if (a == "both")
      s.approximations = {JsaApproximation::Gaussian, JsaApproximation::Sinc};
    else
      throw ConfigError(join(path, "approximation"), "must be \"gaussian\", \"sinc\" or \"both\"");
  }
  if (j.contains("pump_width")) s.pump_width = positive(j["pump_width"], join(path, "pump_width"));
  if (j.contains("signal_points")) s.signal_points = count_at_least(j["signal_points"], join(path, "signal_points"), 16);
  if (j.contains("output_points")) s.output_points = count_at_least(j["output_points"], join(path, "output_points"), 16);
  if (s.signal_points > 4096) throw ConfigError(join(path, "signal_points"), "at most 4096 points");
  if (s.output_points > 4096) throw ConfigError(join(path, "output_points"), "at most 4096 points");
  if (j.contains("output_widths")) {
    s.output_widths = positive(j["output_widths"], join(path, "output_widths"));
    if (s.output_widths < 3.0) throw ConfigError(join(path, "output_widths"), "must be >= 3 to cover the envelope");
  }
  if (j.contains("reported_modes"))
    s.reported_modes = count_at_least(j["reported_modes"], join(path, "reported_modes"), 1);
  return s;
}

inline OracleSection parse_oracle(const json& j, const std::string& path) {
  using namespace detail;
  reject_unknown(j, path, {"cutoff", "g", "theta", "scenarios"});
  OracleSection s;
  if (j.contains("cutoff")) {
    s.cutoff = static_cast<int>(count_at_least(j["cutoff"], join(path, "cutoff"), 2));
    if (s.cutoff > 40) throw ConfigError(join(path, "cutoff"), "at most 40");
  }
  if (j.contains("g")) {
    s.g = non_negative(j["g"], join(path, "g"));
    if (s.g > 1.0) throw ConfigError(join(path, "g"), "the truncated oracle is limited to g <= 1");
  }
  if (j.contains("theta")) s.theta = parse_angle(j["theta"], join(path, "theta"));
  if (j.contains("scenarios")) {
    const json& a = array(j["scenarios"], join(path, "scenarios"));
    s.scenarios.clear();
    for (std::size_t i = 0; i < a.size(); ++i) {
      const auto v = string(a[i], at_index(join(path, "scenarios"), i));
      if (v != "single" && v != "swap" && v != "twin_swap")
        throw ConfigError(at_index(join(path, "scenarios"), i), "must be \"single\", \"swap\" or \"twin_swap\"");
      s.scenarios.push_back(v);
    }
    if (s.scenarios.empty()) throw ConfigError(join(path, "scenarios"), "at least one scenario required");
  }
  return s;
}

inline ScenarioConfig parse_config(const json& j) {
  using namespace detail;
  reject_unknown(j, "",
                 {"schema_version", "name", "command", "seed", "gate", "sweep", "grid", "convention", "outputs",
                  "select", "jsa", "oracle", "workers"});
  ScenarioConfig c;
  c.source = j;
  if (!j.contains("schema_version")) throw ConfigError("schema_version", "required");
  c.schema_version = static_cast<int>(integer(j["schema_version"], "schema_version"));
  if (c.schema_version != kSchemaVersion)
    throw ConfigError("schema_version", "unsupported version " + std::to_string(c.schema_version) + " (expected " +
                                            std::to_string(kSchemaVersion) + ")");
  if (j.contains("name")) c.name = string(j["name"], "name");
  if (j.contains("command")) {
    const auto n = string(j["command"], "command");
    auto it = command_names().find(n);
    if (it == command_names().end() || it->second == Command::Validate)
      throw ConfigError("command", "unknown command \"" + n + "\"");
    c.command = it->second;
  }
  if (j.contains("seed")) c.seed = parse_seed(j["seed"], "seed");
  if (j.contains("gate")) c.gate = parse_gate(j["gate"], "gate");
  if (j.contains("sweep")) c.sweep = parse_sweep(j["sweep"], "sweep");
  if (j.contains("grid")) c.grid = parse_grid(j["grid"], "grid");
  if (j.contains("convention")) {
    const auto v = string(j["convention"], "convention");
    if (v == "imaginary_powers")
      c.convention = PhaseConvention::ImaginaryPowers;
    else if (v == "real")
      c.convention = PhaseConvention::Real;
    else
      throw ConfigError("convention", "must be \"imaginary_powers\" or \"real\"");
  }
  if (j.contains("outputs")) {
    const json& o = array(j["outputs"], "outputs");
    for (std::size_t i = 0; i < o.size(); ++i) c.outputs.push_back(string(o[i], at_index("outputs", i)));
  }
  if (j.contains("select")) c.select = parse_select(j["select"], "select");
  if (j.contains("jsa")) c.jsa = parse_jsa(j["jsa"], "jsa");
  if (j.contains("oracle")) c.oracle = parse_oracle(j["oracle"], "oracle");
  if (j.contains("workers")) {
    c.workers = count_at_least(j["workers"], "workers", 1);
    if (c.workers > 64) throw ConfigError("workers", "at most 64");
  }
  return c;
}

inline ScenarioConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return parse_config(j);
}

// ---------------------------------------------------------------------------
// Validation against module preconditions.

inline SchmidtSpectrum build_spectrum(const SeedSection& s) {
  try {
    if (s.leading_squeezing)
      return SchmidtSpectrum::from_leading_squeezing(*s.leading_squeezing, s.lambdas, s.mode_center, s.mode_width);
    return SchmidtSpectrum(*s.G, s.lambdas, s.mode_center, s.mode_width);
  } catch (const Error& e) {
    throw ConfigError("seed", e.what());
  }
}

inline GateConfig build_gate(const GateSection& g) {
  std::vector<cplx> mu;
  for (std::size_t i = 0; i < g.orders.size(); ++i) mu.push_back(std::polar(std::sqrt(g.weights[i]), g.phases[i]));
  try {
    return GateConfig(g.theta, mu, g.orders);
  } catch (const Error& e) {
    throw ConfigError("gate", e.what());
  }
}

namespace detail {

inline const SeedSection& need_seed(const ScenarioConfig& c) {
  if (!c.seed) throw ConfigError("seed", "required for this command");
  return *c.seed;
}

inline const GateSection& need_gate(const ScenarioConfig& c) {
  if (!c.gate) throw ConfigError("gate", "required for this command");
  return *c.gate;
}

inline void check_orders(const GateSection& g, const SeedSection& s) {
  for (std::size_t i = 0; i < g.orders.size(); ++i)
    if (static_cast<std::size_t>(g.orders[i]) >= s.count)
      throw ConfigError(at_index("gate.orders", i), "order exceeds the number of Schmidt modes in the seed");
}

inline std::vector<ModeFunction> build_modes(const ScenarioConfig& c, const SchmidtSpectrum& sp) {
  try {
    return schmidt_mode_set(sp, c.grid.grid(), c.convention);
  } catch (const Error& e) {
    throw ConfigError("grid", e.what());
  }
}

}  // namespace detail

/// Checks everything `cmd` needs; throws ConfigError naming the field.
inline void check_requirements(Command cmd, const ScenarioConfig& c) {
  using namespace detail;
  const auto known = artifacts_of(cmd);
  for (std::size_t i = 0; i < c.outputs.size(); ++i)
    if (std::find(known.begin(), known.end(), c.outputs[i]) == known.end())
      throw ConfigError(at_index("outputs", i), "unknown artifact \"" + c.outputs[i] + "\" for " + command_name(cmd));
  switch (cmd) {
    case Command::Validate: {
      if (c.command) {
        check_requirements(*c.command, c);
        return;
      }
      if (c.seed) (void)build_spectrum(*c.seed);
      if (c.seed && c.gate) check_orders(*c.gate, *c.seed);
      if (c.seed) (void)build_modes(c, build_spectrum(*c.seed));
      return;
    }
    case Command::Block:
    case Command::Swap:
    case Command::Spectrum:
    case Command::ThetaSweep:
    case Command::Twin:
    case Command::PhaseSweep: {
      const auto& s = need_seed(c);
      const auto& g = need_gate(c);
      check_orders(g, s);
      const auto sp = build_spectrum(s);
      (void)build_gate(g);
      if (cmd != Command::ThetaSweep && cmd != Command::Twin) (void)build_modes(c, sp);
      if (cmd == Command::Block && g.orders.size() != 1)
        throw ConfigError("gate.orders", "block matches exactly one Schmidt mode");
      if (cmd == Command::Swap && g.orders.size() != 2)
        throw ConfigError("gate.orders", "swap matches exactly two Schmidt modes");
      if (cmd == Command::PhaseSweep) {
        if (g.orders.size() != 2) throw ConfigError("gate.orders", "phase-sweep needs exactly two matched modes");
        if (!c.sweep || c.sweep->axis != "phase") throw ConfigError("sweep", "phase-sweep needs a sweep with axis \"phase\"");
      }
      if (cmd == Command::ThetaSweep && (!c.sweep || c.sweep->axis != "theta"))
        throw ConfigError("sweep", "theta-sweep needs a sweep with axis \"theta\"");
      if (cmd == Command::Twin) {
        if (s.kind != SeedKind::Twin) throw ConfigError("seed.type", "twin needs a \"twin\" seed");
        if (c.sweep && c.sweep->axis != "theta") throw ConfigError("sweep.axis", "twin sweeps only theta");
      }
      return;
    }
    case Command::Select: {
      const auto& s = need_seed(c);
      if (s.kind != SeedKind::Single) throw ConfigError("seed.type", "mode selection needs a \"single\" seed");
      if (!c.select) throw ConfigError("select", "required for this command");
      if (static_cast<std::size_t>(c.select->order) >= s.count)
        throw ConfigError("select.order", "order exceeds the number of Schmidt modes in the seed");
      if (c.gate) throw ConfigError("gate", "not used by select; the cascade gates are fixed by select.thetas");
      (void)build_spectrum(s);
      return;
    }
    case Command::Jsa:
      if (!c.jsa) throw ConfigError("jsa", "required for this command");
      return;
    case Command::Oracle:
      if (!c.oracle) throw ConfigError("oracle", "required for this command");
      return;
  }
}

// ---------------------------------------------------------------------------
// Runners.

struct InvariantLog {
  json checks = json::object();
  std::vector<std::string> failures;

  void check(const std::string& name, double value, double limit) {
    checks[name] = {{"value", value}, {"limit", limit}};
    if (!(value <= limit)) failures.push_back(name + " = " + io::format_number(value) + " exceeds " + io::format_number(limit));
  }
  void require(const std::string& name, bool ok) {
    checks[name] = ok;
    if (!ok) failures.push_back(name + " failed");
  }
};

struct RunOutput {
  Command command = Command::Validate;
  std::vector<io::Table> tables;
  json summary = json::object();
  InvariantLog invariants;
};

namespace detail {

inline GaussianMoments seed_state(const SeedSection& s, const SchmidtSpectrum& sp) {
  return s.kind == SeedKind::Twin ? twin_beam_state(sp, true) : squeezed_vacuum_state(sp, true);
}

inline std::vector<std::size_t> gate_map(const GaussianMoments& st, const GateConfig& g) {
  std::vector<std::size_t> map{0};
  for (int n : g.matched_orders) map.push_back(st.index_of(ModeLabel::signal(n)));
  return map;
}

inline double total_signal_photons(const GaussianMoments& st) {
  double acc = 0.0;
  for (std::size_t i = 0; i < st.mode_count(); ++i)
    if (st.labels()[i].kind == ModeKind::Signal) acc += photon_number(st, i);
  return acc;
}

inline void check_conservation(InvariantLog& log, const std::string& prefix, const GaussianMoments& in,
                               const GaussianMoments& out, const GateConfig& g, std::span<const std::size_t> map) {
  const auto rep = conservation_report(in, out, g, map);
  double scale = 1.0;
  for (std::size_t k = 0; k < map.size(); ++k) scale += photon_number(in, map[k]);
  log.check(prefix + "conservation_residual", rep.max_abs() / scale, 1e-9);
  log.check(prefix + "symplectic_defect", std::max(0.0, 0.5 - out.min_symplectic_eigenvalue()) / scale, 1e-9);
}

inline json number_array(std::span<const double> v) { return json(std::vector<double>(v.begin(), v.end())); }

}  // namespace detail

/// block / swap / spectrum: one gate, weight table, spectra and observables.
inline RunOutput run_gate(Command cmd, const ScenarioConfig& c) {
  using namespace detail;
  const auto sp = build_spectrum(*c.seed);
  const auto gate = build_gate(*c.gate);
  const auto modes = build_modes(c, sp);
  const GaussianMoments in = seed_state(*c.seed, sp);
  const auto map = gate_map(in, gate);
  const GaussianMoments out = apply_gate(in, multimode_gate(gate), map);

  RunOutput r;
  r.command = cmd;
  check_conservation(r.invariants, "", in, out, gate, map);

  const double n_total = total_signal_photons(in);
  const bool dark = !(n_total > 0.0);
  const auto norm = dark ? SpectralNormalization::None : SpectralNormalization::ByInputPhotons;
  // Weight table.
  io::Table weights{"weights", {"mode", "order", "lambda_in", "lambda_out", "N_in", "N_out"}, {}};
  std::vector<double> lam_out;
  if (!dark) {
    for (const auto& row : weight_redistribution(in, out)) {
      const std::size_t i = in.index_of(row.label);
      weights.add_row({row.label.to_string(), static_cast<double>(row.label.order), row.lambda_in, row.lambda_out,
                       photon_number(in, i), photon_number(out, i)});
      lam_out.push_back(row.lambda_out);
    }
  }
  r.tables.push_back(std::move(weights));

  // Spectra, normalized by the total input signal photon number.
  const auto s_in = signal_spectral_density(in, modes, norm, n_total);
  const auto s_out = signal_spectral_density(out, modes, norm, n_total);
  const bool two = gate.matched_count() == 2;
  std::vector<std::string> cols{"omega [mode widths]", "N_in(omega)/N_in", "N_out(omega)/N_in"};
  if (two) {
    cols.push_back("diagonal_out/N_in");
    cols.push_back("interference_out/N_in");
  }
  io::Table spec{"spectrum", cols, {}};
  std::optional<SpectralDensity> diag, inter;
  if (two) {
    diag = diagonal_density(out, modes);
    inter = interference_term(gate, sp, modes);
  }
  const double scale = dark ? 1.0 : 1.0 / n_total;
  double decomposition_defect = 0.0;
  const double peak_out = std::max(s_out.max(), 1e-300);
  for (std::size_t i = 0; i < s_in.grid.count(); ++i) {
    std::vector<io::Cell> row{s_in.grid.at(i), s_in.values[i], s_out.values[i]};
    if (two) {
      const double d = diag->values[i] * scale, t = inter->values[i] * scale;
      row.push_back(d);
      row.push_back(t);
      decomposition_defect = std::max(decomposition_defect, std::abs(s_out.values[i] - d - t) / peak_out);
    }
    spec.add_row(std::move(row));
  }
  r.tables.push_back(std::move(spec));

  // Per-mode observables.
  io::Table obs{"observables", {"mode", "N_in", "N_out", "dX_out", "dP_out", "var_N_out"}, {}};
  for (std::size_t i = 0; i < out.mode_count(); ++i) {
    const auto q = quadrature_variances(out, i);
    obs.add_row({out.labels()[i].to_string(), photon_number(in, i), photon_number(out, i), q.x, q.p,
                 photon_number_variance(out, i)});
  }
  r.tables.push_back(std::move(obs));

  // Invariants and structural summary.
  double min_value = 0.0;
  for (double v : s_out.values) min_value = std::min(min_value, v);
  r.invariants.check("spectrum_negativity", std::max(0.0, -min_value), 1e-10);
  if (!dark) {
    const double n_out = total_signal_photons(out);
    const double integral = s_out.integral() * n_total;
    r.invariants.check("spectrum_integral_rel_defect", std::abs(integral - n_out) / std::max(n_out, 1e-300), 1e-6);
  }
  if (two) r.invariants.check("spectral_decomposition_defect", decomposition_defect, 1e-8);

  json& s = r.summary;
  s["G"] = sp.G();
  s["theta"] = gate.theta;
  s["matched_orders"] = gate.matched_orders;
  s["input_signal_photons"] = n_total;
  s["output_signal_photons"] = total_signal_photons(out);
  s["sf_photons_out"] = photon_number(out, 0);
  if (!lam_out.empty()) {
    s["lambda_out"] = number_array(lam_out);
    s["lambda_out_argmax"] = std::distance(lam_out.begin(), std::max_element(lam_out.begin(), lam_out.end()));
  }
  const std::size_t mid = s_out.grid.count() / 2;
  if (mid >= 2 && mid + 2 < s_out.grid.count()) {
    // Central sample(s) below both neighbours.
    const double centre = s_out.grid.count() % 2 ? s_out.values[mid] : std::max(s_out.values[mid - 1], s_out.values[mid]);
    const std::size_t left = s_out.grid.count() % 2 ? mid - 1 : mid - 2;
    const bool minimum = centre < s_out.values[left] && centre < s_out.values[mid + 1];
    const double centre_in = s_in.grid.count() % 2 ? s_in.values[mid] : std::max(s_in.values[mid - 1], s_in.values[mid]);
    const bool maximum_in = centre_in >= s_in.values[left] && centre_in >= s_in.values[mid + 1];
    s["central_local_minimum_out"] = minimum;
    s["central_local_maximum_in"] = maximum_in;
  }
  return r;
}

/// Fig. 3 style map: normalized output spectra against the total phase.
inline RunOutput run_phase_sweep(const ScenarioConfig& c) {
  const auto sp = build_spectrum(*c.seed);
  const auto& g = *c.gate;
  const double w_sum = g.weights[0] + g.weights[1];
  PhaseSweepScenario sc{sp, g.orders[0], g.orders[1], g.theta, g.weights[0] / w_sum, c.convention, c.grid.grid()};
  const auto phases = c.sweep->values();
  const PhaseMap map = phase_sweep(sc, phases, c.worker_count());

  RunOutput r;
  r.command = Command::PhaseSweep;
  std::vector<std::string> cols{"delta_phi [rad]"};
  for (std::size_t i = 0; i < map.grid.count(); ++i) cols.push_back("omega=" + io::format_number(map.grid.at(i)));
  io::Table t{"phase_map", cols, {}};
  double min_value = 0.0;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    std::vector<io::Cell> row{phases[k]};
    for (double v : map.rows[k]) {
      row.push_back(v);
      min_value = std::min(min_value, v);
    }
    t.add_row(std::move(row));
  }
  r.tables.push_back(std::move(t));
  r.invariants.check("spectrum_negativity", std::max(0.0, -min_value), 1e-10);
  r.summary["orders"] = g.orders;
  r.summary["theta"] = g.theta;
  r.summary["phase_points"] = phases.size();
  r.summary["normalization"] = "by_max";
  return r;
}

/// Photon numbers and quadratures against the beamsplitter angle.
inline RunOutput run_theta_sweep(const ScenarioConfig& c) {
  using namespace detail;
  const auto sp = build_spectrum(*c.seed);
  const auto base = build_gate(*c.gate);
  const GaussianMoments in = seed_state(*c.seed, sp);
  const auto map = gate_map(in, base);
  const auto thetas = c.sweep->values();
  const std::size_t m = base.matched_count();

  std::vector<std::string> cols{"theta [rad]", "N_SF", "dX_SF", "dP_SF", "N_signal_mode"};
  for (int n : base.matched_orders) {
    const auto l = ModeLabel::signal(n).to_string();
    cols.push_back("N_" + l);
    cols.push_back("exchanged_fraction_" + l);
    cols.push_back("dX_" + l);
    cols.push_back("dP_" + l);
  }
  if (m == 1) cols.push_back("nrf_signal_SF");

  struct Row {
    std::vector<io::Cell> cells;
    double conservation = 0.0;
  };
  const auto rows = parallel_map(
      thetas.size(),
      [&](std::size_t k) {
        GateConfig g = base;
        g.theta = thetas[k];
        const auto out = apply_gate(in, multimode_gate(g), map);
        const auto rep = conservation_report(in, out, g, map);
        Row row;
        const auto qs = quadrature_variances(out, 0);
        row.cells = {thetas[k], photon_number(out, 0), qs.x, qs.p, rep.signal_out};
        for (std::size_t i = 0; i < m; ++i) {
          const double n_in = photon_number(in, map[i + 1]);
          const double n_out = photon_number(out, map[i + 1]);
          const double w = std::norm(g.projections[i]);
          const auto q = quadrature_variances(out, map[i + 1]);
          row.cells.push_back(n_out);
          row.cells.push_back(n_in > 0.0 ? (n_out - (1.0 - w) * n_in) / n_in : std::nan(""));
          row.cells.push_back(q.x);
          row.cells.push_back(q.p);
        }
        if (m == 1) {
          const double tot = photon_number(out, 0) + photon_number(out, map[1]);
          row.cells.push_back(tot > 0.0 ? nrf(out, map[1], 0) : std::nan(""));
        }
        double scale = 1.0;
        for (auto idx : map) scale += photon_number(in, idx);
        row.conservation = rep.max_abs() / scale;
        return row;
      },
      c.worker_count());

  RunOutput r;
  r.command = Command::ThetaSweep;
  io::Table t{"theta_sweep", cols, {}};
  double worst = 0.0;
  for (const auto& row : rows) {
    t.add_row(row.cells);
    worst = std::max(worst, row.conservation);
  }
  r.tables.push_back(std::move(t));
  r.invariants.check("conservation_residual", worst, 1e-9);
  r.summary["orders"] = base.matched_orders;
  r.summary["theta_points"] = thetas.size();
  r.summary["exchanged_fraction"] =
      "(N_i^out - (1 - |mu_i|^2) N_i^in) / N_i^in, the exchange part of the matched-mode photon number";
  return r;
}

/// Twin-beam correlations between every matched signal mode and every
/// idler of a matched order, along theta.
inline RunOutput run_twin(const ScenarioConfig& c) {
  using namespace detail;
  const auto sp = build_spectrum(*c.seed);
  const auto base = build_gate(*c.gate);
  const GaussianMoments in = seed_state(*c.seed, sp);
  const auto map = gate_map(in, base);
  const std::vector<double> thetas = c.sweep ? c.sweep->values() : std::vector<double>{base.theta};

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::string> cols{"theta [rad]", "N_SF"};
  for (int a : base.matched_orders)
    for (int b : base.matched_orders) {
      pairs.emplace_back(in.index_of(ModeLabel::signal(a)), in.index_of(ModeLabel::idler(b)));
      const std::string tag = ModeLabel::signal(a).to_string() + "," + ModeLabel::idler(b).to_string();
      cols.push_back("var_diff[" + tag + "]");
      cols.push_back("nrf[" + tag + "]");
    }
  const auto rows = parallel_map(
      thetas.size(),
      [&](std::size_t k) {
        GateConfig g = base;
        g.theta = thetas[k];
        const auto out = apply_gate(in, multimode_gate(g), map);
        std::vector<io::Cell> cells{thetas[k], photon_number(out, 0)};
        for (const auto& [a, b] : pairs) {
          cells.push_back(number_difference_variance(out, a, b));
          const double tot = photon_number(out, a) + photon_number(out, b);
          cells.push_back(tot > 0.0 ? nrf(out, a, b) : std::nan(""));
        }
        return cells;
      },
      c.worker_count());

  RunOutput r;
  r.command = Command::Twin;
  io::Table t{"twin", cols, {}};
  for (const auto& row : rows) t.add_row(row);
  r.tables.push_back(std::move(t));
  double pre = 0.0;
  for (int n : base.matched_orders)
    pre = std::max(pre, number_difference_variance(in, in.index_of(ModeLabel::signal(n)),
                                                   in.index_of(ModeLabel::idler(n))));
  r.invariants.check("input_pair_difference_variance", pre, 1e-9);
  GateConfig g = base;
  const auto out = apply_gate(in, multimode_gate(g), map);
  check_conservation(r.invariants, "", in, out, g, map);
  r.summary["orders"] = base.matched_orders;
  r.summary["theta_points"] = thetas.size();
  return r;
}

/// Two full-conversion gates: the matched Schmidt mode is moved into the SF
/// channel, which then seeds a second gate with vacuum signal.
struct CascadeResult {
  GaussianMoments after_first;
  GaussianMoments after_second;  // layout [SF, selected signal]
  GaussianMoments direct;        // single-mode squeezed state of the selected mode
  double max_deviation = 0.0;
};

inline CascadeResult select_cascade(const SchmidtSpectrum& sp, int order, double theta1 = 0.5 * kPi,
                                    double theta2 = 0.5 * kPi) {
  if (std::abs(theta1 - 0.5 * kPi) > 1e-12 || std::abs(theta2 - 0.5 * kPi) > 1e-12)
    throw DomainError("select_cascade: both gates must run at full conversion theta = pi/2");
  const GaussianMoments in = squeezed_vacuum_state(sp, true);
  const std::size_t idx = in.index_of(ModeLabel::signal(order));
  const std::vector<std::size_t> map1{0, idx};
  const GaussianMoments first = apply_gate(in, single_mode_gate(theta1), map1);
  // Second gate: the SF output seeds the SF channel, the signal port is dark.
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2, 2), s = Eigen::MatrixXcd::Zero(2, 2);
  m(0, 0) = first.normal(0, 0);
  s(0, 0) = first.anomalous(0, 0);
  const auto w = static_cast<Eigen::Index>(first.mode_count());
  Eigen::MatrixXd v = 0.5 * Eigen::MatrixXd::Identity(4, 4);
  v(0, 0) = first.quadrature_covariance()(0, 0);
  v(0, 2) = first.quadrature_covariance()(0, w);
  v(2, 0) = first.quadrature_covariance()(w, 0);
  v(2, 2) = first.quadrature_covariance()(w, w);
  const GaussianMoments seed2(std::move(m), std::move(s), {ModeLabel::sum_frequency(), ModeLabel::signal(order)},
                              std::move(v));
  const std::vector<std::size_t> map2{0, 1};
  const GaussianMoments second = apply_gate(seed2, single_mode_gate(theta2), map2);
  const std::vector<double> g{sp.squeezing(static_cast<std::size_t>(order))};
  GaussianMoments direct = single_mode_squeezed_state(g, true);
  direct = GaussianMoments(direct.normal(), direct.anomalous(), {ModeLabel::sum_frequency(), ModeLabel::signal(order)},
                           direct.quadrature_covariance());
  const double dev = std::max((second.normal() - direct.normal()).cwiseAbs().maxCoeff(),
                              (second.anomalous() - direct.anomalous()).cwiseAbs().maxCoeff());
  return {first, second, direct, dev};
}

inline RunOutput run_select(const ScenarioConfig& c) {
  const auto sp = build_spectrum(*c.seed);
  const auto res = select_cascade(sp, c.select->order, c.select->thetas[0], c.select->thetas[1]);
  RunOutput r;
  r.command = Command::Select;
  io::Table t{"select", {"mode", "N", "dX", "dP", "N_direct", "dX_direct", "dP_direct"}, {}};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto q = quadrature_variances(res.after_second, i);
    const auto d = quadrature_variances(res.direct, i);
    t.add_row({res.after_second.labels()[i].to_string(), photon_number(res.after_second, i), q.x, q.p,
               photon_number(res.direct, i), d.x, d.p});
  }
  r.tables.push_back(std::move(t));
  const double scale = 1.0 + photon_number(res.direct, 1);
  r.invariants.check("cascade_deviation", res.max_deviation / scale, 1e-9);
  const auto qs = quadrature_variances(res.after_second, 1);
  const double g = sp.squeezing(static_cast<std::size_t>(c.select->order));
  r.invariants.check("selected_quadrature_deviation",
                     std::max(std::abs(qs.x - 0.5 * std::exp(2.0 * g)), std::abs(qs.p - 0.5 * std::exp(-2.0 * g))) /
                         scale,
                     1e-9);
  r.summary["selected_order"] = c.select->order;
  r.summary["squeezing"] = g;
  r.summary["photons"] = photon_number(res.after_second, 1);
  r.summary["max_moment_deviation"] = res.max_deviation;
  // Photons left behind by the first gate in the other Schmidt modes.
  double leftover = 0.0;
  for (std::size_t i = 1; i < res.after_first.mode_count(); ++i)
    if (res.after_first.labels()[i] != ModeLabel::signal(c.select->order)) leftover += photon_number(res.after_first, i);
  r.summary["unselected_photons_after_first_gate"] = leftover;
  return r;
}

inline RunOutput run_jsa(const ScenarioConfig& c) {
  const auto& s = *c.jsa;
  struct Job {
    double ratio;
    JsaApproximation approx;
  };
  std::vector<Job> jobs;
  for (double ratio : s.ratios)
    for (auto a : s.approximations) jobs.push_back({ratio, a});
  const auto results = parallel_map(
      jobs.size(),
      [&](std::size_t k) {
        const auto disp = DispersionParams::from_ratio(jobs[k].ratio, s.pump_width);
        const auto grids = default_jsa_grids(disp, s.signal_points, s.output_points, s.output_widths);
        const auto pump = gaussian_pump(disp, grids.signal, grids.output);
        const auto jsa = two_photon_amplitude(pump, disp, grids.signal, grids.output, jobs[k].approx);
        return jsa_singular_values(jsa);
      },
      c.worker_count());

  RunOutput r;
  r.command = Command::Jsa;
  io::Table sweep{"jsa_sweep", {"ratio sigma/dw", "approximation", "leading_weight", "schmidt_number", "purity"}, {}};
  io::Table spec{"jsa_spectrum", {"ratio sigma/dw", "approximation", "k", "weight"}, {}};
  double worst_norm = 0.0;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const auto& sv = results[k];
    double s2 = 0.0, s4 = 0.0;
    for (double v : sv) {
      s2 += v * v;
      s4 += v * v * v * v;
    }
    worst_norm = std::max(worst_norm, std::abs(s2 - 1.0));
    const std::string name = jobs[k].approx == JsaApproximation::Gaussian ? "gaussian" : "sinc";
    sweep.add_row({jobs[k].ratio, name, sv.front() * sv.front(), 1.0 / s4, s4});
    for (std::size_t i = 0; i < std::min(s.reported_modes, sv.size()); ++i)
      spec.add_row({jobs[k].ratio, name, static_cast<double>(i), sv[i] * sv[i]});
  }
  r.tables.push_back(std::move(sweep));
  r.tables.push_back(std::move(spec));
  r.invariants.check("schmidt_weight_sum_defect", worst_norm, 1e-9);
  r.summary["ratios"] = s.ratios;
  return r;
}

/// Oracle scenarios at squeezing g: one matched mode at oracle.theta; two
/// matched modes swapped at theta = pi; twin beams with both signals swapped.
inline std::vector<fock::OracleScenario> oracle_scenarios(const OracleSection& o) {
  std::vector<fock::OracleScenario> out;
  const cplx h(std::sqrt(0.5), 0.0);
  for (const auto& name : o.scenarios) {
    fock::OracleScenario sc;
    sc.name = name;
    sc.cutoff = o.cutoff;
    if (name == "single") {
      sc.gains = {o.g};
      sc.theta = o.theta;
      sc.projections = {1.0};
    } else if (name == "swap") {
      sc.gains = {o.g, 0.7 * o.g};
      sc.theta = kPi;
      sc.projections = {h, h * std::polar(1.0, kPi / 3.0)};
    } else {
      sc.gains = {o.g, 0.7 * o.g};
      sc.twin = true;
      sc.theta = kPi;
      sc.projections = {h, h};
    }
    out.push_back(std::move(sc));
  }
  return out;
}

inline RunOutput run_oracle(const ScenarioConfig& c) {
  RunOutput r;
  r.command = Command::Oracle;
  io::Table t{"oracle", {"scenario", "quantity", "oracle", "gaussian", "abs_dev", "rel_dev", "pass"}, {}};
  json reports = json::array();
  for (const auto& sc : oracle_scenarios(*c.oracle)) {
    const auto rep = fock::compare_with_gaussian(sc);
    for (const auto& row : rep.rows)
      t.add_row({rep.scenario, row.quantity, row.oracle, row.gaussian, row.abs_dev, row.rel_dev,
                 std::string(row.pass ? "yes" : "no")});
    reports.push_back({{"scenario", rep.scenario},
                       {"dimension", rep.dimension},
                       {"leak", rep.leak},
                       {"max_rel_dev", rep.max_rel_dev()},
                       {"max_abs_dev", rep.max_abs_dev()},
                       {"seconds", rep.elapsed_seconds},
                       {"passed", rep.passed}});
    r.invariants.require("oracle_agreement[" + rep.scenario + "]", rep.passed);
  }
  r.tables.push_back(std::move(t));
  r.summary["scenarios"] = std::move(reports);
  r.summary["cutoff"] = c.oracle->cutoff;
  r.summary["g"] = c.oracle->g;
  return r;
}

/// Runs `cmd`. Precondition failures surface as ConfigError; numerical
/// failures are reported in RunOutput::invariants.
inline RunOutput run(Command cmd, const ScenarioConfig& c) {
  check_requirements(cmd, c);
  switch (cmd) {
    case Command::Block:
    case Command::Swap:
    case Command::Spectrum: return run_gate(cmd, c);
    case Command::PhaseSweep: return run_phase_sweep(c);
    case Command::ThetaSweep: return run_theta_sweep(c);
    case Command::Twin: return run_twin(c);
    case Command::Select: return run_select(c);
    case Command::Jsa: return run_jsa(c);
    case Command::Oracle: return run_oracle(c);
    case Command::Validate: {
      RunOutput r;
      r.command = cmd;
      r.summary["valid"] = true;
      if (c.command) r.summary["validated_for"] = command_name(*c.command);
      return r;
    }
  }
  throw ConfigError("command", "unsupported command");
}

/// Writes the requested tables, summary.json and manifest.json into `dir`.
/// Returns the manifest.
inline json write_outputs(const RunOutput& r, const ScenarioConfig& c, const std::filesystem::path& dir,
                          io::Format format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw io::IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  json files = json::array();
  auto emit = [&](const std::string& file, const std::string& content) {
    io::write_file(dir / file, content);
    files.push_back({{"path", file}, {"bytes", content.size()}, {"fnv1a64", io::hex64(io::fnv1a64(content))}});
  };
  for (const auto& t : r.tables) {
    if (!c.outputs.empty() && std::find(c.outputs.begin(), c.outputs.end(), t.name) == c.outputs.end()) continue;
    emit(t.name + io::extension(format), io::render(t, format));
  }
  json summary = r.summary;
  summary["invariants"] = r.invariants.checks;
  emit("summary.json", summary.dump(2) + "\n");
  json manifest{{"tool", "pulsegate"},
                {"version", kToolVersion},
                {"schema_version", kSchemaVersion},
                {"command", command_name(r.command)},
                {"name", c.name},
                {"config_hash", "fnv1a64:" + c.hash()},
                {"format", format == io::Format::Csv ? "csv" : "json"},
                {"files", files},
                {"status", r.invariants.failures.empty() ? "ok" : "invariant_violation"},
                {"violations", r.invariants.failures}};
  io::write_file(dir / "manifest.json", manifest.dump(2) + "\n");
  return manifest;
}

}  // namespace pulsegate::scenario
