// Copyright 2026 The paramosc Authors
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

#include "paramosc/format.hpp"
#include "paramosc/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "paramosc/protocols.hpp"

namespace paramosc {

std::string_view to_string(ConfigErrorKind kind) {
  switch (kind) {
    case ConfigErrorKind::syntax:
      return "syntax";
    case ConfigErrorKind::unknown_section:
      return "unknown_section";
    case ConfigErrorKind::unknown_key:
      return "unknown_key";
    case ConfigErrorKind::duplicate_key:
      return "duplicate_key";
    case ConfigErrorKind::unit:
      return "unit";
    case ConfigErrorKind::value:
      return "value";
  }
  return "unknown";
}

namespace {

std::string located(const std::string& message, int line, int column) {
  if (line <= 0) return message;
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message;
}

}  // namespace

ConfigError::ConfigError(ConfigErrorKind kind, std::string message, int line, int column)
    : std::runtime_error(located(message, line, column)), kind_(kind), line_(line), column_(column) {}

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::modes:
      return "modes";
    case Experiment::oscillate:
      return "oscillate";
    case Experiment::crossing:
      return "crossing";
    case Experiment::parity:
      return "parity";
    case Experiment::wigner:
      return "wigner";
    case Experiment::converge:
      return "converge";
  }
  return "unknown";
}

std::optional<Experiment> experiment_from_string(std::string_view s) {
  for (Experiment e : {Experiment::modes, Experiment::oscillate, Experiment::crossing, Experiment::parity,
                       Experiment::wigner, Experiment::converge}) {
    if (to_string(e) == s) return e;
  }
  return std::nullopt;
}

namespace {

// ---------------------------------------------------------------------------
// Lexical helpers.

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string format_number(double v) { return format_shortest(v); }

enum class Dimension { none, frequency, time };

struct UnitSpec {
  std::string_view name;
  Dimension dimension;
  int exponent;
};

constexpr std::array<UnitSpec, 6> kUnits{{
    {"Hz", Dimension::frequency, 0},
    {"kHz", Dimension::frequency, 3},
    {"MHz", Dimension::frequency, 6},
    {"s", Dimension::time, 0},
    {"ms", Dimension::time, -3},
    {"us", Dimension::time, -6},
}};

std::string_view dimension_name(Dimension d) {
  switch (d) {
    case Dimension::none:
      return "dimensionless";
    case Dimension::frequency:
      return "frequency (Hz, kHz, MHz)";
    case Dimension::time:
      return "time (s, ms, us)";
  }
  return "";
}

// A value token located in the source for error reporting.
struct Token {
  std::string_view text;
  int line;
  int column;

  [[noreturn]] void fail(ConfigErrorKind kind, const std::string& message) const {
    throw ConfigError(kind, message, line, column);
  }
};

// Splits "<number>[ ]<unit>" and scales exactly by building a decimal literal.
double parse_quantity(const Token& tok, Dimension dimension) {
  const std::string_view s = tok.text;
  std::size_t end = 0;
  {
    double probe = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), probe);
    if (ec != std::errc()) tok.fail(ConfigErrorKind::value, "expected a number, got '" + std::string(s) + "'");
    end = static_cast<std::size_t>(ptr - s.data());
  }
  const std::string_view number = s.substr(0, end);
  const std::string_view unit = trim(s.substr(end));
  int exponent = 0;
  if (dimension == Dimension::none) {
    if (!unit.empty()) tok.fail(ConfigErrorKind::unit, "unexpected unit '" + std::string(unit) + "' on a dimensionless value");
  } else {
    if (unit.empty()) tok.fail(ConfigErrorKind::unit, "missing unit, expected " + std::string(dimension_name(dimension)));
    const auto it = std::find_if(kUnits.begin(), kUnits.end(), [&](const UnitSpec& u) { return u.name == unit; });
    if (it == kUnits.end()) tok.fail(ConfigErrorKind::unit, "unknown unit '" + std::string(unit) + "'");
    if (it->dimension != dimension) {
      tok.fail(ConfigErrorKind::unit, "unit '" + std::string(unit) + "' is not a " + std::string(dimension_name(dimension)));
    }
    exponent = it->exponent;
  }
  std::string literal(number);
  if (literal.find_first_of("eE") != std::string::npos) {
    double v = 0.0;
    std::from_chars(literal.data(), literal.data() + literal.size(), v);
    v = exponent == 0 ? v : v * std::pow(10.0, exponent);
    if (!std::isfinite(v)) tok.fail(ConfigErrorKind::value, "value is not finite");
    return v;
  }
  literal += "e" + std::to_string(exponent);
  double v = 0.0;
  std::from_chars(literal.data(), literal.data() + literal.size(), v);
  if (!std::isfinite(v)) tok.fail(ConfigErrorKind::value, "value is not finite");
  return v;
}

long long parse_integer(const Token& tok) {
  long long v = 0;
  const std::string_view s = tok.text;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    tok.fail(ConfigErrorKind::value, "expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

int parse_int_at_least(const Token& tok, long long minimum) {
  const long long v = parse_integer(tok);
  if (v < minimum || v > 1'000'000'000) {
    tok.fail(ConfigErrorKind::value, "integer must be at least " + std::to_string(minimum));
  }
  return static_cast<int>(v);
}

double parse_positive(const Token& tok, Dimension d) {
  const double v = parse_quantity(tok, d);
  if (!(v > 0.0)) tok.fail(ConfigErrorKind::value, "value must be positive");
  return v;
}

template <typename E>
E parse_choice(const Token& tok, std::initializer_list<std::pair<std::string_view, E>> choices) {
  std::string allowed;
  for (const auto& [name, value] : choices) {
    if (tok.text == name) return value;
    allowed += allowed.empty() ? "" : ", ";
    allowed += name;
  }
  tok.fail(ConfigErrorKind::value, "'" + std::string(tok.text) + "' is not one of: " + allowed);
}

template <typename E>
std::string_view choice_name(E value, std::initializer_list<std::pair<std::string_view, E>> choices) {
  for (const auto& [name, v] : choices) {
    if (v == value) return name;
  }
  return "";
}

constexpr int kMinLevels = kGuardBand + 2;

std::optional<int> parse_levels(const Token& tok) {
  if (tok.text == "auto") return std::nullopt;
  return parse_int_at_least(tok, kMinLevels);
}

std::string format_levels(const std::optional<int>& v) { return v ? std::to_string(*v) : "auto"; }

std::vector<Token> split_list(const Token& tok) {
  std::vector<Token> items;
  std::size_t start = 0;
  while (start <= tok.text.size()) {
    std::size_t comma = tok.text.find(',', start);
    if (comma == std::string_view::npos) comma = tok.text.size();
    const std::string_view raw = tok.text.substr(start, comma - start);
    const std::string_view item = trim(raw);
    const auto offset = static_cast<int>(start + (item.empty() ? 0 : raw.find(item[0])));
    if (item.empty()) Token{tok.text, tok.line, tok.column + offset}.fail(ConfigErrorKind::syntax, "empty list item");
    items.push_back({item, tok.line, tok.column + offset});
    start = comma + 1;
  }
  return items;
}

std::string format_time(double seconds) { return format_number(seconds) + " s"; }
std::string format_frequency(double hz) { return format_number(hz) + " Hz"; }

// ---------------------------------------------------------------------------
// Key table: one row per accepted key, in canonical order.

struct KeySpec {
  std::string_view section;
  std::string_view key;
  std::function<void(RunConfig&, const Token&)> parse;
  std::function<std::string(const RunConfig&)> format;
};

const std::initializer_list<std::pair<std::string_view, Experiment>> kExperimentChoices{
    {"modes", Experiment::modes},   {"oscillate", Experiment::oscillate}, {"crossing", Experiment::crossing},
    {"parity", Experiment::parity}, {"wigner", Experiment::wigner},       {"converge", Experiment::converge},
};
const std::initializer_list<std::pair<std::string_view, CouplingEvaluation>> kCouplingChoices{
    {"resonance", CouplingEvaluation::resonance}, {"bare", CouplingEvaluation::bare}};
const std::initializer_list<std::pair<std::string_view, ParkingBasis>> kBasisChoices{
    {"dressed", ParkingBasis::dressed}, {"bare", ParkingBasis::bare}};
const std::initializer_list<std::pair<std::string_view, SweepKind>> kSweepChoices{
    {"adiabatic", SweepKind::adiabatic}, {"diabatic", SweepKind::diabatic}};
const std::initializer_list<std::pair<std::string_view, WignerMode>> kWignerChoices{
    {"grid", WignerMode::grid}, {"radial", WignerMode::radial}};
const std::initializer_list<std::pair<std::string_view, std::string>> kSpeciesChoices{{"yb171", "yb171"}};

const std::vector<KeySpec>& key_table() {
  static const std::vector<KeySpec> table{
      {"run", "experiment",
       [](RunConfig& c, const Token& t) { c.run.experiment = parse_choice(t, kExperimentChoices); },
       [](const RunConfig& c) { return std::string(to_string(c.run.experiment)); }},
      {"run", "output",
       [](RunConfig& c, const Token& t) {
         if (t.text.empty()) t.fail(ConfigErrorKind::value, "output path is empty");
         c.run.output = std::string(t.text);
       },
       [](const RunConfig& c) { return c.run.output; }},
      {"run", "threads", [](RunConfig& c, const Token& t) { c.run.threads = parse_int_at_least(t, 0); },
       [](const RunConfig& c) { return std::to_string(c.run.threads); }},

      {"trap", "species", [](RunConfig& c, const Token& t) { c.trap.species = parse_choice(t, kSpeciesChoices); },
       [](const RunConfig& c) { return c.trap.species; }},
      {"trap", "omega_x", [](RunConfig& c, const Token& t) { c.trap.fx = parse_positive(t, Dimension::frequency); },
       [](const RunConfig& c) { return format_frequency(c.trap.fx); }},
      {"trap", "omega_y", [](RunConfig& c, const Token& t) { c.trap.fy = parse_positive(t, Dimension::frequency); },
       [](const RunConfig& c) { return format_frequency(c.trap.fy); }},
      {"trap", "omega_z", [](RunConfig& c, const Token& t) { c.trap.fz = parse_positive(t, Dimension::frequency); },
       [](const RunConfig& c) { return format_frequency(c.trap.fz); }},
      {"trap", "coupling",
       [](RunConfig& c, const Token& t) { c.trap.coupling = parse_choice(t, kCouplingChoices); },
       [](const RunConfig& c) { return std::string(choice_name(c.trap.coupling, kCouplingChoices)); }},

      {"simulation", "radial_levels",
       [](RunConfig& c, const Token& t) { c.simulation.radial_levels = parse_levels(t); },
       [](const RunConfig& c) { return format_levels(c.simulation.radial_levels); }},
      {"simulation", "axial_levels",
       [](RunConfig& c, const Token& t) { c.simulation.axial_levels = parse_levels(t); },
       [](const RunConfig& c) { return format_levels(c.simulation.axial_levels); }},
      {"simulation", "max_step",
       [](RunConfig& c, const Token& t) {
         c.simulation.max_step = t.text == "auto" ? std::nullopt
                                                  : std::optional<double>(parse_positive(t, Dimension::time));
       },
       [](const RunConfig& c) {
         return c.simulation.max_step ? format_time(*c.simulation.max_step) : std::string("auto");
       }},
      {"simulation", "parking_delta",
       [](RunConfig& c, const Token& t) { c.simulation.parking_delta = parse_positive(t, Dimension::frequency); },
       [](const RunConfig& c) { return format_frequency(c.simulation.parking_delta); }},
      {"simulation", "slow_tau",
       [](RunConfig& c, const Token& t) { c.simulation.slow_tau = parse_positive(t, Dimension::time); },
       [](const RunConfig& c) { return format_time(c.simulation.slow_tau); }},
      {"simulation", "fast_tau",
       [](RunConfig& c, const Token& t) { c.simulation.fast_tau = parse_positive(t, Dimension::time); },
       [](const RunConfig& c) { return format_time(c.simulation.fast_tau); }},
      {"simulation", "basis", [](RunConfig& c, const Token& t) { c.simulation.basis = parse_choice(t, kBasisChoices); },
       [](const RunConfig& c) { return std::string(choice_name(c.simulation.basis, kBasisChoices)); }},

      {"measurement", "eta", [](RunConfig& c, const Token& t) { c.measurement.eta = parse_quantity(t, Dimension::none); },
       [](const RunConfig& c) { return format_number(c.measurement.eta); }},
      {"measurement", "shots",
       [](RunConfig& c, const Token& t) {
         if (t.text == "exact") {
           c.measurement.shots.reset();
           return;
         }
         const long long n = parse_integer(t);
         if (n < 1) t.fail(ConfigErrorKind::value, "shots must be a positive integer or 'exact'");
         c.measurement.shots = static_cast<long>(n);
       },
       [](const RunConfig& c) {
         return c.measurement.shots ? std::to_string(*c.measurement.shots) : std::string("exact");
       }},
      {"measurement", "seed",
       [](RunConfig& c, const Token& t) {
         std::uint64_t v = 0;
         auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
         if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
           t.fail(ConfigErrorKind::value, "seed must be a non-negative 64-bit integer");
         }
         c.measurement.seed = v;
       },
       [](const RunConfig& c) { return std::to_string(c.measurement.seed); }},
      {"measurement", "dark_error",
       [](RunConfig& c, const Token& t) { c.measurement.dark_error = parse_quantity(t, Dimension::none); },
       [](const RunConfig& c) { return format_number(c.measurement.dark_error); }},

      {"state", "descriptor",
       [](RunConfig& c, const Token& t) {
         try {
           c.state.descriptor = StateDescriptor::parse(std::string(t.text)).canonical();
         } catch (const std::invalid_argument& e) {
           t.fail(ConfigErrorKind::value, e.what());
         }
       },
       [](const RunConfig& c) { return c.state.descriptor; }},

      {"oscillation", "n_initial",
       [](RunConfig& c, const Token& t) { c.oscillation.n_initial = parse_int_at_least(t, 0); },
       [](const RunConfig& c) { return std::to_string(c.oscillation.n_initial); }},
      {"oscillation", "hold_max",
       [](RunConfig& c, const Token& t) { c.oscillation.hold_max = parse_positive(t, Dimension::time); },
       [](const RunConfig& c) { return format_time(c.oscillation.hold_max); }},
      {"oscillation", "hold_points",
       [](RunConfig& c, const Token& t) { c.oscillation.hold_points = parse_int_at_least(t, 5); },
       [](const RunConfig& c) { return std::to_string(c.oscillation.hold_points); }},
      {"oscillation", "coherence_time",
       [](RunConfig& c, const Token& t) {
         c.oscillation.coherence_time =
             t.text == "none" ? std::nullopt : std::optional<double>(parse_positive(t, Dimension::time));
       },
       [](const RunConfig& c) {
         return c.oscillation.coherence_time ? format_time(*c.oscillation.coherence_time) : std::string("none");
       }},

      {"crossing", "delta_min",
       [](RunConfig& c, const Token& t) { c.crossing.delta_min = parse_quantity(t, Dimension::frequency); },
       [](const RunConfig& c) { return format_frequency(c.crossing.delta_min); }},
      {"crossing", "delta_max",
       [](RunConfig& c, const Token& t) { c.crossing.delta_max = parse_quantity(t, Dimension::frequency); },
       [](const RunConfig& c) { return format_frequency(c.crossing.delta_max); }},
      {"crossing", "points", [](RunConfig& c, const Token& t) { c.crossing.points = parse_int_at_least(t, 2); },
       [](const RunConfig& c) { return std::to_string(c.crossing.points); }},

      {"parity", "fock_max", [](RunConfig& c, const Token& t) { c.parity.fock_max = parse_int_at_least(t, 0); },
       [](const RunConfig& c) { return std::to_string(c.parity.fock_max); }},
      {"parity", "sweep", [](RunConfig& c, const Token& t) { c.parity.sweep = parse_choice(t, kSweepChoices); },
       [](const RunConfig& c) { return std::string(choice_name(c.parity.sweep, kSweepChoices)); }},

      {"wigner", "mode", [](RunConfig& c, const Token& t) { c.wigner.mode = parse_choice(t, kWignerChoices); },
       [](const RunConfig& c) { return std::string(choice_name(c.wigner.mode, kWignerChoices)); }},
      {"wigner", "extent",
       [](RunConfig& c, const Token& t) { c.wigner.extent = parse_positive(t, Dimension::none); },
       [](const RunConfig& c) { return format_number(c.wigner.extent); }},
      {"wigner", "points", [](RunConfig& c, const Token& t) { c.wigner.points = parse_int_at_least(t, 2); },
       [](const RunConfig& c) { return std::to_string(c.wigner.points); }},
      {"wigner", "phases", [](RunConfig& c, const Token& t) { c.wigner.phases = parse_int_at_least(t, 1); },
       [](const RunConfig& c) { return std::to_string(c.wigner.phases); }},

      {"converge", "radial_levels",
       [](RunConfig& c, const Token& t) {
         c.converge.radial_levels.clear();
         for (const Token& item : split_list(t)) c.converge.radial_levels.push_back(parse_int_at_least(item, kMinLevels));
       },
       [](const RunConfig& c) {
         std::string s;
         for (int v : c.converge.radial_levels) s += (s.empty() ? "" : ", ") + std::to_string(v);
         return s;
       }},
      {"converge", "steps",
       [](RunConfig& c, const Token& t) {
         c.converge.steps.clear();
         for (const Token& item : split_list(t)) c.converge.steps.push_back(parse_positive(item, Dimension::time));
       },
       [](const RunConfig& c) {
         std::string s;
         for (double v : c.converge.steps) s += (s.empty() ? "" : ", ") + format_time(v);
         return s;
       }},
  };
  return table;
}

bool known_section(std::string_view name) {
  const auto& table = key_table();
  return std::any_of(table.begin(), table.end(), [&](const KeySpec& k) { return k.section == name; });
}

[[noreturn]] void invalid(const std::string& message) { throw ConfigError(ConfigErrorKind::value, message); }

template <typename T>
bool strictly_increasing(const std::vector<T>& v) {
  return std::adjacent_find(v.begin(), v.end(), [](const T& a, const T& b) { return !(a < b); }) == v.end();
}

}  // namespace

void RunConfig::validate() const {
  if (!(trap.fz < trap.fx && trap.fz < trap.fy)) invalid("trap: omega_z must be below omega_x and omega_y");
  if (!(measurement.eta > 0.0 && measurement.eta <= 1.0)) invalid("measurement: eta must lie in (0, 1]");
  if (!(measurement.dark_error >= 0.0 && measurement.dark_error < 1.0)) {
    invalid("measurement: dark_error must lie in [0, 1)");
  }
  if (!(crossing.delta_min < crossing.delta_max)) invalid("crossing: delta_min must be below delta_max");
  if (!(crossing.delta_min <= 0.0 && crossing.delta_max >= 0.0)) invalid("crossing: range must contain 0 Hz");
  if (converge.radial_levels.empty() || !strictly_increasing(converge.radial_levels)) {
    invalid("converge: radial_levels must be a non-empty increasing list");
  }
  if (converge.steps.empty() || !strictly_increasing(std::vector<double>(converge.steps.rbegin(), converge.steps.rend()))) {
    invalid("converge: steps must be a non-empty decreasing list");
  }
  try {
    StateDescriptor::parse(state.descriptor);
  } catch (const std::invalid_argument& e) {
    invalid(std::string("state: ") + e.what());
  }
}

RunConfig parse_config(std::string_view text) {
  RunConfig config;
  const auto& table = key_table();
  std::string section;
  std::set<std::pair<std::string, std::string>> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    // Comments run from '#' or ';' to end of line.
    const auto comment = raw.find_first_of("#;");
    std::string_view line = comment == std::string_view::npos ? raw : raw.substr(0, comment);
    const std::string_view body = trim(line);
    if (body.empty()) {
      if (eol == text.size()) break;
      continue;
    }
    const int indent = static_cast<int>(line.find(body[0])) + 1;

    if (body.front() == '[') {
      if (body.back() != ']') {
        throw ConfigError(ConfigErrorKind::syntax, "section header is missing ']'", line_no, indent);
      }
      section = std::string(trim(body.substr(1, body.size() - 2)));
      if (!known_section(section)) {
        throw ConfigError(ConfigErrorKind::unknown_section, "unknown section [" + section + "]", line_no, indent + 1);
      }
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(ConfigErrorKind::syntax, "expected 'key = value'", line_no, indent);
      }
      if (section.empty()) {
        throw ConfigError(ConfigErrorKind::syntax, "key outside of any section", line_no, indent);
      }
      const std::string key(trim(line.substr(0, eq)));
      if (key.empty()) throw ConfigError(ConfigErrorKind::syntax, "empty key", line_no, indent);
      const std::string_view after = line.substr(eq + 1);
      const std::string_view value = trim(after);
      const int value_column =
          static_cast<int>(eq + 2 + (value.empty() ? 0 : after.find(value[0])));
      const auto spec = std::find_if(table.begin(), table.end(),
                                     [&](const KeySpec& k) { return k.section == section && k.key == key; });
      if (spec == table.end()) {
        throw ConfigError(ConfigErrorKind::unknown_key, "unknown key '" + key + "' in [" + section + "]", line_no,
                          indent);
      }
      if (!seen.emplace(section, key).second) {
        throw ConfigError(ConfigErrorKind::duplicate_key, "duplicate key '" + key + "' in [" + section + "]",
                          line_no, indent);
      }
      if (value.empty()) throw ConfigError(ConfigErrorKind::syntax, "missing value", line_no, value_column);
      spec->parse(config, Token{value, line_no, value_column});
    }
    if (eol == text.size()) break;
  }
  config.validate();
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(ConfigErrorKind::value, "cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
  std::string out;
  std::string_view section;
  for (const KeySpec& spec : key_table()) {
    if (spec.section != section) {
      if (!section.empty()) out += "\n";
      section = spec.section;
      out += "[" + std::string(section) + "]\n";
    }
    out += std::string(spec.key) + " = " + spec.format(config) + "\n";
  }
  return out;
}

std::string config_hash(const RunConfig& config) {
  RunConfig hashed = config;
  hashed.run.output = RunConfig{}.run.output;
  hashed.run.threads = RunConfig{}.run.threads;
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : serialize_config(hashed)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace paramosc
