#include "revsurf/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "revsurf/errors.hpp"
#include "revsurf/parallel.hpp"

namespace revsurf::config {

namespace {

constexpr std::array<std::pair<Subcommand, std::string_view>, 5> kSubcommands{{
    {Subcommand::geometry, "geometry"},
    {Subcommand::bound_states, "bound-states"},
    {Subcommand::transport, "transport"},
    {Subcommand::experiment, "experiment"},
    {Subcommand::verify, "verify"},
}};

KeySpec key(std::string name, Kind kind, std::optional<std::string> def, bool positive, std::string help) {
  return KeySpec{std::move(name), kind, std::move(def), false, positive, std::move(help)};
}

KeySpec required(std::string name, Kind kind, bool positive, std::string help) {
  return KeySpec{std::move(name), kind, std::nullopt, true, positive, std::move(help)};
}

std::vector<KeySpec> with_common(std::vector<KeySpec> keys) {
  keys.push_back(key("workers", Kind::integer, "0", false, "worker threads; 0 uses REVSURF_WORKERS or all cores"));
  keys.push_back(key("out", Kind::text, "", false, "output directory; empty writes tables to stdout"));
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

const KeySpec* find_key(Subcommand s, const std::string& name) {
  const auto& keys = schema(s);
  const auto it = std::find_if(keys.begin(), keys.end(), [&](const KeySpec& k) { return k.name == name; });
  return it == keys.end() ? nullptr : &*it;
}

Value convert(const KeySpec& spec, const std::string& raw, const std::string& where) {
  const char* first = raw.data();
  const char* last = raw.data() + raw.size();
  switch (spec.kind) {
    case Kind::length:
    case Kind::energy:
    case Kind::ratio: {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last || raw.empty()) {
        throw ConfigError(where, "'" + spec.name + "' expects a number, got '" + raw + "'");
      }
      if (spec.positive && !(v > 0.0)) throw ConfigError(where, "'" + spec.name + "' must be positive");
      return v;
    }
    case Kind::integer: {
      long v = 0;
      const auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc() || ptr != last || raw.empty()) {
        throw ConfigError(where, "'" + spec.name + "' expects an integer, got '" + raw + "'");
      }
      if (spec.positive && v <= 0) throw ConfigError(where, "'" + spec.name + "' must be positive");
      return v;
    }
    case Kind::flag: {
      std::string lower = raw;
      std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
      if (lower == "true" || lower == "yes" || lower == "on" || lower == "1") return true;
      if (lower == "false" || lower == "no" || lower == "off" || lower == "0") return false;
      throw ConfigError(where, "'" + spec.name + "' expects true or false, got '" + raw + "'");
    }
    case Kind::text:
      return raw;
  }
  throw ConfigError(where, "unsupported key kind");
}

void assign(RunConfig& cfg, const std::string& name, const std::string& raw, const std::string& where) {
  const KeySpec* spec = find_key(cfg.subcommand, name);
  if (spec == nullptr) {
    throw ConfigError(where, "unknown key '" + name + "' for " + std::string(to_string(cfg.subcommand)));
  }
  cfg.values[name] = convert(*spec, raw, where);
  cfg.origin[name] = where;
}

void validate(RunConfig& cfg) {
  for (const auto& spec : schema(cfg.subcommand)) {
    if (cfg.has(spec.name)) continue;
    if (spec.required) {
      throw ConfigError("config", "missing required key '" + spec.name + "' for " +
                                      std::string(to_string(cfg.subcommand)));
    }
    if (spec.default_value) {
      cfg.values[spec.name] = convert(spec, *spec.default_value, "default");
      cfg.origin[spec.name] = "default";
    }
  }
  const auto where = [&](const std::string& k) { return cfg.origin.at(k); };
  if (cfg.subcommand == Subcommand::geometry || cfg.subcommand == Subcommand::transport) {
    if (cfg.number("eps") >= cfg.number("a")) {
      std::ostringstream msg;
      msg << "eps = " << cfg.number("eps") << " must be smaller than a = " << cfg.number("a");
      throw ConfigError(where("eps"), msg.str());
    }
  }
  if (cfg.subcommand == Subcommand::geometry) {
    const auto& shape = cfg.text("shape");
    if (shape != "junction" && shape != "cone" && shape != "cylinder") {
      throw ConfigError(where("shape"), "shape must be junction, cone or cylinder, got '" + shape + "'");
    }
    if (cfg.number("lambda") < 0.0) throw ConfigError(where("lambda"), "'lambda' must not be negative");
  }
  if (cfg.subcommand == Subcommand::transport && cfg.number("Emax") < cfg.number("Emin")) {
    throw ConfigError(where("Emax"), "Emax must not be below Emin");
  }
  if (cfg.integer("workers") < 0) throw ConfigError(where("workers"), "'workers' must not be negative");
}

}  // namespace

std::string_view to_string(Subcommand s) {
  for (const auto& [id, name] : kSubcommands) {
    if (id == s) return name;
  }
  return "unknown";
}

std::optional<Subcommand> parse_subcommand(std::string_view name) {
  for (const auto& [id, n] : kSubcommands) {
    if (n == name) return id;
  }
  return std::nullopt;
}

const std::vector<KeySpec>& schema(Subcommand s) {
  static const std::vector<KeySpec> geometry = with_common({
      key("shape", Kind::text, "junction", false, "junction, cone or cylinder"),
      key("R1", Kind::length, "40", true, "junction: left cylinder radius"),
      key("R2", Kind::length, "2", true, "junction: right cylinder radius"),
      key("a", Kind::length, "10", true, "junction: half length"),
      key("eps", Kind::length, "2", true, "junction: transition length"),
      key("rho", Kind::length, "10", true, "cone: radius at z = 0"),
      key("lambda", Kind::ratio, "1", false, "cone: slope tan(beta)"),
      key("R", Kind::length, "10", true, "cylinder: radius"),
      key("zfrom", Kind::length, std::nullopt, false, "first sample (default -a-5, 0 for cones)"),
      key("zto", Kind::length, std::nullopt, false, "last sample (default a+5, 2 rho for cones)"),
      key("points", Kind::integer, "201", true, "number of samples"),
      key("mass", Kind::ratio, "0.173", true, "effective mass m/m_e"),
  });
  static const std::vector<KeySpec> bound_states = with_common({
      key("rho", Kind::length, "10", true, "small rim radius"),
      required("lambda", Kind::ratio, true, "slope tan(beta)"),
      required("zmax", Kind::length, true, "cone height"),
      key("eta", Kind::integer, "0", false, "azimuthal quantum number"),
      key("count", Kind::integer, "3", true, "number of levels"),
      key("mass", Kind::ratio, "0.067", true, "effective mass m/m_e"),
      key("samples", Kind::integer, "0", false, "eigenfunction samples per mode; 0 skips the profiles"),
  });
  static const std::vector<KeySpec> transport = with_common({
      required("R1", Kind::length, true, "injection cylinder radius"),
      required("R2", Kind::length, true, "outgoing cylinder radius"),
      required("a", Kind::length, true, "junction half length"),
      required("eps", Kind::length, true, "transition length"),
      key("Emin", Kind::energy, "0.1", true, "first longitudinal energy"),
      key("Emax", Kind::energy, "50", true, "last longitudinal energy"),
      key("points", Kind::integer, "500", true, "number of energy samples"),
      key("mode", Kind::integer, "0", false, "transverse mode n"),
      key("mass", Kind::ratio, "0.173", true, "effective mass m/m_e"),
      key("grid", Kind::integer, "4000", true, "finite-difference nodes on [-a, a]"),
      key("gp", Kind::flag, "true", false, "include the geometric potential"),
  });
  static const std::vector<KeySpec> experiment = with_common({
      required("id", Kind::text, false, "experiment id or 'all'"),
      key("grid", Kind::integer, "4000", true, "transport finite-difference nodes"),
      key("hbar2_over_2me", Kind::ratio, "38.0998", true, "hbar^2/(2 m_e) in meV nm^2"),
  });
  static const std::vector<KeySpec> verify = with_common({
      key("grid", Kind::integer, "4000", true, "transport finite-difference nodes"),
      key("hbar2_over_2me", Kind::ratio, "38.0998", true, "hbar^2/(2 m_e) in meV nm^2"),
      key("seed", Kind::integer, "20240917", false, "seed for random transport configurations"),
  });
  switch (s) {
    case Subcommand::geometry: return geometry;
    case Subcommand::bound_states: return bound_states;
    case Subcommand::transport: return transport;
    case Subcommand::experiment: return experiment;
    case Subcommand::verify: return verify;
  }
  return verify;
}

double RunConfig::number(const std::string& key) const {
  const auto& v = values.at(key);
  if (const auto* d = std::get_if<double>(&v)) return *d;
  if (const auto* l = std::get_if<long>(&v)) return static_cast<double>(*l);
  throw ConfigError(key, "not a numeric key");
}

long RunConfig::integer(const std::string& key) const { return std::get<long>(values.at(key)); }
bool RunConfig::flag(const std::string& key) const { return std::get<bool>(values.at(key)); }
const std::string& RunConfig::text(const std::string& key) const { return std::get<std::string>(values.at(key)); }

std::filesystem::path RunConfig::output_dir() const { return text("out"); }

unsigned RunConfig::workers() const {
  const long w = integer("workers");
  return w > 0 ? static_cast<unsigned>(w) : default_workers();
}

RunConfig parse_config_text(Subcommand subcommand, std::string_view text, const std::string& source,
                            const std::vector<std::string>& flags) {
  RunConfig cfg;
  cfg.subcommand = subcommand;
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  bool active = true;  // keys before the first header apply everywhere
  while (std::getline(in, line)) {
    ++number;
    const std::string where = source + ":" + std::to_string(number);
    const auto cut = line.find_first_of("#;");
    const std::string body = trim(std::string_view(line).substr(0, cut));
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ConfigError(where, "malformed section header '" + body + "'");
      const std::string name = trim(std::string_view(body).substr(1, body.size() - 2));
      const auto section = parse_subcommand(name);
      if (!section) throw ConfigError(where, "unknown section [" + name + "]");
      active = *section == subcommand;
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) throw ConfigError(where, "expected 'key = value', got '" + body + "'");
    const std::string k = trim(std::string_view(body).substr(0, eq));
    const std::string v = trim(std::string_view(body).substr(eq + 1));
    if (k.empty()) throw ConfigError(where, "empty key");
    if (active) assign(cfg, k, v, where);
  }
  for (const auto& token : flags) {
    const std::string where = "flag '" + token + "'";
    const auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError(where, "expected key=value");
    assign(cfg, trim(std::string_view(token).substr(0, eq)), trim(std::string_view(token).substr(eq + 1)), where);
  }
  validate(cfg);
  return cfg;
}

RunConfig parse_config(Subcommand subcommand, const std::optional<std::filesystem::path>& file,
                       const std::vector<std::string>& flags) {
  std::string text;
  std::string source = "flags";
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError(file->string(), "cannot read config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
    source = file->string();
  }
  return parse_config_text(subcommand, text, source, flags);
}

}  // namespace revsurf::config
