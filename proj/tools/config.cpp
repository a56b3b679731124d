#include "config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace lvcli {

namespace {

using KT = KeyType;

const std::vector<KeySpec> kSchema = {
    {"run", "command", KT::text, "front", "front | simulate | speed | zones | geometry | certify | radius-search"},
    {"run", "out", KT::text, "out", "run directory"},
    {"run", "threads", KT::integer, "1", "thread cap"},

    {"model", "d", KT::real, "1", ""},
    {"model", "r", KT::real, "1", ""},
    {"model", "a", KT::real, "2", ""},
    {"model", "b", KT::real, "2", ""},

    {"front", "half_length", KT::real, "60", ""},
    {"front", "n_points", KT::integer, "2401", ""},
    {"front", "tol", KT::real, "1e-10", ""},
    {"front", "max_newton", KT::integer, "100", ""},
    {"front", "max_doublings", KT::integer, "4", ""},
    {"front", "tail_tol", KT::real, "1e-4", ""},
    {"front", "profile", KT::text, "", "existing profile CSV (certify, zones, geometry)"},

    {"grid", "kind", KT::text, "line", "line | radial | plane"},
    {"grid", "N", KT::integer, "2", "radial dimension"},
    {"grid", "L", KT::real, "400", ""},
    {"grid", "h", KT::real, "0.2", ""},

    {"scenario", "kind", KT::text, "C1", "C1 | C2"},
    {"scenario", "U", KT::text, "ball(0,10)", "set expression"},
    {"scenario", "V", KT::text, "", "set expression (C1)"},

    {"sim", "T_final", KT::real, "150", ""},
    {"sim", "snapshot_every", KT::real, "1", ""},
    {"sim", "dt", KT::real, "0", "0: stability default"},
    {"sim", "monitor", KT::boolean, "true", ""},
    {"sim", "warn_level", KT::real, "1e-3", ""},

    {"speed", "trajectory", KT::text, "", "read instead of simulating"},
    {"speed", "field", KT::text, "u", "u | v"},
    {"speed", "level", KT::real, "0.5", ""},
    {"speed", "direction", KT::text, "1,0,0", ""},
    {"speed", "zones", KT::boolean, "false", "also run the zone check on the same trajectory"},

    {"zones", "trajectory", KT::text, "", "directory written by simulate"},
    {"zones", "c_list", KT::text, "", "comma list; empty: derived from the speeds"},
    {"zones", "tolerance", KT::real, "0.05", ""},
    {"zones", "c_uv", KT::real, "nan", "nan: solve the front"},

    {"geometry", "set", KT::text, "ball(0,0,10)", "set expression"},
    {"geometry", "dim", KT::integer, "2", ""},
    {"geometry", "m", KT::integer, "512", "directions"},
    {"geometry", "tau0", KT::real, "1", ""},
    {"geometry", "ladder", KT::integer, "17", ""},
    {"geometry", "ratio_threshold", KT::real, "2e-3", ""},
    {"geometry", "c_uv", KT::real, "nan", "nan: solve the front"},
    {"geometry", "rho", KT::real, "0", "erosion radius for the coverage report; 0 skips it"},

    {"certify", "eps", KT::real, "0.1", ""},
    {"certify", "N", KT::integer, "2", ""},
    {"certify", "kind", KT::text, "both", "sub | super | both"},
    {"certify", "t_max", KT::real, "50", ""},
    {"certify", "n_t", KT::integer, "51", ""},
    {"certify", "x_factor", KT::real, "3", ""},
    {"certify", "n_coarse", KT::integer, "6000", ""},
    {"certify", "rel_slack", KT::real, "1e-3", ""},
    {"certify", "check_solution", KT::boolean, "false", "simulate the comparison runs"},
    {"certify", "solution_h", KT::real, "0.5", ""},
    {"certify", "solution_margin", KT::real, "100", ""},
    {"certify", "solution_T", KT::real, "200", ""},
    {"certify", "solution_every", KT::real, "2", ""},

    {"radius", "rho_max", KT::real, "40", ""},
    {"radius", "n_bisect", KT::integer, "10", ""},
    {"radius", "T_probe", KT::real, "60", ""},
    {"radius", "success_level", KT::real, "0.9", ""},
};

const KeySpec* find_key(const std::string& full) {
  for (const auto& k : kSchema) {
    if (full == std::string(k.section) + "." + k.key) return &k;
  }
  return nullptr;
}

bool known_section(const std::string& s) {
  return std::any_of(kSchema.begin(), kSchema.end(), [&](const KeySpec& k) { return s == k.section; });
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_real(const std::string& s, double& out) {
  if (s == "nan" || s == "NaN") {
    out = std::nan("");
    return true;
  }
  const char* end = s.data() + s.size();
  auto r = std::from_chars(s.data(), end, out);
  return r.ec == std::errc() && r.ptr == end;
}

bool parse_int(const std::string& s, long& out) {
  const char* end = s.data() + s.size();
  auto r = std::from_chars(s.data(), end, out);
  return r.ec == std::errc() && r.ptr == end;
}

bool parse_bool(const std::string& s, bool& out) {
  if (s == "true" || s == "1" || s == "yes" || s == "on") {
    out = true;
    return true;
  }
  if (s == "false" || s == "0" || s == "no" || s == "off") {
    out = false;
    return true;
  }
  return false;
}

const char* type_name(KeyType t) {
  switch (t) {
    case KT::real: return "a number";
    case KT::integer: return "an integer";
    case KT::boolean: return "a boolean";
    case KT::text: return "text";
  }
  return "?";
}

RunConfig from_tree(const boost::property_tree::ptree& tree) {
  RunConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError(section, "key '" + section + "' outside a section");
    if (!known_section(section)) throw ConfigError(section, "unknown section [" + section + "]");
    for (const auto& [key, val] : body) cfg.set(section + "." + key, val.data());
  }
  return cfg;
}

}  // namespace

const std::vector<KeySpec>& schema() { return kSchema; }

const std::vector<std::string> kCommands = {"front", "simulate", "speed", "zones", "geometry", "certify", "radius-search"};

RunConfig::RunConfig() {
  for (const auto& k : kSchema) values_[std::string(k.section) + "." + k.key] = k.def;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const KeySpec* spec = find_key(key);
  if (!spec) throw ConfigError(key, "unknown key '" + key + "'");
  const std::string value = trim(raw);
  bool ok = true;
  switch (spec->type) {
    case KT::real: {
      double x;
      ok = parse_real(value, x);
      break;
    }
    case KT::integer: {
      long x;
      ok = parse_int(value, x);
      break;
    }
    case KT::boolean: {
      bool x;
      ok = parse_bool(value, x);
      break;
    }
    case KT::text: break;
  }
  if (!ok) throw ConfigError(key, "key '" + key + "' expects " + type_name(spec->type) + ", got '" + value + "'");
  values_[key] = value;
}

const std::string& RunConfig::text(const std::string& k) const {
  auto it = values_.find(k);
  if (it == values_.end()) throw ConfigError(k, "unknown key '" + k + "'");
  return it->second;
}

double RunConfig::real(const std::string& k) const {
  double x = 0.0;
  parse_real(text(k), x);
  return x;
}

long RunConfig::integer(const std::string& k) const {
  long x = 0;
  parse_int(text(k), x);
  return x;
}

bool RunConfig::boolean(const std::string& k) const {
  bool x = false;
  parse_bool(text(k), x);
  return x;
}

std::string RunConfig::dump() const {
  std::ostringstream os;
  std::string section;
  for (const auto& k : kSchema) {
    if (section != k.section) {
      section = k.section;
      os << "[" << section << "]\n";
    }
    os << k.key << " = " << values_.at(section + "." + k.key) << "\n";
  }
  return os.str();
}

RunConfig parse_config_text(const std::string& text) {
  std::istringstream is(text);
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(is, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError("", std::string("config: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  return from_tree(tree);
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("", "config file '" + path + "' not found");
  std::stringstream buf;
  buf << is.rdbuf();
  RunConfig cfg = parse_config_text(buf.str());
  cfg.source = path;
  return cfg;
}

void apply_override(RunConfig& cfg, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError(assignment, "override '" + assignment + "' is not section.key=value");
  const std::string key = trim(assignment.substr(0, eq));
  const std::string value = trim(assignment.substr(eq + 1));
  cfg.set(key, value);
  cfg.overrides.push_back(key + " = " + value);
}

void validate(const RunConfig& cfg) {
  const std::string cmd = cfg.command();
  if (std::find(kCommands.begin(), kCommands.end(), cmd) == kCommands.end())
    throw ConfigError("run.command", "unknown command '" + cmd + "'");
  const std::string gk = cfg.text("grid.kind");
  if (gk != "line" && gk != "radial" && gk != "plane")
    throw ConfigError("grid.kind", "grid.kind must be line, radial or plane");
  const std::string sk = cfg.text("scenario.kind");
  if (sk != "C1" && sk != "C2") throw ConfigError("scenario.kind", "scenario.kind must be C1 or C2");
  const std::string f = cfg.text("speed.field");
  if (f != "u" && f != "v") throw ConfigError("speed.field", "speed.field must be u or v");
  const std::string ck = cfg.text("certify.kind");
  if (ck != "sub" && ck != "super" && ck != "both")
    throw ConfigError("certify.kind", "certify.kind must be sub, super or both");
  if (cfg.integer("run.threads") < 1) throw ConfigError("run.threads", "run.threads must be >= 1");
  if (cfg.text("run.out").empty()) throw ConfigError("run.out", "run.out must not be empty");
}

}  // namespace lvcli
