#include "gaussinfo/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace gaussinfo::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::string unquote(std::string s) {
  if (s.size() >= 2 && (s.front() == '"' || s.front() == '\'') && s.back() == s.front()) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

double parse_real(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const double x = std::strtod(value.c_str(), &end);
  if (value.empty() || end != value.c_str() + value.size() || errno != 0 || !std::isfinite(x)) {
    throw ConfigError("key '" + key + "': expected a real number, got '" + value + "'");
  }
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  const double x = parse_real(key, value);
  if (x != std::floor(x) || std::abs(x) > 1e9) {
    throw ConfigError("key '" + key + "': expected an integer, got '" + value + "'");
  }
  return static_cast<int>(x);
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_real(key, trim(item)));
  if (out.empty()) throw ConfigError("key '" + key + "': empty list");
  return out;
}

const std::set<std::string>& allowed_keys(SystemKind kind) {
  static const std::set<std::string> sweep_keys = {"sweep.axis",  "sweep.from",  "sweep.to",
                                                   "sweep.steps", "sweep.scale", "sweep.values"};
  static const std::map<SystemKind, std::set<std::string>> table = [] {
    const std::set<std::string> common = {"kind", "hbar", "output"};
    std::map<SystemKind, std::set<std::string>> t;
    auto make = [&](std::initializer_list<std::string> extra, bool sweep) {
      std::set<std::string> s = common;
      s.insert(extra.begin(), extra.end());
      if (sweep) s.insert(sweep_keys.begin(), sweep_keys.end());
      return s;
    };
    t[SystemKind::two_osc] = make({"k0", "k1"}, true);
    t[SystemKind::chain] = make({"k0", "k1", "n_oscillators", "boundary", "k_matrix"}, false);
    t[SystemKind::qubits] = make({}, false);
    t[SystemKind::qgt_scan] = make({"family", "delta", "omega", "fock_dim", "omega_ref"}, true);
    t[SystemKind::classical_compare] =
        make({"k0", "k1", "n_oscillators", "boundary", "block", "k_matrix"}, false);
    return t;
  }();
  return table.at(kind);
}

void validate(ScenarioConfig& cfg) {
  if (!(cfg.hbar > 0.0)) throw ConfigError("hbar must be positive");
  const bool uses_chain = cfg.kind == SystemKind::two_osc || cfg.kind == SystemKind::chain ||
                          cfg.kind == SystemKind::classical_compare;
  if (uses_chain) {
    if (!(cfg.k0 > 0.0)) throw ConfigError("k0 must be positive");
    if (!(cfg.k1 >= 0.0)) throw ConfigError("k1 must be nonnegative");
  }
  if (cfg.kind == SystemKind::chain && !cfg.k_matrix_path && cfg.n_oscillators < 2) {
    throw ConfigError("n_oscillators must be at least 2 for a chain scan");
  }
  if (cfg.kind == SystemKind::classical_compare && !cfg.k_matrix_path) {
    if (cfg.n_oscillators < 1) throw ConfigError("n_oscillators must be at least 1");
    if (cfg.block < 1 || cfg.block > cfg.n_oscillators) {
      throw ConfigError("block must lie in [1, n_oscillators]");
    }
  }
  if (cfg.k_matrix_path && !std::filesystem::exists(*cfg.k_matrix_path)) {
    throw ConfigError("k_matrix file not found: " + *cfg.k_matrix_path);
  }
  if (cfg.kind == SystemKind::qgt_scan) {
    static const std::set<std::string> families = {"avoided_crossing", "commuting",
                                                   "oscillator_frequency",
                                                   "oscillator_translation"};
    if (!families.count(cfg.family)) throw ConfigError("unknown qgt family '" + cfg.family + "'");
    if (cfg.fock_dim < 2) throw ConfigError("fock_dim must be at least 2");
    if (!(cfg.omega > 0.0) || !(cfg.omega_ref > 0.0)) {
      throw ConfigError("omega and omega_ref must be positive");
    }
    if (!cfg.sweep) throw ConfigError("qgt_scan needs a [sweep] section");
    const std::string expected = cfg.family == "oscillator_frequency" ? "omega" : "lambda";
    if (cfg.sweep->axis.empty()) cfg.sweep->axis = expected;
    if (cfg.sweep->axis != expected) {
      throw ConfigError("sweep axis for family " + cfg.family + " must be '" + expected + "'");
    }
  }
  if (cfg.kind == SystemKind::two_osc && cfg.sweep) {
    if (cfg.sweep->axis.empty()) cfg.sweep->axis = "k1";
    if (cfg.sweep->axis != "k1") throw ConfigError("two_osc sweeps run over k1 only");
  }
  if (cfg.sweep) {
    SweepAxis& s = *cfg.sweep;
    if (s.values.empty()) {
      if (s.steps < 1) throw ConfigError("sweep.steps must be at least 1");
      if (s.from > s.to) throw ConfigError("sweep.from must not exceed sweep.to");
      if (s.scale == SweepScale::log && !(s.from > 0.0)) {
        throw ConfigError("log sweeps need a positive sweep.from");
      }
    }
  }
}

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::two_osc: return "two_osc";
    case SystemKind::chain: return "chain";
    case SystemKind::qubits: return "qubits";
    case SystemKind::qgt_scan: return "qgt_scan";
    case SystemKind::classical_compare: return "classical_compare";
  }
  return "unknown";
}

SystemKind parse_kind(std::string_view text) {
  std::string t(text);
  std::replace(t.begin(), t.end(), '-', '_');
  for (SystemKind k : {SystemKind::two_osc, SystemKind::chain, SystemKind::qubits,
                       SystemKind::qgt_scan, SystemKind::classical_compare}) {
    if (t == to_string(k)) return k;
  }
  throw ConfigError("unknown system kind '" + std::string(text) + "'");
}

std::vector<double> SweepAxis::points() const {
  if (!values.empty()) return values;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    if (scale == SweepScale::linear) {
      out.push_back(i == steps ? to : from + t * (to - from));
    } else {
      out.push_back(i == steps ? to : from * std::pow(to / from, t));
    }
  }
  return out;
}

ScenarioConfig parse_config(std::string_view text, SystemKind kind) {
  ScenarioConfig cfg;
  cfg.kind = kind;
  const auto& allowed = allowed_keys(kind);
  std::set<std::string> seen;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError(where + "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "sweep") throw ConfigError(where + "unknown section [" + section + "]");
      if (!cfg.sweep) cfg.sweep.emplace();
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where + "expected key = value");
    const std::string bare = trim(line.substr(0, eq));
    const std::string key = section.empty() ? bare : section + "." + bare;
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (!allowed.count(key)) {
      throw ConfigError(where + "unknown key '" + key + "' for " + std::string(to_string(kind)));
    }
    if (!seen.insert(key).second) throw ConfigError(where + "duplicate key '" + key + "'");

    if (key == "kind") {
      if (parse_kind(value) != kind) {
        throw ConfigError(where + "config is for '" + value + "', not " +
                          std::string(to_string(kind)));
      }
    } else if (key == "hbar") {
      cfg.hbar = parse_real(key, value);
    } else if (key == "output") {
      cfg.output = value;
    } else if (key == "k0") {
      cfg.k0 = parse_real(key, value);
    } else if (key == "k1") {
      cfg.k1 = parse_real(key, value);
    } else if (key == "k_matrix") {
      cfg.k_matrix_path = value;
    } else if (key == "n_oscillators") {
      cfg.n_oscillators = parse_int(key, value);
    } else if (key == "boundary") {
      if (value == "open") {
        cfg.boundary = Boundary::open;
      } else if (value == "periodic") {
        cfg.boundary = Boundary::periodic;
      } else {
        throw ConfigError(where + "boundary must be open or periodic");
      }
    } else if (key == "block") {
      cfg.block = parse_int(key, value);
    } else if (key == "family") {
      cfg.family = value;
    } else if (key == "delta") {
      cfg.delta = parse_real(key, value);
    } else if (key == "omega") {
      cfg.omega = parse_real(key, value);
    } else if (key == "fock_dim") {
      cfg.fock_dim = parse_int(key, value);
    } else if (key == "omega_ref") {
      cfg.omega_ref = parse_real(key, value);
    } else if (key == "sweep.axis") {
      cfg.sweep->axis = value;
    } else if (key == "sweep.from") {
      cfg.sweep->from = parse_real(key, value);
    } else if (key == "sweep.to") {
      cfg.sweep->to = parse_real(key, value);
    } else if (key == "sweep.steps") {
      cfg.sweep->steps = parse_int(key, value);
    } else if (key == "sweep.scale") {
      if (value == "linear") {
        cfg.sweep->scale = SweepScale::linear;
      } else if (value == "log") {
        cfg.sweep->scale = SweepScale::log;
      } else {
        throw ConfigError(where + "sweep.scale must be linear or log");
      }
    } else if (key == "sweep.values") {
      cfg.sweep->values = parse_list(key, value);
    }
  }
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string& path, SystemKind kind) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  std::string text = buffer.str();

  // Resolve k_matrix relative to the config file before validation looks
  // for it on disk.
  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  std::istringstream lines(text);
  std::string rebuilt, raw;
  while (std::getline(lines, raw)) {
    const std::string line = trim(raw);
    if (line.rfind("k_matrix", 0) == 0 && line.find('=') != std::string::npos) {
      const auto eq = line.find('=');
      if (trim(line.substr(0, eq)) == "k_matrix") {
        std::string value = trim(line.substr(eq + 1));
        const auto hash = value.find('#');
        if (hash != std::string::npos) value = trim(value.substr(0, hash));
        std::filesystem::path p(unquote(value));
        if (p.is_relative()) p = base / p;
        raw = "k_matrix = " + p.string();
      }
    }
    rebuilt += raw + "\n";
  }
  return parse_config(rebuilt, kind);
}

Matrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ss(line);
    std::vector<double> row;
    std::string token;
    while (ss >> token) row.push_back(parse_real("k_matrix", token));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const Index n = static_cast<Index>(rows.size());
  if (n == 0) throw ConfigError("matrix file " + path + " is empty");
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    if (static_cast<Index>(rows[static_cast<std::size_t>(i)].size()) != n) {
      throw ConfigError("matrix file " + path + " is not square");
    }
    for (Index j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  return m;
}

}  // namespace gaussinfo::cli
