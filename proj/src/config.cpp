#include "relenergy/config.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "relenergy/gas.hpp"
#include "relenergy/solver.hpp"

namespace relenergy {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

KeyValueConfig KeyValueConfig::parse(const std::string& text) {
  KeyValueConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(lineno) +
                         ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty()) throw config_error("config line " + std::to_string(lineno) +
                                        ": empty key");
    if (cfg.values_.count(key))
      throw config_error("config: duplicate key '" + key + "'");
    cfg.values_[key] = val;
  }
  return cfg;
}

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse(ss.str());
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  char* end = nullptr;
  const double v = std::strtod(it->second.c_str(), &end);
  if (end == it->second.c_str() || *end != '\0')
    throw config_error("config key '" + key + "': not a number: " + it->second);
  return v;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  char* end = nullptr;
  const long v = std::strtol(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0')
    throw config_error("config key '" + key + "': not an integer: " + it->second);
  return static_cast<int>(v);
}

std::uint64_t KeyValueConfig::get_u64(const std::string& key,
                                      std::uint64_t fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(it->second.c_str(), &end, 10);
  if (end == it->second.c_str() || *end != '\0')
    throw config_error("config key '" + key + "': not an integer: " + it->second);
  return v;
}

std::string KeyValueConfig::get_string(const std::string& key,
                                       const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key,
                                              const std::vector<int>& fallback) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<int> out;
  std::istringstream ss(it->second);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty()) continue;
    out.push_back(std::stoi(tok));
  }
  if (out.empty())
    throw config_error("config key '" + key + "': empty list");
  return out;
}

void KeyValueConfig::require_known_keys(const std::vector<std::string>& known) const {
  std::string bad;
  for (const auto& [k, v] : values_)
    if (std::find(known.begin(), known.end(), k) == known.end())
      bad += (bad.empty() ? "" : ", ") + k;
  if (!bad.empty()) throw config_error("unknown config keys: " + bad);
}

namespace {

const std::vector<std::string>& schema() {
  static const std::vector<std::string> keys = {
      "experiment", "gamma", "seed",
      "grid.x_min", "grid.x_max", "grid.n_cells", "grid.bc",
      "init.rho_bg", "init.amplitude", "init.half_width", "init.center",
      "init.velocity_mode",
      "init2.amplitude", "init2.half_width", "init2.center",
      "cutoff.eta", "cutoff.center", "cutoff.speed_mode", "cutoff.speed",
      "solver.cfl", "solver.t_end", "solver.snapshot_dt", "solver.vacuum_eps",
      "box.r_lo", "box.r_hi", "box.v_max",
      "lemma.grid_n", "lemma.samples",
      "gronwall.strong", "gronwall.factor", "gronwall.levels", "gronwall.refine",
      "finite_speed.threshold", "finite_speed.fit_t_min", "finite_speed.levels",
      "incompressible.quad_n", "incompressible.time_slices", "incompressible.taus",
      "tol.production", "tol.mass", "tol.residual_frac", "tol.order_min",
      "tol.sign", "tol.incompressible", "tol.exactness",
  };
  return keys;
}

std::vector<double> parse_double_list(const KeyValueConfig& kv,
                                      const std::string& key,
                                      const std::vector<double>& fallback) {
  if (!kv.has(key)) return fallback;
  std::vector<double> out;
  std::istringstream ss(kv.get_string(key, ""));
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok = trim(tok);
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  if (out.empty()) throw config_error("config key '" + key + "': empty list");
  return out;
}

} // namespace

ExperimentConfig ExperimentConfig::from_config(const KeyValueConfig& kv) {
  kv.require_known_keys(schema());
  ExperimentConfig c;
  c.experiment = kv.get_string("experiment", "");
  c.gamma = kv.get_double("gamma", c.gamma);
  c.seed = kv.get_u64("seed", c.seed);
  c.x_min = kv.get_double("grid.x_min", c.x_min);
  c.x_max = kv.get_double("grid.x_max", c.x_max);
  c.n_cells = kv.get_int("grid.n_cells", c.n_cells);
  c.bc = kv.get_string("grid.bc", c.bc);
  c.rho_bg = kv.get_double("init.rho_bg", c.rho_bg);
  c.amplitude = kv.get_double("init.amplitude", c.amplitude);
  c.half_width = kv.get_double("init.half_width", c.half_width);
  c.center = kv.get_double("init.center", c.center);
  c.velocity_mode = kv.get_string("init.velocity_mode", c.velocity_mode);
  c.amplitude2 = kv.get_double("init2.amplitude", c.amplitude2);
  c.half_width2 = kv.get_double("init2.half_width", c.half_width2);
  c.center2 = kv.get_double("init2.center", c.center2);
  c.eta = kv.get_double("cutoff.eta", c.eta);
  c.cutoff_center = kv.get_double("cutoff.center", c.cutoff_center);
  c.speed_mode = kv.get_string("cutoff.speed_mode", c.speed_mode);
  c.explicit_speed = kv.get_double("cutoff.speed", c.explicit_speed);
  c.cfl = kv.get_double("solver.cfl", c.cfl);
  c.t_end = kv.get_double("solver.t_end", c.t_end);
  c.snapshot_dt = kv.get_double("solver.snapshot_dt", c.snapshot_dt);
  c.vacuum_eps = kv.get_double("solver.vacuum_eps", c.vacuum_eps);
  c.box_r_lo = kv.get_double("box.r_lo", c.box_r_lo);
  c.box_r_hi = kv.get_double("box.r_hi", c.box_r_hi);
  c.box_v = kv.get_double("box.v_max", c.box_v);
  c.lemma_grid_n = kv.get_int("lemma.grid_n", c.lemma_grid_n);
  c.lemma_samples = kv.get_u64("lemma.samples", c.lemma_samples);
  c.gronwall_strong = kv.get_string("gronwall.strong", c.gronwall_strong);
  c.gronwall_factor = kv.get_double("gronwall.factor", c.gronwall_factor);
  c.levels = kv.get_int_list("gronwall.levels", c.levels);
  c.refine = kv.get_int("gronwall.refine", c.refine);
  c.threshold = kv.get_double("finite_speed.threshold", c.threshold);
  c.fit_t_min = kv.get_double("finite_speed.fit_t_min", c.fit_t_min);
  c.fs_levels = kv.get_int_list("finite_speed.levels", c.fs_levels);
  c.quad_n = kv.get_int("incompressible.quad_n", c.quad_n);
  c.time_slices = kv.get_int("incompressible.time_slices", c.time_slices);
  c.taus = parse_double_list(kv, "incompressible.taus", c.taus);
  c.tol_production = kv.get_double("tol.production", c.tol_production);
  c.tol_mass = kv.get_double("tol.mass", c.tol_mass);
  c.tol_residual_frac = kv.get_double("tol.residual_frac", c.tol_residual_frac);
  c.tol_order_min = kv.get_double("tol.order_min", c.tol_order_min);
  c.tol_sign = kv.get_double("tol.sign", c.tol_sign);
  c.tol_incompressible = kv.get_double("tol.incompressible", c.tol_incompressible);
  c.tol_exactness = kv.get_double("tol.exactness", c.tol_exactness);
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::defaults_for(const std::string& experiment) {
  ExperimentConfig c;
  c.experiment = experiment;
  return c;
}

void ExperimentConfig::validate() const {
  static const std::vector<std::string> experiments = {
      "constant",     "simulate",       "weak-strong", "finite-speed",
      "gronwall",     "incompressible", "lemma-sweep"};
  if (std::find(experiments.begin(), experiments.end(), experiment) ==
      experiments.end())
    throw config_error("unknown experiment: '" + experiment + "'");
  try {
    GasParams{gamma}.validate();
    Grid1D{x_min, x_max, n_cells, bc_from_string(bc)}.validate();
    SolverConfig{cfl, gamma, vacuum_eps, t_end, snapshot_dt}.validate();
  } catch (const std::exception& e) {
    throw config_error(e.what());
  }
  if (velocity_mode != "zero" && velocity_mode != "acoustic")
    throw config_error("init.velocity_mode must be 'zero' or 'acoustic'");
  if (speed_mode != "grid" && speed_mode != "analytic" && speed_mode != "explicit")
    throw config_error("cutoff.speed_mode must be grid|analytic|explicit");
  if (speed_mode == "explicit" && !(explicit_speed > 0.0))
    throw config_error("cutoff.speed must be positive");
  if (!(eta > 0.0)) throw config_error("cutoff.eta must be positive");
  if (gronwall_strong != "constant" && gronwall_strong != "reference")
    throw config_error("gronwall.strong must be 'constant' or 'reference'");
  if (lemma_grid_n < 2) throw config_error("lemma.grid_n must be >= 2");
  if (refine < 8) throw config_error("gronwall.refine must be >= 8");
  if (!(threshold > 0.0)) throw config_error("finite_speed.threshold must be > 0");
  if (quad_n < 2) throw config_error("incompressible.quad_n must be >= 2");
  if (time_slices < 1) throw config_error("incompressible.time_slices must be >= 1");
  for (int n : levels)
    if (n < 4) throw config_error("gronwall.levels entries must be >= 4");
  for (int n : fs_levels)
    if (n < 4) throw config_error("finite_speed.levels entries must be >= 4");
  if (!(amplitude + rho_bg >= 0.0) || !(rho_bg >= 0.0))
    throw config_error("init: background density and bump must stay nonnegative");
}

} // namespace relenergy
