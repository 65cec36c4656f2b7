#ifndef RELENERGY_CONFIG_HPP
#define RELENERGY_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relenergy/errors.hpp"

namespace relenergy {

/// Flat `key = value` file with dotted section names and '#' comments.
/// Keys are validated against a fixed schema; unknown keys are rejected.
class KeyValueConfig {
public:
  static KeyValueConfig parse(const std::string& text);
  static KeyValueConfig parse_file(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  std::vector<int> get_int_list(const std::string& key,
                                const std::vector<int>& fallback) const;

  /// Throws config_error listing every key not in `known`.
  void require_known_keys(const std::vector<std::string>& known) const;

  const std::map<std::string, std::string>& values() const { return values_; }

private:
  std::map<std::string, std::string> values_;
};

/// Everything an experiment run needs, resolved from a config file plus
/// CLI-level overrides. Invariants of the referenced modules are re-checked
/// in validate().
struct ExperimentConfig {
  std::string experiment; // constant | simulate | weak-strong | finite-speed |
                          // gronwall | incompressible | lemma-sweep
  double gamma = 2.0;
  std::uint64_t seed = 0;

  // grid.*
  double x_min = -2.0;
  double x_max = 2.0;
  int n_cells = 400;
  std::string bc = "periodic";

  // init.* (compressible initial data: background + Hermite bump)
  double rho_bg = 1.0;
  double amplitude = 0.1;
  double half_width = 0.25;
  double center = 0.0;
  std::string velocity_mode = "zero"; // zero | acoustic

  // init2.* (secondary perturbation, outside the matched ball)
  double amplitude2 = 0.0;
  double half_width2 = 0.25;
  double center2 = 0.0;

  // cutoff.*
  double eta = 0.8;
  double cutoff_center = 0.0;
  std::string speed_mode = "grid"; // grid | analytic | explicit
  double explicit_speed = 1.0;

  // solver.*
  double cfl = 0.45;
  double t_end = 0.5;
  double snapshot_dt = 0.05;
  double vacuum_eps = 1e-12;

  // box.* (constant / lemma-sweep)
  double box_r_lo = 0.5;
  double box_r_hi = 2.0;
  double box_v = 1.0;

  // lemma.*
  int lemma_grid_n = 64;
  std::uint64_t lemma_samples = 1000000;

  // gronwall.*
  std::string gronwall_strong = "constant"; // constant | reference
  double gronwall_factor = 2.0;
  std::vector<int> levels = {200, 400, 800};
  int refine = 8;

  // finite_speed.*
  double threshold = 1e-7;
  double fit_t_min = 0.0;
  std::vector<int> fs_levels = {400, 800, 1600};

  // incompressible.*
  int quad_n = 256;
  int time_slices = 64;
  std::vector<double> taus = {0.1, 0.5};

  // tol.*
  double tol_production = 1e-10;
  double tol_mass = 1e-12;
  double tol_residual_frac = 0.01;
  double tol_order_min = 0.8;
  double tol_sign = 1e-12;
  double tol_incompressible = 1e-8;
  double tol_exactness = 1e-6;

  static ExperimentConfig from_config(const KeyValueConfig& kv);
  static ExperimentConfig defaults_for(const std::string& experiment);
  void validate() const;
};

} // namespace relenergy

#endif
