#ifndef RELENERGY_EXPERIMENTS_HPP
#define RELENERGY_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "relenergy/config.hpp"
#include "relenergy/cutoff.hpp"
#include "relenergy/diagnostics.hpp"
#include "relenergy/exact.hpp"
#include "relenergy/solver.hpp"

namespace relenergy {

struct CheckResult {
  std::string name;
  bool pass;
  std::string detail;
};

/// Outcome of one experiment run: pass/fail per criterion, report files
/// (name -> content) and scalar summary values. File writing is left to the
/// caller so runs stay deterministic and testable.
struct ExperimentResult {
  std::string experiment;
  std::vector<CheckResult> checks;
  std::map<std::string, std::string> files;
  std::map<std::string, double> values;
  double wall_seconds = 0.0;

  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Serialize the result as the summary.json payload.
std::string summary_json(const ExperimentResult& r, const ExperimentConfig& cfg);

/// Dispatch on cfg.experiment.
ExperimentResult run_experiment(const ExperimentConfig& cfg, unsigned threads = 0);

ExperimentResult run_constant(const ExperimentConfig& cfg, unsigned threads);
ExperimentResult run_lemma_sweep(const ExperimentConfig& cfg, unsigned threads);
ExperimentResult run_simulate(const ExperimentConfig& cfg, unsigned threads);
ExperimentResult run_gronwall(const ExperimentConfig& cfg, unsigned threads);
ExperimentResult run_weak_strong(const ExperimentConfig& cfg, unsigned threads);
ExperimentResult run_finite_speed(const ExperimentConfig& cfg, unsigned threads);
ExperimentResult run_incompressible(const ExperimentConfig& cfg, unsigned threads);

// --- helpers shared with the test suites ---

/// Background + Hermite bump initial data on an n-cell grid; velocity zero
/// or the right-moving acoustic profile u = 2/(gamma-1) (c(rho) - c(rho_bg)).
Field make_initial_field(const ExperimentConfig& cfg, int n_cells);

/// The secondary perturbation (init2.*) added to a field, for data that
/// agree with a strong solution inside a ball but differ outside it.
void add_secondary_bump(Field& f, const ExperimentConfig& cfg);

/// Draw a random state pair in the box: densities uniform, velocity
/// magnitudes uniform in [0, v], independent random signs.
struct SamplePair {
  Primitive1 strong;
  Primitive1 weak;
};
SamplePair sample_state_pair(const StateBox& box, std::uint64_t seed,
                             std::uint64_t index);

/// Count of samples violating |B| <= c_bound * A among `n` draws.
std::uint64_t domination_violations(const StateBox& box, double c_bound,
                                    std::uint64_t n, std::uint64_t seed,
                                    unsigned threads);

SolverConfig solver_config(const ExperimentConfig& cfg);

} // namespace relenergy

#endif
