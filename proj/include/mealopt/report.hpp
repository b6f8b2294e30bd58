#pragma once

// Plain-text tables for the CLI: solve reports and worked-example reruns.

#include "mealopt/examples.hpp"
#include "mealopt/io.hpp"

#include <string>
#include <vector>

namespace mealopt {

/// Allocation, achieved vs target, per-macro deviation and objective.
std::string format_result(const MealSpec& spec, const OptimizeOutcome& outcome);

struct ExampleCheck {
  std::string what;  // e.g. "MIGP objective"
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct ExampleReport {
  char id = 'A';
  std::string text;
  std::vector<ExampleCheck> checks;
  SolverResult migp, gp_round, hard_ip;
  double z_lp = 0;

  bool all_pass() const;
};

inline constexpr double kExampleObjectiveTol = 5e-4;
inline constexpr double kExampleMaxDevTolPct = 0.2;

/// Solves all three methods and renders the target derivation, food inputs,
/// MIGP breakdown, side-by-side allocations and comparison tables.
ExampleReport run_example(const WorkedExample& ex);

}  // namespace mealopt
