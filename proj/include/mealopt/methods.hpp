#pragma once

// The three allocation methods compared throughout the project. Every method
// reports through evaluate(), so objectives are comparable across methods.

#include "mealopt/branch_bound.hpp"
#include "mealopt/meal_model.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace mealopt {

struct MethodKind {
  enum class Kind { Migp, GpRounding, HardIp };
  Kind kind = Kind::Migp;
  // Hard-IP band half-width as a fraction of each target.
  double tolerance_frac = 0.05;

  static MethodKind migp() { return {Kind::Migp, 0.05}; }
  static MethodKind gp_rounding() { return {Kind::GpRounding, 0.05}; }
  static MethodKind hard_ip(double tol = 0.05) { return {Kind::HardIp, tol}; }

  void validate() const;
  bool operator==(const MethodKind&) const = default;
};

/// "migp", "gp-round", "hard-ip".
std::string_view to_string(MethodKind::Kind k);
std::optional<MethodKind::Kind> parse_method(std::string_view s);

SolverResult solve_migp(const std::vector<Food>& foods, const MacroVector& targets, const WeightScheme& scheme,
                        const BnbConfig& cfg = {});

/// Relaxation optimum on its optimal face with the least total servings
/// (servings only). Deterministic even when the relaxation has many optima.
Eigen::VectorXd canonical_relaxation(const std::vector<Food>& foods, const MacroVector& targets,
                                     const MacroVector& weights, double* z_lp = nullptr);

/// Relaxation, then round half away from zero and clamp into bounds.
///
/// The relaxation optimum is frequently not unique, and rounding depends on
/// which optimal point is used; the point rounded is canonical_relaxation().
SolverResult solve_gp_rounding(const std::vector<Food>& foods, const MacroVector& targets,
                               const WeightScheme& scheme);

/// Fewest total servings with every macro within (1 +/- tol) * target.
/// Ties on total servings go to the smaller weighted deviation. The reported
/// objective is the canonical weighted deviation; total_servings() gives the
/// minimized quantity. No integer point in the bands -> Infeasible.
SolverResult solve_hard_ip(const std::vector<Food>& foods, const MacroVector& targets, const WeightScheme& scheme,
                           double tolerance_frac = 0.05, const BnbConfig& cfg = {});

/// Dispatch with wall-clock timing stored in solve_ms.
SolverResult run_method(const MethodKind& kind, const std::vector<Food>& foods, const MacroVector& targets,
                        const WeightScheme& scheme, const BnbConfig& cfg = {});

}  // namespace mealopt
