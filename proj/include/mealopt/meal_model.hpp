#pragma once

#include "mealopt/lp_core.hpp"

#include <Eigen/Core>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace mealopt {

/// Input rejected before any solve (bad food, bad target, unknown name...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// (calories kcal, protein g, carbs g, fat g), always in this order.
template <typename Scalar>
using MacroVec = Eigen::Matrix<Scalar, 4, 1>;
using MacroVector = MacroVec<double>;

enum class Macro : int { Calories = 0, Protein = 1, Carbs = 2, Fat = 3 };
inline constexpr int kNumMacros = 4;
inline constexpr std::array<Macro, 4> kMacros{Macro::Calories, Macro::Protein, Macro::Carbs, Macro::Fat};

std::string_view macro_name(Macro m);
std::string_view macro_unit(Macro m);

inline MacroVector make_macros(double cal, double prot, double carbs, double fat) {
  return MacroVector(cal, prot, carbs, fat);
}

struct Food {
  std::string name;
  MacroVector per100g = MacroVector::Zero();
  double serving_g = 100.0;
  int min_servings = 0;
  int max_servings = 10;

  /// Throws ValidationError naming the offending field.
  void validate() const;
};

struct MealTarget {
  double calories = 0;
  double prot_pct = 0;
  double carbs_pct = 0;
  double fat_pct = 0;
};

struct WeightScheme {
  enum class Kind { InverseTarget, Equal, Custom };
  Kind kind = Kind::InverseTarget;
  // Applied on top of inverse-target weights when kind == Custom.
  MacroVector multipliers = MacroVector::Ones();

  static WeightScheme inverse_target() { return {}; }
  static WeightScheme equal() { return {Kind::Equal, MacroVector::Ones()}; }
  static WeightScheme custom(const MacroVector& m) { return {Kind::Custom, m}; }
  static WeightScheme double_protein() { return custom(make_macros(1, 2, 1, 1)); }
};

std::string_view to_string(WeightScheme::Kind k);

MacroVector derive_targets(const MealTarget& t);

MacroVector per_serving(const Food& f);

/// Per-serving coefficients of every food as a 4 x n matrix.
Eigen::Matrix<double, 4, Eigen::Dynamic> coefficient_matrix(const std::vector<Food>& foods);

MacroVector compute_weights(const MacroVector& targets, const WeightScheme& scheme);

/// Goal program with variables laid out [servings | d+ (4) | d- (4)].
LinearProgramd build_migp(const std::vector<Food>& foods, const MacroVector& targets, const MacroVector& weights);

struct Shortfall {
  Macro macro;
  double target;
  double max_achievable;

  /// "Cannot reach protein target of 80 g. Maximum achievable: 62 g."
  std::string message() const;
};

/// Max achievable per macro is sum(c * u). Returns the first macro (in
/// cal, prot, carbs, fat order) whose target exceeds it.
std::optional<Shortfall> precheck_feasibility(const std::vector<Food>& foods, const MacroVector& targets);

enum class SolveStatus { Optimal, TimeLimit, Infeasible };
std::string_view to_string(SolveStatus s);

struct Allocation {
  std::string name;
  int servings = 0;
};

struct SolverResult {
  std::vector<Allocation> allocations;
  MacroVector targets = MacroVector::Zero();
  MacroVector weights = MacroVector::Zero();
  MacroVector achieved = MacroVector::Zero();
  // achieved - target
  MacroVector deviation = MacroVector::Zero();
  // 100 * deviation / target; nullopt where the target is zero.
  std::array<std::optional<double>, 4> deviation_pct{};
  double objective = 0;
  SolveStatus status = SolveStatus::Infeasible;
  // False when no allocation exists (infeasible, or a time limit hit first).
  bool has_allocation = false;
  double solve_ms = 0;
  // Continuous relaxation optimum, when the producing method computed one.
  std::optional<double> lp_bound;
  // Human-readable explanation, e.g. why a hard-band model has no solution.
  std::string note;

  bool feasible() const { return has_allocation && status != SolveStatus::Infeasible; }
  MacroVector abs_deviation() const { return deviation.cwiseAbs(); }
  MacroVector over() const { return deviation.cwiseMax(0.0); }
  MacroVector under() const { return (-deviation).cwiseMax(0.0); }
  /// Largest |deviation %| over macros with a non-zero target.
  double max_dev_pct() const;
  /// Share (0-100) of macros within 5% of target; zero targets count when hit exactly.
  double macros_within_5pct() const;
  int servings_of(std::string_view food) const;
  int total_servings() const;
};

/// Canonical weighted absolute deviation, sum(w * |C x - T|).
double weighted_deviation(const Eigen::Matrix<double, 4, Eigen::Dynamic>& coeffs, const Eigen::VectorXd& servings,
                          const MacroVector& targets, const MacroVector& weights);

/// Recomputes achieved macros, deviations and the canonical objective from
/// integer allocations. Allocations may omit foods (count 0) but must not
/// name unknown ones; counts must lie in each food's bounds.
SolverResult evaluate(const std::vector<Food>& foods, const std::vector<Allocation>& allocations,
                      const MacroVector& targets, const MacroVector& weights);

/// Same, from a dense serving vector aligned with `foods`.
SolverResult evaluate(const std::vector<Food>& foods, const Eigen::VectorXi& servings, const MacroVector& targets,
                      const MacroVector& weights);

}  // namespace mealopt
