#pragma once

// Integrality gap between the relaxation and the integer optimum, and the
// deviation-absorption bound for arbitrary roundings.

#include "mealopt/branch_bound.hpp"
#include "mealopt/meal_model.hpp"

#include <random>
#include <string_view>
#include <variant>
#include <vector>

namespace mealopt {

// Relaxation optima below this are treated as exactly zero.
inline constexpr double kZeroLpThreshold = 1e-9;

enum class GapRegime { PerfectContinuous, ImperfectContinuous };
std::string_view to_string(GapRegime r);

/// Reported instead of a ratio when the relaxation optimum is zero but the
/// integer optimum is not.
struct AbsoluteDiff {
  double value = 0;
};

struct GapReport {
  double z_lp = 0;
  double z_mip = 0;
  std::variant<double, AbsoluteDiff> gamma = 0.0;
  GapRegime regime = GapRegime::PerfectContinuous;
  bool lp_deviation_zero = true;
  // False when the MILP hit its time limit and z_mip is the best incumbent.
  bool mip_optimal = true;

  bool gamma_is_relative() const { return std::holds_alternative<double>(gamma); }
  /// The ratio, or the absolute difference when the ratio is undefined.
  double gamma_value() const;
  double absolute_gap() const { return z_mip - z_lp; }
};

GapRegime classify_regime(double z_lp);
inline GapRegime classify_regime(const GapReport& r) { return classify_regime(r.z_lp); }

/// Builds a report from already-computed optima.
GapReport make_gap_report(double z_lp, double z_mip, bool mip_optimal = true);

GapReport integrality_gap(const std::vector<Food>& foods, const MacroVector& targets, const WeightScheme& scheme,
                          const BnbConfig& cfg = {});

struct AbsorptionCheck {
  // Macro perturbation C (x_hat - x_lp).
  MacroVector delta = MacroVector::Zero();
  // z_lp + sum w |delta|
  double bound = 0;
  // Weighted deviation at x_hat.
  double achieved = 0;
  bool holds = true;
};

/// Continuous relaxation optimum with its serving vector.
struct RelaxationPoint {
  double z_lp = 0;
  Eigen::VectorXd servings;
};

RelaxationPoint solve_relaxation(const std::vector<Food>& foods, const MacroVector& targets,
                                 const MacroVector& weights);

/// Core check against a precomputed relaxation. Throws ValidationError if the
/// rounding is outside the serving bounds.
AbsorptionCheck absorption_check(const std::vector<Food>& foods, const MacroVector& targets,
                                 const MacroVector& weights, const RelaxationPoint& lp,
                                 const Eigen::VectorXi& rounding);

AbsorptionCheck absorption_check(const std::vector<Food>& foods, const MacroVector& targets,
                                 const WeightScheme& scheme, const Eigen::VectorXi& rounding);

/// Random integer point near the relaxation: each serving independently
/// floors or ceils, with occasional uniform jumps anywhere in its bounds.
Eigen::VectorXi random_rounding(const std::vector<Food>& foods, const Eigen::VectorXd& x_lp, std::mt19937_64& rng);

}  // namespace mealopt
