#include "mealopt/meal_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_map>

namespace mealopt {

std::string_view macro_name(Macro m) {
  switch (m) {
    case Macro::Calories: return "calories";
    case Macro::Protein: return "protein";
    case Macro::Carbs: return "carbs";
    case Macro::Fat: return "fat";
  }
  return "?";
}

std::string_view macro_unit(Macro m) { return m == Macro::Calories ? "kcal" : "g"; }

std::string_view to_string(WeightScheme::Kind k) {
  switch (k) {
    case WeightScheme::Kind::InverseTarget: return "inverse";
    case WeightScheme::Kind::Equal: return "equal";
    case WeightScheme::Kind::Custom: return "custom";
  }
  return "?";
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::TimeLimit: return "time_limit";
    case SolveStatus::Infeasible: return "infeasible";
  }
  return "?";
}

void Food::validate() const {
  auto fail = [this](const std::string& field, const std::string& msg) {
    throw ValidationError("food '" + name + "': " + field + " " + msg);
  };
  if (name.empty()) throw ValidationError("food: name must not be empty");
  for (Macro m : kMacros) {
    const double v = per100g[static_cast<int>(m)];
    if (!std::isfinite(v) || v < 0) fail("per100g." + std::string(macro_name(m)), "must be a finite non-negative number");
  }
  if (!std::isfinite(serving_g) || serving_g <= 0) fail("serving_g", "must be positive");
  if (min_servings < 0) fail("min_servings", "must be non-negative");
  if (max_servings < min_servings) fail("max_servings", "must be >= min_servings");
}

MacroVector derive_targets(const MealTarget& t) {
  if (!std::isfinite(t.calories) || t.calories <= 0) throw ValidationError("target calories must be positive");
  for (double p : {t.prot_pct, t.carbs_pct, t.fat_pct})
    if (!std::isfinite(p) || p < 0) throw ValidationError("macro percentages must be non-negative");
  const double sum = t.prot_pct + t.carbs_pct + t.fat_pct;
  if (std::abs(sum - 100.0) > 1e-9) {
    std::ostringstream os;
    os << "macro percentages must sum to 100 (got " << sum << ")";
    throw ValidationError(os.str());
  }
  return make_macros(t.calories, t.calories * t.prot_pct / 400.0, t.calories * t.carbs_pct / 400.0,
                     t.calories * t.fat_pct / 900.0);
}

MacroVector per_serving(const Food& f) { return f.per100g * (f.serving_g / 100.0); }

Eigen::Matrix<double, 4, Eigen::Dynamic> coefficient_matrix(const std::vector<Food>& foods) {
  Eigen::Matrix<double, 4, Eigen::Dynamic> c(4, static_cast<Eigen::Index>(foods.size()));
  for (std::size_t i = 0; i < foods.size(); ++i) c.col(static_cast<Eigen::Index>(i)) = per_serving(foods[i]);
  return c;
}

MacroVector compute_weights(const MacroVector& targets, const WeightScheme& scheme) {
  const MacroVector inverse = targets.cwiseMax(1.0).cwiseInverse();
  switch (scheme.kind) {
    case WeightScheme::Kind::InverseTarget: return inverse;
    case WeightScheme::Kind::Equal: return MacroVector::Ones();
    case WeightScheme::Kind::Custom:
      if ((scheme.multipliers.array() <= 0).any() || !scheme.multipliers.allFinite())
        throw ValidationError("custom weight multipliers must be positive");
      return inverse.cwiseProduct(scheme.multipliers);
  }
  return inverse;
}

LinearProgramd build_migp(const std::vector<Food>& foods, const MacroVector& targets, const MacroVector& weights) {
  if (foods.empty()) throw ValidationError("at least one food is required");
  for (const auto& f : foods) f.validate();
  const auto n = static_cast<Eigen::Index>(foods.size());
  const Eigen::Index total = n + 2 * kNumMacros;

  LinearProgramd lp;
  lp.objective = Eigen::VectorXd::Zero(total);
  lp.objective.segment(n, 4) = weights;
  lp.objective.segment(n + 4, 4) = weights;

  // sum(c x) - d+ + d- = T
  lp.eq_matrix = Eigen::MatrixXd::Zero(4, total);
  lp.eq_matrix.leftCols(n) = coefficient_matrix(foods);
  lp.eq_matrix.block(0, n, 4, 4) = -Eigen::Matrix4d::Identity();
  lp.eq_matrix.block(0, n + 4, 4, 4) = Eigen::Matrix4d::Identity();
  lp.eq_rhs = targets;

  lp.lower = Eigen::VectorXd::Zero(total);
  lp.upper = Eigen::VectorXd::Constant(total, LinearProgramd::infinity());
  for (Eigen::Index i = 0; i < n; ++i) {
    lp.lower[i] = foods[static_cast<std::size_t>(i)].min_servings;
    lp.upper[i] = foods[static_cast<std::size_t>(i)].max_servings;
  }
  lp.integrality.assign(static_cast<std::size_t>(total), false);
  std::fill_n(lp.integrality.begin(), n, true);
  return lp;
}

std::string Shortfall::message() const {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(0);
  os << "Cannot reach " << macro_name(macro) << " target of " << target << ' ' << macro_unit(macro)
     << ". Maximum achievable: " << max_achievable << ' ' << macro_unit(macro) << '.';
  return os.str();
}

std::optional<Shortfall> precheck_feasibility(const std::vector<Food>& foods, const MacroVector& targets) {
  MacroVector reach = MacroVector::Zero();
  for (const auto& f : foods) reach += per_serving(f) * f.max_servings;
  for (Macro m : kMacros) {
    const int i = static_cast<int>(m);
    if (targets[i] > reach[i]) return Shortfall{m, targets[i], reach[i]};
  }
  return std::nullopt;
}

double SolverResult::max_dev_pct() const {
  double worst = 0;
  for (const auto& p : deviation_pct)
    if (p) worst = std::max(worst, std::abs(*p));
  return worst;
}

double SolverResult::macros_within_5pct() const {
  int ok = 0;
  for (int i = 0; i < kNumMacros; ++i) {
    const auto& p = deviation_pct[static_cast<std::size_t>(i)];
    if (p ? std::abs(*p) <= 5.0 : std::abs(deviation[i]) <= 1e-9) ++ok;
  }
  return 100.0 * ok / kNumMacros;
}

int SolverResult::servings_of(std::string_view food) const {
  for (const auto& a : allocations)
    if (a.name == food) return a.servings;
  return 0;
}

int SolverResult::total_servings() const {
  int total = 0;
  for (const auto& a : allocations) total += a.servings;
  return total;
}

double weighted_deviation(const Eigen::Matrix<double, 4, Eigen::Dynamic>& coeffs, const Eigen::VectorXd& servings,
                          const MacroVector& targets, const MacroVector& weights) {
  return weights.dot((coeffs * servings - targets).cwiseAbs());
}

SolverResult evaluate(const std::vector<Food>& foods, const Eigen::VectorXi& servings, const MacroVector& targets,
                      const MacroVector& weights) {
  if (servings.size() != static_cast<Eigen::Index>(foods.size()))
    throw ValidationError("allocation vector length does not match food count");
  SolverResult r;
  r.targets = targets;
  r.weights = weights;
  for (std::size_t i = 0; i < foods.size(); ++i) {
    const int k = servings[static_cast<Eigen::Index>(i)];
    const auto& f = foods[i];
    if (k < f.min_servings || k > f.max_servings)
      throw ValidationError("allocation for '" + f.name + "' (" + std::to_string(k) + ") is outside [" +
                            std::to_string(f.min_servings) + ", " + std::to_string(f.max_servings) + "]");
    if (k > 0) r.allocations.push_back({f.name, k});
  }
  r.achieved = coefficient_matrix(foods) * servings.cast<double>();
  r.deviation = r.achieved - targets;
  for (int i = 0; i < kNumMacros; ++i)
    if (targets[i] != 0) r.deviation_pct[static_cast<std::size_t>(i)] = 100.0 * r.deviation[i] / targets[i];
  r.objective = weights.dot(r.deviation.cwiseAbs());
  r.status = SolveStatus::Optimal;
  r.has_allocation = true;
  return r;
}

SolverResult evaluate(const std::vector<Food>& foods, const std::vector<Allocation>& allocations,
                      const MacroVector& targets, const MacroVector& weights) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < foods.size(); ++i) index.emplace(foods[i].name, i);
  // Foods missing from the allocation list are taken at zero servings.
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(static_cast<Eigen::Index>(foods.size()));
  std::vector<bool> seen(foods.size(), false);
  for (const auto& a : allocations) {
    auto it = index.find(a.name);
    if (it == index.end()) throw ValidationError("allocation references unknown food '" + a.name + "'");
    if (seen[it->second]) throw ValidationError("food '" + a.name + "' allocated twice");
    seen[it->second] = true;
    counts[static_cast<Eigen::Index>(it->second)] = a.servings;
  }
  return evaluate(foods, counts, targets, weights);
}

}  // namespace mealopt
