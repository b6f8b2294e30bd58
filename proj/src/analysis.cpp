#include "mealopt/analysis.hpp"

#include <cmath>

namespace mealopt {

std::string_view to_string(GapRegime r) {
  return r == GapRegime::PerfectContinuous ? "perfect_continuous" : "imperfect_continuous";
}

double GapReport::gamma_value() const {
  if (const auto* g = std::get_if<double>(&gamma)) return *g;
  return std::get<AbsoluteDiff>(gamma).value;
}

GapRegime classify_regime(double z_lp) {
  return z_lp < kZeroLpThreshold ? GapRegime::PerfectContinuous : GapRegime::ImperfectContinuous;
}

GapReport make_gap_report(double z_lp, double z_mip, bool mip_optimal) {
  GapReport r;
  r.z_lp = z_lp;
  r.z_mip = z_mip;
  r.mip_optimal = mip_optimal;
  r.regime = classify_regime(z_lp);
  r.lp_deviation_zero = r.regime == GapRegime::PerfectContinuous;
  // Solver tolerances can put z_mip a hair below z_lp.
  const double diff = std::max(0.0, z_mip - z_lp);
  if (!r.lp_deviation_zero) r.gamma = diff / z_lp;
  else if (z_mip < kZeroLpThreshold) r.gamma = 0.0;
  else r.gamma = AbsoluteDiff{diff};
  return r;
}

GapReport integrality_gap(const std::vector<Food>& foods, const MacroVector& targets, const WeightScheme& scheme,
                          const BnbConfig& cfg) {
  const MacroVector w = compute_weights(targets, scheme);
  const auto prob = build_migp(foods, targets, w);
  const auto mip = solve_milp(prob, cfg);
  if (!mip.has_solution) throw std::runtime_error("integer solve produced no allocation");
  // Report the canonical objective of the allocation, not the LP value of
  // the deviation columns.
  const auto n = static_cast<Eigen::Index>(foods.size());
  const double z_mip = weighted_deviation(coefficient_matrix(foods), mip.x.head(n), targets, w);
  return make_gap_report(mip.root_bound, z_mip, mip.status == MilpStatus::Optimal);
}

RelaxationPoint solve_relaxation(const std::vector<Food>& foods, const MacroVector& targets,
                                 const MacroVector& weights) {
  const auto prob = build_migp(foods, targets, weights);
  const auto lp = solve_lp(prob);
  if (lp.status != LpStatus::Optimal) throw std::runtime_error("relaxation solve failed");
  return {lp.objective_value, lp.x.head(static_cast<Eigen::Index>(foods.size()))};
}

AbsorptionCheck absorption_check(const std::vector<Food>& foods, const MacroVector& targets,
                                 const MacroVector& weights, const RelaxationPoint& lp,
                                 const Eigen::VectorXi& rounding) {
  if (rounding.size() != static_cast<Eigen::Index>(foods.size()))
    throw ValidationError("rounding length does not match food count");
  for (std::size_t i = 0; i < foods.size(); ++i) {
    const int k = rounding[static_cast<Eigen::Index>(i)];
    if (k < foods[i].min_servings || k > foods[i].max_servings)
      throw ValidationError("rounding for '" + foods[i].name + "' is outside its serving bounds");
  }
  const auto c = coefficient_matrix(foods);
  const Eigen::VectorXd xh = rounding.cast<double>();
  AbsorptionCheck out;
  out.delta = c * (xh - lp.servings);
  out.bound = lp.z_lp + weights.dot(out.delta.cwiseAbs());
  out.achieved = weighted_deviation(c, xh, targets, weights);
  out.holds = out.achieved <= out.bound + 1e-9;
  return out;
}

AbsorptionCheck absorption_check(const std::vector<Food>& foods, const MacroVector& targets,
                                 const WeightScheme& scheme, const Eigen::VectorXi& rounding) {
  const MacroVector w = compute_weights(targets, scheme);
  return absorption_check(foods, targets, w, solve_relaxation(foods, targets, w), rounding);
}

Eigen::VectorXi random_rounding(const std::vector<Food>& foods, const Eigen::VectorXd& x_lp, std::mt19937_64& rng) {
  Eigen::VectorXi out(static_cast<Eigen::Index>(foods.size()));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < foods.size(); ++i) {
    const auto& f = foods[i];
    const auto idx = static_cast<Eigen::Index>(i);
    int v;
    if (unit(rng) < 0.1) {
      v = std::uniform_int_distribution<int>(f.min_servings, f.max_servings)(rng);
    } else {
      v = static_cast<int>(unit(rng) < 0.5 ? std::floor(x_lp[idx]) : std::ceil(x_lp[idx]));
    }
    out[idx] = std::clamp(v, f.min_servings, f.max_servings);
  }
  return out;
}

}  // namespace mealopt
