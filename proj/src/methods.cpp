#include "mealopt/methods.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

namespace mealopt {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Eigen::VectorXi integer_part(const Eigen::VectorXd& x, Eigen::Index n) {
  Eigen::VectorXi out(n);
  for (Eigen::Index i = 0; i < n; ++i) out[i] = static_cast<int>(std::lround(x[i]));
  return out;
}

SolverResult infeasible_result(const MacroVector& targets, const MacroVector& weights, std::string note) {
  SolverResult r;
  r.targets = targets;
  r.weights = weights;
  r.status = SolveStatus::Infeasible;
  r.note = std::move(note);
  return r;
}

}  // namespace

void MethodKind::validate() const {
  if (kind == Kind::HardIp && !(tolerance_frac > 0 && tolerance_frac < 1))
    throw ValidationError("hard-ip tolerance must lie in (0, 1)");
}

std::string_view to_string(MethodKind::Kind k) {
  switch (k) {
    case MethodKind::Kind::Migp: return "migp";
    case MethodKind::Kind::GpRounding: return "gp-round";
    case MethodKind::Kind::HardIp: return "hard-ip";
  }
  return "?";
}

std::optional<MethodKind::Kind> parse_method(std::string_view s) {
  for (auto k : {MethodKind::Kind::Migp, MethodKind::Kind::GpRounding, MethodKind::Kind::HardIp})
    if (to_string(k) == s) return k;
  return std::nullopt;
}

SolverResult solve_migp(const std::vector<Food>& foods, const MacroVector& targets, const WeightScheme& scheme,
                        const BnbConfig& cfg) {
  const auto t0 = Clock::now();
  const MacroVector w = compute_weights(targets, scheme);
  const auto prob = build_migp(foods, targets, w);
  const auto sol = solve_milp(prob, cfg);
  if (!sol.has_solution) {
    // Unreachable for well-formed input: the deviation columns make every
    // integer point feasible. Only a time limit before the seed can get here.
    auto r = infeasible_result(targets, w, "time limit reached before any allocation was found");
    r.status = SolveStatus::TimeLimit;
    r.solve_ms = ms_since(t0);
    return r;
  }
  const auto n = static_cast<Eigen::Index>(foods.size());
  auto r = evaluate(foods, integer_part(sol.x, n), targets, w);
  r.status = sol.status == MilpStatus::Optimal ? SolveStatus::Optimal : SolveStatus::TimeLimit;
  r.lp_bound = sol.root_bound;
  r.solve_ms = ms_since(t0);
  return r;
}

Eigen::VectorXd canonical_relaxation(const std::vector<Food>& foods, const MacroVector& targets,
                                     const MacroVector& weights, double* z_lp) {
  const auto prob = build_migp(foods, targets, weights);
  const auto lp = solve_lp(prob);
  if (lp.status != LpStatus::Optimal) throw std::runtime_error("relaxation solve failed: " + std::string(to_string(lp.status)));
  const auto n = static_cast<Eigen::Index>(foods.size());
  if (z_lp) *z_lp = lp.objective_value;

  // Hold nonbasic columns with non-zero reduced cost at their bounds; what
  // remains free spans the optimal face. Minimize total servings on it.
  LinearProgramd face = prob;
  for (Eigen::Index j = 0; j < prob.num_vars(); ++j) {
    if (std::abs(lp.reduced_costs[j]) > 1e-9) {
      face.lower[j] = lp.x[j];
      face.upper[j] = lp.x[j];
    }
  }
  face.objective.setZero();
  face.objective.head(n).setOnes();
  const auto canon = solve_lp(face);
  return (canon.status == LpStatus::Optimal ? canon.x : lp.x).head(n);
}

SolverResult solve_gp_rounding(const std::vector<Food>& foods, const MacroVector& targets,
                               const WeightScheme& scheme) {
  const auto t0 = Clock::now();
  const MacroVector w = compute_weights(targets, scheme);
  double z_lp = 0;
  const Eigen::VectorXd x = canonical_relaxation(foods, targets, w, &z_lp);
  const auto n = static_cast<Eigen::Index>(foods.size());
  Eigen::VectorXi rounded(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& f = foods[static_cast<std::size_t>(i)];
    // std::round is half away from zero.
    const double v = std::clamp(std::round(x[i]), double(f.min_servings), double(f.max_servings));
    rounded[i] = static_cast<int>(v);
  }
  auto r = evaluate(foods, rounded, targets, w);
  r.lp_bound = z_lp;
  r.solve_ms = ms_since(t0);
  return r;
}

SolverResult solve_hard_ip(const std::vector<Food>& foods, const MacroVector& targets, const WeightScheme& scheme,
                           double tolerance_frac, const BnbConfig& cfg) {
  const auto t0 = Clock::now();
  MethodKind::hard_ip(tolerance_frac).validate();
  const MacroVector w = compute_weights(targets, scheme);
  const auto goal = build_migp(foods, targets, w);
  const auto n = static_cast<Eigen::Index>(foods.size());
  const Eigen::Index total = n + 12;

  // Layout [x | d+ | d- | s]: goal rows as in the MIGP, then band rows
  // C x - s = (1 - tol) T with 0 <= s <= 2 tol T. The deviation term is
  // scaled below one serving so total servings stays the primary objective.
  const double max_dev = tolerance_frac * w.dot(targets.cwiseAbs());
  const double eps = max_dev > 0 ? 0.5 / max_dev : 1.0;

  LinearProgramd prob;
  prob.objective = Eigen::VectorXd::Zero(total);
  prob.objective.head(n).setOnes();
  prob.objective.segment(n, 8) = eps * goal.objective.segment(n, 8);
  prob.eq_matrix = Eigen::MatrixXd::Zero(8, total);
  prob.eq_matrix.topLeftCorner(4, n + 8) = goal.eq_matrix;
  prob.eq_matrix.bottomLeftCorner(4, n) = goal.eq_matrix.leftCols(n);
  prob.eq_matrix.block(4, n + 8, 4, 4) = -Eigen::Matrix4d::Identity();
  prob.eq_rhs.resize(8);
  prob.eq_rhs << targets, (1.0 - tolerance_frac) * targets;
  prob.lower = Eigen::VectorXd::Zero(total);
  prob.upper = Eigen::VectorXd::Constant(total, LinearProgramd::infinity());
  prob.lower.head(n) = goal.lower.head(n);
  prob.upper.head(n) = goal.upper.head(n);
  // Zero targets collapse the band to [0, 0].
  prob.upper.tail(4) = (2.0 * tolerance_frac * targets).cwiseMax(0.0);
  prob.integrality.assign(static_cast<std::size_t>(total), false);
  std::fill_n(prob.integrality.begin(), n, true);

  const auto sol = solve_milp(prob, cfg);
  if (!sol.has_solution) {
    std::ostringstream os;
    if (sol.status == MilpStatus::TimeLimit)
      os << "Time limit reached before finding an allocation within +/-" << tolerance_frac * 100 << "% of every target.";
    else
      os << "No integer allocation keeps every macro within +/-" << tolerance_frac * 100 << "% of its target.";
    if (auto s = precheck_feasibility(foods, targets)) os << ' ' << s->message();
    auto r = infeasible_result(targets, w, os.str());
    if (sol.status == MilpStatus::TimeLimit) r.status = SolveStatus::TimeLimit;
    r.solve_ms = ms_since(t0);
    return r;
  }
  auto r = evaluate(foods, integer_part(sol.x, n), targets, w);
  r.status = sol.status == MilpStatus::Optimal ? SolveStatus::Optimal : SolveStatus::TimeLimit;
  r.solve_ms = ms_since(t0);
  return r;
}

SolverResult run_method(const MethodKind& kind, const std::vector<Food>& foods, const MacroVector& targets,
                        const WeightScheme& scheme, const BnbConfig& cfg) {
  kind.validate();
  const auto t0 = Clock::now();
  SolverResult r;
  switch (kind.kind) {
    case MethodKind::Kind::Migp: r = solve_migp(foods, targets, scheme, cfg); break;
    case MethodKind::Kind::GpRounding: r = solve_gp_rounding(foods, targets, scheme); break;
    case MethodKind::Kind::HardIp: r = solve_hard_ip(foods, targets, scheme, kind.tolerance_frac, cfg); break;
  }
  r.solve_ms = ms_since(t0);
  return r;
}

}  // namespace mealopt
