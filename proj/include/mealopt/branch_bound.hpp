#pragma once

// Best-first branch-and-bound over lp_core relaxations, plus an exhaustive
// lattice enumerator used as an independent reference on small programs.

#include "mealopt/lp_core.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

namespace mealopt {

enum class MilpStatus { Optimal, Infeasible, TimeLimit };

inline const char* to_string(MilpStatus s) {
  switch (s) {
    case MilpStatus::Optimal: return "optimal";
    case MilpStatus::Infeasible: return "infeasible";
    case MilpStatus::TimeLimit: return "time_limit";
  }
  return "?";
}

struct BnbConfig {
  double time_limit_s = 30.0;
  double integrality_tol = 1e-6;
  // Nodes whose bound is within this of the incumbent are pruned.
  double prune_tol = 1e-9;
  std::size_t node_cap = 50'000'000;
};

template <typename Scalar>
struct MilpSolution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  MilpStatus status = MilpStatus::Infeasible;
  bool has_solution = false;
  Vector x;
  Scalar objective_value = 0;
  Scalar root_bound = 0;
  std::size_t nodes_explored = 0;
  double wall_ms = 0;
  // Incumbent objective after each improvement, in discovery order.
  std::vector<Scalar> incumbent_trace;
};

namespace detail {

template <typename Scalar>
struct BnbNode {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector lower;
  Vector upper;
  Scalar bound;
  std::size_t depth;
  std::uint64_t id;
};

// Highest priority = smallest bound; ties go to the deeper node, then the
// older one.
template <typename Scalar>
struct NodeOrder {
  bool operator()(const BnbNode<Scalar>& a, const BnbNode<Scalar>& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    if (a.depth != b.depth) return a.depth < b.depth;
    return a.id > b.id;
  }
};

template <typename Scalar>
bool is_integral(const LinearProgram<Scalar>& prob, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x, double tol) {
  for (Eigen::Index j = 0; j < prob.num_vars(); ++j)
    if (prob.integrality[static_cast<std::size_t>(j)] && std::abs(x[j] - std::round(x[j])) > tol) return false;
  return true;
}

// Fixes masked variables at `point` (rounded) and solves for the
// continuous remainder. Returns nullopt if that completion is infeasible.
template <typename Scalar>
std::optional<LpSolution<Scalar>> complete_integer_point(const LinearProgram<Scalar>& prob,
                                                         const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& point) {
  LinearProgram<Scalar> fixed = prob;
  for (Eigen::Index j = 0; j < prob.num_vars(); ++j) {
    if (!prob.integrality[static_cast<std::size_t>(j)]) continue;
    const Scalar v = std::clamp<Scalar>(std::round(point[j]), prob.lower[j], prob.upper[j]);
    fixed.lower[j] = v;
    fixed.upper[j] = v;
  }
  auto sol = solve_lp(fixed);
  if (sol.status != LpStatus::Optimal) return std::nullopt;
  return sol;
}

}  // namespace detail

/// Exact MILP solve. Every masked variable must have finite bounds.
///
/// Before searching, the root relaxation is rounded to the nearest integers
/// (clamped into bounds) and completed; if that point is feasible it seeds
/// the incumbent. Branching picks, among fractional masked variables, the one
/// whose column has the largest row-normalized magnitude
/// sum_i |A_ij| / max(|b_i|, 1); lowest index on ties.
template <typename Scalar>
MilpSolution<Scalar> solve_milp(const LinearProgram<Scalar>& prob, const BnbConfig& cfg = {}) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Clock = std::chrono::steady_clock;
  if (!(cfg.time_limit_s > 0)) throw std::invalid_argument("BnbConfig: time_limit must be positive");
  prob.validate();
  for (Eigen::Index j = 0; j < prob.num_vars(); ++j)
    if (prob.integrality[static_cast<std::size_t>(j)] && !std::isfinite(prob.upper[j]))
      throw StructuralError("integer variable " + std::to_string(j) + " has an unbounded upper bound");

  const auto start = Clock::now();
  auto elapsed_ms = [&] { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); };

  MilpSolution<Scalar> out;
  LinearProgram<Scalar> work = prob;
  // Integer boxes only make sense on integral endpoints.
  for (Eigen::Index j = 0; j < prob.num_vars(); ++j) {
    if (!prob.integrality[static_cast<std::size_t>(j)]) continue;
    work.lower[j] = std::ceil(prob.lower[j] - Scalar(cfg.integrality_tol));
    work.upper[j] = std::floor(prob.upper[j] + Scalar(cfg.integrality_tol));
    if (work.lower[j] > work.upper[j]) {
      out.wall_ms = elapsed_ms();
      return out;
    }
  }

  const auto root = solve_lp(work);
  out.nodes_explored = 1;
  if (root.status != LpStatus::Optimal) {
    out.wall_ms = elapsed_ms();
    if (root.status == LpStatus::Unbounded)
      throw StructuralError("relaxation is unbounded; MILP objective must be bounded below");
    return out;
  }
  out.root_bound = root.objective_value;

  Vector best_x;
  Scalar best_obj = std::numeric_limits<Scalar>::infinity();
  auto offer = [&](const LpSolution<Scalar>& cand) {
    if (cand.objective_value < best_obj) {
      best_obj = cand.objective_value;
      best_x = cand.x;
      for (Eigen::Index j = 0; j < work.num_vars(); ++j)
        if (work.integrality[static_cast<std::size_t>(j)]) best_x[j] = std::round(best_x[j]);
      out.incumbent_trace.push_back(best_obj);
    }
  };

  if (auto seeded = detail::complete_integer_point(work, root.x)) offer(*seeded);

  Vector score = Vector::Zero(work.num_vars());
  {
    const Vector row_scale = work.eq_rhs.cwiseAbs().cwiseMax(Scalar(1)).cwiseInverse();
    for (Eigen::Index j = 0; j < work.num_vars(); ++j)
      if (work.integrality[static_cast<std::size_t>(j)]) score[j] = work.eq_matrix.col(j).cwiseAbs().dot(row_scale);
  }

  std::priority_queue<detail::BnbNode<Scalar>, std::vector<detail::BnbNode<Scalar>>, detail::NodeOrder<Scalar>> open;
  std::uint64_t next_id = 0;
  open.push({work.lower, work.upper, root.objective_value, 0, next_id++});

  bool timed_out = false;
  bool first = true;
  while (!open.empty()) {
    if (elapsed_ms() > cfg.time_limit_s * 1000.0 || out.nodes_explored >= cfg.node_cap) {
      timed_out = true;
      break;
    }
    detail::BnbNode<Scalar> node = open.top();
    open.pop();
    if (node.bound >= best_obj - Scalar(cfg.prune_tol)) continue;

    LpSolution<Scalar> relax;
    if (first) {
      relax = root;
      first = false;
    } else {
      relax = solve_lp_with_bounds(work, node.lower, node.upper);
      ++out.nodes_explored;
      if (relax.status != LpStatus::Optimal) continue;
    }
    if (relax.objective_value >= best_obj - Scalar(cfg.prune_tol)) continue;

    Eigen::Index branch = -1;
    Scalar best_score = -1;
    for (Eigen::Index j = 0; j < work.num_vars(); ++j) {
      if (!work.integrality[static_cast<std::size_t>(j)]) continue;
      const Scalar f = relax.x[j] - std::floor(relax.x[j]);
      const Scalar dist = std::min(f, Scalar(1) - f);
      if (dist <= Scalar(cfg.integrality_tol)) continue;
      if (score[j] > best_score) {
        best_score = score[j];
        branch = j;
      }
    }
    if (branch < 0) {
      // Integral up to tolerance: polish by fixing the rounded values.
      if (auto polished = detail::complete_integer_point(work, relax.x)) offer(*polished);
      continue;
    }

    const Scalar v = relax.x[branch];
    detail::BnbNode<Scalar> down{node.lower, node.upper, relax.objective_value, node.depth + 1, next_id++};
    down.upper[branch] = std::floor(v);
    detail::BnbNode<Scalar> up{node.lower, node.upper, relax.objective_value, node.depth + 1, next_id++};
    up.lower[branch] = std::ceil(v);
    if (down.lower[branch] <= down.upper[branch]) open.push(std::move(down));
    if (up.lower[branch] <= up.upper[branch]) open.push(std::move(up));
  }

  out.wall_ms = elapsed_ms();
  if (std::isfinite(best_obj)) {
    out.has_solution = true;
    out.x = best_x;
    out.objective_value = best_obj;
  }
  if (timed_out) out.status = MilpStatus::TimeLimit;
  else out.status = out.has_solution ? MilpStatus::Optimal : MilpStatus::Infeasible;
  return out;
}

/// Thrown by brute_force_reference when the lattice is too large.
class SearchSpaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration of every integer point in the masked box.
///
/// Only goal-program structure is supported: each continuous column must be
/// a signed unit vector (+e_r or -e_r) with a non-negative cost and bounds
/// [0, inf). For a fixed integer point, each row's residual is then covered
/// by the cheapest column of matching sign, which is the exact optimum of the
/// continuous remainder (for deviation pairs: d+ = max(0, A-T), d- = max(0, T-A)).
template <typename Scalar>
MilpSolution<Scalar> brute_force_reference(const LinearProgram<Scalar>& prob, double max_points = 1e7) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  prob.validate();
  const auto start = std::chrono::steady_clock::now();
  const Eigen::Index n = prob.num_vars();
  const Eigen::Index m = prob.num_rows();

  std::vector<Eigen::Index> ints;
  double points = 1;
  for (Eigen::Index j = 0; j < n; ++j) {
    if (!prob.integrality[static_cast<std::size_t>(j)]) continue;
    if (!std::isfinite(prob.upper[j])) throw StructuralError("integer variable with unbounded upper bound");
    ints.push_back(j);
    points *= std::floor(prob.upper[j]) - std::ceil(prob.lower[j]) + 1;
  }
  if (points > max_points)
    throw SearchSpaceTooLarge("lattice has " + std::to_string(static_cast<long long>(points)) + " points; cap is " +
                              std::to_string(static_cast<long long>(max_points)));

  // Cheapest covering column per row and sign.
  const Scalar inf = std::numeric_limits<Scalar>::infinity();
  Vector cost_pos = Vector::Constant(m, inf), cost_neg = Vector::Constant(m, inf);
  std::vector<Eigen::Index> col_pos(static_cast<std::size_t>(m), -1), col_neg(static_cast<std::size_t>(m), -1);
  for (Eigen::Index j = 0; j < n; ++j) {
    if (prob.integrality[static_cast<std::size_t>(j)]) continue;
    Eigen::Index row = -1;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (prob.eq_matrix(i, j) == 0) continue;
      if (row >= 0 || std::abs(prob.eq_matrix(i, j)) != 1) throw StructuralError("continuous column is not a signed unit vector");
      row = i;
    }
    if (prob.lower[j] != 0 || std::isfinite(prob.upper[j]) || prob.objective[j] < 0)
      throw StructuralError("continuous column must have bounds [0, inf) and non-negative cost");
    if (row < 0) continue;
    const auto r = static_cast<std::size_t>(row);
    if (prob.eq_matrix(row, j) > 0 && prob.objective[j] < cost_pos[row]) {
      cost_pos[row] = prob.objective[j];
      col_pos[r] = j;
    } else if (prob.eq_matrix(row, j) < 0 && prob.objective[j] < cost_neg[row]) {
      cost_neg[row] = prob.objective[j];
      col_neg[r] = j;
    }
  }

  MilpSolution<Scalar> out;
  Vector x = prob.lower;
  for (auto j : ints) x[j] = std::ceil(prob.lower[j]);
  Scalar best = inf;
  Vector best_x;
  std::size_t visited = 0;
  bool done = false;
  while (!done) {
    ++visited;
    Scalar obj = 0;
    Vector residual = prob.eq_rhs;
    for (auto j : ints) {
      obj += prob.objective[j] * x[j];
      residual -= prob.eq_matrix.col(j) * x[j];
    }
    bool feasible = true;
    for (Eigen::Index i = 0; i < m && feasible; ++i) {
      if (residual[i] > 0) {
        if (col_pos[static_cast<std::size_t>(i)] < 0) feasible = false;
        else obj += cost_pos[i] * residual[i];
      } else if (residual[i] < 0) {
        if (col_neg[static_cast<std::size_t>(i)] < 0) feasible = false;
        else obj += cost_neg[i] * -residual[i];
      }
    }
    if (feasible && obj < best) {
      best = obj;
      best_x = x;
      for (Eigen::Index j = 0; j < n; ++j)
        if (!prob.integrality[static_cast<std::size_t>(j)]) best_x[j] = 0;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (residual[i] > 0) best_x[col_pos[static_cast<std::size_t>(i)]] = residual[i];
        else if (residual[i] < 0) best_x[col_neg[static_cast<std::size_t>(i)]] = -residual[i];
      }
    }
    // Odometer increment.
    done = true;
    for (auto j : ints) {
      if (x[j] + 1 <= std::floor(prob.upper[j])) {
        x[j] += 1;
        done = false;
        break;
      }
      x[j] = std::ceil(prob.lower[j]);
    }
  }

  out.nodes_explored = visited;
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (std::isfinite(best)) {
    out.status = MilpStatus::Optimal;
    out.has_solution = true;
    out.x = best_x;
    out.objective_value = best;
  }
  return out;
}

using MilpSolutiond = MilpSolution<double>;

}  // namespace mealopt
