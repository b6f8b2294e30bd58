#pragma once

// Dense bounded-variable revised simplex for small equality-form programs:
//
//   min  c'x   s.t.  A x = b,  lower <= x <= upper
//
// Lower bounds must be finite; upper bounds may be +inf. Problems in this
// project have at most a few dozen columns and a handful of rows.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace mealopt {

/// Thrown when a program's dimensions or bounds are inconsistent. Distinct
/// from an Infeasible status, which is a property of a well-formed program.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IterationLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename Scalar>
struct LinearProgram {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Vector objective;
  Matrix eq_matrix;
  Vector eq_rhs;
  Vector lower;
  Vector upper;
  // Consumed by branch-and-bound only.
  std::vector<bool> integrality;

  Eigen::Index num_vars() const { return objective.size(); }
  Eigen::Index num_rows() const { return eq_matrix.rows(); }

  static Scalar infinity() { return std::numeric_limits<Scalar>::infinity(); }

  void validate() const {
    const auto n = objective.size();
    auto fail = [](const std::string& what) { throw StructuralError("LinearProgram: " + what); };
    if (eq_matrix.cols() != n) fail("eq_matrix has " + std::to_string(eq_matrix.cols()) + " columns, objective has " + std::to_string(n));
    if (eq_rhs.size() != eq_matrix.rows()) fail("eq_rhs length does not match eq_matrix rows");
    if (lower.size() != n || upper.size() != n) fail("bound vectors do not match variable count");
    if (integrality.size() != static_cast<std::size_t>(n)) fail("integrality mask does not match variable count");
    if (!objective.allFinite() || !eq_matrix.allFinite() || !eq_rhs.allFinite()) fail("non-finite coefficient");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (!std::isfinite(lower[j])) fail("lower bound of variable " + std::to_string(j) + " is not finite");
      if (std::isnan(upper[j]) || upper[j] == -infinity()) fail("upper bound of variable " + std::to_string(j) + " is invalid");
      if (lower[j] > upper[j]) fail("lower > upper for variable " + std::to_string(j));
    }
  }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

template <typename Scalar>
struct LpSolution {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  LpStatus status = LpStatus::Infeasible;
  Vector x;
  Scalar objective_value = 0;
  std::size_t iterations = 0;
  // Row duals and column reduced costs of the final basis (Optimal only).
  Vector duals;
  Vector reduced_costs;
};

struct SimplexOptions {
  double pivot_tol = 1e-10;
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  std::size_t iteration_cap = 10000;
  // Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t stall_threshold = 50;
};

namespace detail {

// Dense bounded-variable simplex with an explicitly maintained basis
// inverse (product-form updates, periodic refactorization).
template <typename Scalar>
class BoundedSimplex {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  BoundedSimplex(const LinearProgram<Scalar>& prob, const Vector& lower, const Vector& upper, const SimplexOptions& opt)
      : opt_(opt), m_(prob.num_rows()), n_(prob.num_vars()) {
    // Columns: structural [0, n), artificial [n, n+m).
    const Eigen::Index total = n_ + m_;
    a_.setZero(m_, total);
    a_.leftCols(n_) = prob.eq_matrix;
    lo_.resize(total);
    hi_.resize(total);
    lo_.head(n_) = lower;
    hi_.head(n_) = upper;
    lo_.tail(m_).setZero();
    hi_.tail(m_).setConstant(LinearProgram<Scalar>::infinity());
    cost_ = prob.objective;
    b_ = prob.eq_rhs;

    x_ = lo_;
    x_.tail(m_).setZero();
    const Vector residual = b_ - prob.eq_matrix * x_.head(n_);
    basis_.resize(m_);
    is_basic_.assign(static_cast<std::size_t>(total), false);
    binv_ = Matrix::Zero(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) {
      const Scalar sign = residual[i] < 0 ? Scalar(-1) : Scalar(1);
      a_(i, n_ + i) = sign;
      binv_(i, i) = sign;
      basis_[i] = n_ + i;
      is_basic_[static_cast<std::size_t>(n_ + i)] = true;
      x_[n_ + i] = std::abs(residual[i]);
    }
  }

  LpSolution<Scalar> run() {
    LpSolution<Scalar> out;
    const Eigen::Index total = n_ + m_;

    // Phase 1: minimize the sum of artificials.
    Vector phase1 = Vector::Zero(total);
    phase1.tail(m_).setOnes();
    if (iterate(phase1, /*allow_unbounded=*/false) != LpStatus::Optimal) {
      out.status = LpStatus::Infeasible;
      out.iterations = iterations_;
      return out;
    }
    const Scalar infeas = x_.tail(m_).sum();
    const Scalar scale = std::max<Scalar>(Scalar(1), m_ > 0 ? b_.cwiseAbs().maxCoeff() : Scalar(1));
    if (infeas > Scalar(opt_.feasibility_tol) * scale) {
      out.status = LpStatus::Infeasible;
      out.iterations = iterations_;
      return out;
    }
    drive_out_artificials();
    for (Eigen::Index k = n_; k < total; ++k) {
      hi_[k] = 0;
      if (!is_basic_[static_cast<std::size_t>(k)]) x_[k] = 0;
    }

    // Phase 2.
    Vector phase2 = Vector::Zero(total);
    phase2.head(n_) = cost_;
    stalled_ = 0;
    bland_ = false;
    const LpStatus st = iterate(phase2, /*allow_unbounded=*/true);
    out.iterations = iterations_;
    out.status = st;
    if (st != LpStatus::Optimal) return out;

    refactor();
    // Snap into bounds; residual violations are within the feasibility tolerance.
    for (Eigen::Index j = 0; j < n_; ++j) x_[j] = std::clamp(x_[j], lo_[j], hi_[j]);
    out.x = x_.head(n_);
    out.objective_value = cost_.dot(out.x);

    const Vector y = duals(phase2);
    out.duals = y;
    out.reduced_costs = cost_ - a_.leftCols(n_).transpose() * y;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[i] < n_) out.reduced_costs[basis_[i]] = 0;
    return out;
  }

 private:
  // Rebuilds B^-1 from scratch and recomputes basic values.
  void refactor() {
    if (m_ == 0) return;
    Matrix bm(m_, m_);
    for (Eigen::Index i = 0; i < m_; ++i) bm.col(i) = a_.col(basis_[i]);
    binv_ = bm.partialPivLu().inverse();
    Vector rhs = b_;
    for (Eigen::Index j = 0; j < a_.cols(); ++j)
      if (!is_basic_[static_cast<std::size_t>(j)] && x_[j] != 0) rhs.noalias() -= a_.col(j) * x_[j];
    const Vector xb = binv_ * rhs;
    for (Eigen::Index i = 0; i < m_; ++i) x_[basis_[i]] = xb[i];
    since_refactor_ = 0;
  }

  Vector duals(const Vector& cost) const {
    Vector cb(m_);
    for (Eigen::Index i = 0; i < m_; ++i) cb[i] = cost[basis_[i]];
    return binv_.transpose() * cb;
  }

  void pivot(Eigen::Index row, const Vector& u) {
    const Scalar p = u[row];
    binv_.row(row) /= p;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (i != row && u[i] != 0) binv_.row(i) -= u[i] * binv_.row(row);
  }

  LpStatus iterate(const Vector& cost, bool allow_unbounded) {
    const Scalar opt_tol = Scalar(opt_.optimality_tol);
    const Scalar piv_tol = Scalar(opt_.pivot_tol);
    const Eigen::Index total = a_.cols();
    Vector y(m_), reduced(total), u(m_);
    for (;;) {
      if (iterations_ >= opt_.iteration_cap)
        throw IterationLimitError("simplex iteration cap of " + std::to_string(opt_.iteration_cap) + " exceeded");

      y = duals(cost);
      reduced.noalias() = cost - a_.transpose() * y;

      // Pricing: Dantzig, or lowest eligible index once stalled.
      Eigen::Index entering = -1;
      Scalar best = 0;
      int direction = 0;
      for (Eigen::Index j = 0; j < total; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)] || lo_[j] == hi_[j]) continue;
        const Scalar d = reduced[j];
        int dir = 0;
        if (x_[j] <= lo_[j] && d < -opt_tol) dir = 1;
        else if (x_[j] >= hi_[j] && d > opt_tol) dir = -1;
        if (dir == 0) continue;
        if (bland_) {
          entering = j;
          direction = dir;
          break;
        }
        if (std::abs(d) > best) {
          best = std::abs(d);
          entering = j;
          direction = dir;
        }
      }
      if (entering < 0) return LpStatus::Optimal;

      u.noalias() = binv_ * a_.col(entering);

      // Ratio test. x_B moves by -direction * t * u.
      Scalar step = hi_[entering] - lo_[entering];
      Eigen::Index leave_row = -1;
      bool leave_to_upper = false;
      Scalar leave_pivot = 0;
      for (Eigen::Index i = 0; i < m_; ++i) {
        const Scalar rate = -Scalar(direction) * u[i];
        const Eigen::Index var = basis_[i];
        Scalar t;
        bool to_upper;
        if (rate < -piv_tol) {
          t = std::max<Scalar>(0, (x_[var] - lo_[var]) / -rate);
          to_upper = false;
        } else if (rate > piv_tol && std::isfinite(hi_[var])) {
          t = std::max<Scalar>(0, (hi_[var] - x_[var]) / rate);
          to_upper = true;
        } else {
          continue;
        }
        bool take = false;
        if (t < step) {
          take = true;
        } else if (t == step && leave_row >= 0) {
          if (bland_) take = var < basis_[leave_row];
          else take = std::abs(u[i]) > leave_pivot || (std::abs(u[i]) == leave_pivot && var < basis_[leave_row]);
        }
        if (take) {
          step = t;
          leave_row = i;
          leave_to_upper = to_upper;
          leave_pivot = std::abs(u[i]);
        }
      }

      if (!std::isfinite(step)) {
        if (allow_unbounded) return LpStatus::Unbounded;
        // Phase 1 is bounded below by zero; treat as numerical breakdown.
        return LpStatus::Infeasible;
      }

      ++iterations_;
      if (step <= Scalar(0)) {
        if (++stalled_ >= opt_.stall_threshold) bland_ = true;
      } else {
        stalled_ = 0;
      }

      if (step > 0) {
        x_[entering] += Scalar(direction) * step;
        for (Eigen::Index i = 0; i < m_; ++i) x_[basis_[i]] -= Scalar(direction) * step * u[i];
      }

      if (leave_row < 0) {
        // Bound flip: entering variable traverses its whole box.
        x_[entering] = direction > 0 ? hi_[entering] : lo_[entering];
        continue;
      }
      const Eigen::Index leaving = basis_[leave_row];
      x_[leaving] = leave_to_upper ? hi_[leaving] : lo_[leaving];
      is_basic_[static_cast<std::size_t>(leaving)] = false;
      is_basic_[static_cast<std::size_t>(entering)] = true;
      basis_[leave_row] = entering;
      pivot(leave_row, u);
      if (++since_refactor_ >= kRefactorInterval) refactor();
    }
  }

  // After Phase 1, replace any artificial still basic (at zero) by a
  // structural column with a usable pivot in its row; redundant rows keep
  // their artificial, which is then fixed at zero.
  void drive_out_artificials() {
    for (Eigen::Index i = 0; i < m_; ++i) {
      if (basis_[i] < n_) continue;
      const Vector row = binv_.row(i).transpose();
      Eigen::Index pick = -1;
      Scalar best = Scalar(opt_.pivot_tol) * 1e3;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (is_basic_[static_cast<std::size_t>(j)]) continue;
        const Scalar alpha = std::abs(row.dot(a_.col(j)));
        if (alpha > best) {
          best = alpha;
          pick = j;
        }
      }
      if (pick < 0) continue;
      const Eigen::Index art = basis_[i];
      is_basic_[static_cast<std::size_t>(art)] = false;
      x_[art] = 0;
      is_basic_[static_cast<std::size_t>(pick)] = true;
      basis_[i] = pick;
      refactor();
    }
  }

  static constexpr std::size_t kRefactorInterval = 32;

  SimplexOptions opt_;
  Eigen::Index m_;
  Eigen::Index n_;
  Matrix a_;
  Matrix binv_;
  Vector lo_, hi_, cost_, b_, x_;
  std::vector<Eigen::Index> basis_;
  std::vector<bool> is_basic_;
  std::size_t iterations_ = 0;
  std::size_t since_refactor_ = 0;
  std::size_t stalled_ = 0;
  bool bland_ = false;
};

}  // namespace detail

/// Solves the continuous program (the integrality mask is ignored).
/// Deterministic: identical input produces bitwise-identical output.
template <typename Scalar>
LpSolution<Scalar> solve_lp(const LinearProgram<Scalar>& prob, const SimplexOptions& opt = {}) {
  prob.validate();
  detail::BoundedSimplex<Scalar> simplex(prob, prob.lower, prob.upper, opt);
  return simplex.run();
}

/// Same program with replacement variable bounds; `prob` itself must already
/// be valid. Used by branch-and-bound to avoid copying the program per node.
template <typename Scalar>
LpSolution<Scalar> solve_lp_with_bounds(const LinearProgram<Scalar>& prob,
                                        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& lower,
                                        const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& upper,
                                        const SimplexOptions& opt = {}) {
  if (lower.size() != prob.num_vars() || upper.size() != prob.num_vars())
    throw StructuralError("bound override does not match variable count");
  detail::BoundedSimplex<Scalar> simplex(prob, lower, upper, opt);
  return simplex.run();
}

using LinearProgramd = LinearProgram<double>;
using LpSolutiond = LpSolution<double>;

}  // namespace mealopt
