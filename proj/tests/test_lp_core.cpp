#include "helpers.hpp"
#include "mealopt/examples.hpp"
#include "mealopt/lp_core.hpp"
#include "mealopt/meal_model.hpp"

#include <doctest.h>

using namespace mealopt;

namespace {

LinearProgramd example_relaxation(char id) {
  const auto& ex = worked_example(id);
  const MacroVector t = derive_targets(ex.target);
  return build_migp(ex.foods, t, compute_weights(t, WeightScheme::inverse_target()));
}

void check_feasible(const LinearProgramd& lp, const LpSolutiond& s) {
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK((lp.eq_matrix * s.x - lp.eq_rhs).cwiseAbs().maxCoeff() <= 1e-7);
  for (Eigen::Index j = 0; j < lp.num_vars(); ++j) {
    CHECK(s.x[j] >= lp.lower[j] - 1e-9);
    CHECK(s.x[j] <= lp.upper[j] + 1e-9);
  }
}

}  // namespace

TEST_CASE("example A relaxation meets every goal exactly") {
  const auto lp = example_relaxation('A');
  const auto s = solve_lp(lp);
  check_feasible(lp, s);
  CHECK(std::abs(s.objective_value) <= 1e-9);
}

TEST_CASE("example C relaxation objective") {
  const auto lp = example_relaxation('C');
  const auto s = solve_lp(lp);
  check_feasible(lp, s);
  CHECK(std::abs(s.objective_value - 1.5394) <= 5e-4);
}

TEST_CASE("single food fits a calorie-only target") {
  Food f{"f", make_macros(100, 0, 0, 0), 100, 0, 10};
  const MacroVector t = make_macros(300, 0, 0, 0);
  const MacroVector w = make_macros(1.0 / 300, 0, 0, 0);
  const auto lp = build_migp({f}, t, w);
  const auto s = solve_lp(lp);
  check_feasible(lp, s);
  CHECK(s.x[0] == doctest::Approx(3.0));
  CHECK(s.objective_value == doctest::Approx(0.0));
}

TEST_CASE("structural errors are distinct from infeasibility") {
  LinearProgramd lp;
  lp.objective = Eigen::VectorXd::Ones(2);
  lp.eq_matrix = Eigen::MatrixXd::Ones(1, 3);
  lp.eq_rhs = Eigen::VectorXd::Ones(1);
  lp.lower = Eigen::VectorXd::Zero(2);
  lp.upper = Eigen::VectorXd::Ones(2);
  lp.integrality.assign(2, false);
  CHECK_THROWS_AS(solve_lp(lp), StructuralError);

  lp.eq_matrix = Eigen::MatrixXd::Ones(1, 2);
  lp.lower[0] = 2;
  CHECK_THROWS_AS(solve_lp(lp), StructuralError);

  lp.lower[0] = -LinearProgramd::infinity();
  CHECK_THROWS_AS(solve_lp(lp), StructuralError);
}

TEST_CASE("infeasible and unbounded programs are diagnosed") {
  LinearProgramd lp;
  lp.objective = Eigen::VectorXd::Zero(2);
  lp.eq_matrix = Eigen::MatrixXd::Ones(1, 2);
  lp.eq_rhs = Eigen::VectorXd::Constant(1, 5.0);
  lp.lower = Eigen::VectorXd::Zero(2);
  lp.upper = Eigen::VectorXd::Ones(2);
  lp.integrality.assign(2, false);
  CHECK(solve_lp(lp).status == LpStatus::Infeasible);

  // min -x0 with x0 = x1, both unbounded above.
  lp.objective << -1, 0;
  lp.eq_matrix << 1, -1;
  lp.eq_rhs << 0;
  lp.upper.setConstant(LinearProgramd::infinity());
  CHECK(solve_lp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("iteration cap raises a diagnostic naming the cap") {
  const auto lp = example_relaxation('C');
  SimplexOptions opt;
  opt.iteration_cap = 1;
  try {
    solve_lp(lp, opt);
    FAIL("expected IterationLimitError");
  } catch (const IterationLimitError& e) {
    CHECK(std::string(e.what()).find("1") != std::string::npos);
  }
}

TEST_CASE("Beale's cycling example terminates at the optimum") {
  // Dantzig pricing cycles on this program without an anti-cycling rule.
  LinearProgramd lp;
  lp.objective = Eigen::VectorXd::Zero(7);
  lp.objective << 0, 0, 0, -0.75, 150, -0.02, 6;
  lp.eq_matrix = Eigen::MatrixXd::Zero(3, 7);
  lp.eq_matrix.row(0) << 1, 0, 0, 0.25, -60, -0.04, 9;
  lp.eq_matrix.row(1) << 0, 1, 0, 0.5, -90, -0.02, 3;
  lp.eq_matrix.row(2) << 0, 0, 1, 0, 0, 1, 0;
  lp.eq_rhs = Eigen::Vector3d(0, 0, 1);
  lp.lower = Eigen::VectorXd::Zero(7);
  lp.upper = Eigen::VectorXd::Constant(7, LinearProgramd::infinity());
  lp.integrality.assign(7, false);
  for (std::size_t stall : {std::size_t{1}, std::size_t{50}}) {
    SimplexOptions opt;
    opt.stall_threshold = stall;
    const auto s = solve_lp(lp, opt);
    check_feasible(lp, s);
    CHECK(s.objective_value == doctest::Approx(-0.05));
  }
}

TEST_CASE("redundant rows are tolerated") {
  LinearProgramd lp;
  lp.objective = Eigen::Vector2d(1, 2);
  lp.eq_matrix = Eigen::MatrixXd(2, 2);
  lp.eq_matrix << 1, 1, 2, 2;
  lp.eq_rhs = Eigen::Vector2d(3, 6);
  lp.lower = Eigen::Vector2d::Zero();
  lp.upper = Eigen::Vector2d(2, 5);
  lp.integrality.assign(2, false);
  const auto s = solve_lp(lp);
  check_feasible(lp, s);
  CHECK(s.objective_value == doctest::Approx(4.0));
}

TEST_CASE("scalar type is a template parameter") {
  LinearProgram<long double> lp;
  lp.objective = Eigen::Matrix<long double, 2, 1>(1, 1);
  lp.eq_matrix = Eigen::Matrix<long double, 1, 2>(1, 2);
  lp.eq_rhs = Eigen::Matrix<long double, 1, 1>(4);
  lp.lower = Eigen::Matrix<long double, 2, 1>::Zero();
  lp.upper = Eigen::Matrix<long double, 2, 1>::Constant(10);
  lp.integrality.assign(2, false);
  const auto s = solve_lp(lp);
  REQUIRE(s.status == LpStatus::Optimal);
  CHECK(static_cast<double>(s.objective_value) == doctest::Approx(2.0));
}

TEST_CASE("property: relaxation lower-bounds every completed integer point") {
  std::mt19937_64 rng(7);
  for (int inst = 0; inst < 60; ++inst) {
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    const auto foods = testing::random_foods(rng, n, 0, 8);
    const MacroVector t = derive_targets(testing::random_target(rng));
    const MacroVector w = compute_weights(t, WeightScheme::inverse_target());
    const auto lp = build_migp(foods, t, w);
    const auto s = solve_lp(lp);
    check_feasible(lp, s);
    const auto c = coefficient_matrix(foods);
    for (int k = 0; k < 100; ++k) {
      Eigen::VectorXd x(n);
      for (int i = 0; i < n; ++i)
        x[i] = std::uniform_int_distribution<int>(foods[i].min_servings, foods[i].max_servings)(rng);
      CHECK(s.objective_value <= weighted_deviation(c, x, t, w) + 1e-9);
    }
    // Determinism: bitwise-identical output.
    const auto again = solve_lp(lp);
    CHECK(again.x == s.x);
    CHECK(again.iterations == s.iterations);
  }
}
