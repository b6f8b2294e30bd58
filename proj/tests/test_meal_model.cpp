#include "helpers.hpp"
#include "mealopt/examples.hpp"
#include "mealopt/meal_model.hpp"

#include <doctest.h>

using namespace mealopt;

namespace {

void check_macros(const MacroVector& v, double c, double p, double cb, double f) {
  CHECK(v[0] == doctest::Approx(c).epsilon(1e-4));
  CHECK(v[1] == doctest::Approx(p).epsilon(1e-4));
  CHECK(v[2] == doctest::Approx(cb).epsilon(1e-4));
  CHECK(v[3] == doctest::Approx(f).epsilon(1e-4));
}

}  // namespace

TEST_CASE("targets from calories and percentage split") {
  check_macros(derive_targets({600, 30, 45, 25}), 600, 45, 67.5, 16.6667);
  check_macros(derive_targets({1000, 10, 75, 15}), 1000, 25, 187.5, 16.6667);
  check_macros(derive_targets({400, 100, 0, 0}), 400, 100, 0, 0);
  CHECK_THROWS_AS(derive_targets({600, 30, 45, 20}), ValidationError);
  CHECK_THROWS_AS(derive_targets({0, 30, 45, 25}), ValidationError);
  CHECK_THROWS_AS(derive_targets({600, -5, 80, 25}), ValidationError);
}

TEST_CASE("per-serving coefficients") {
  Food chicken{"chicken breast", make_macros(165, 31, 0, 3.6), 50, 0, 6};
  check_macros(per_serving(chicken), 82.5, 15.5, 0, 1.8);
  Food oil{"olive oil", make_macros(884, 0, 0, 100), 15, 0, 2};
  check_macros(per_serving(oil), 132.6, 0, 0, 15);
}

TEST_CASE("food validation") {
  Food f{"x", make_macros(100, 1, 1, 1), 100, 0, 5};
  CHECK_NOTHROW(f.validate());
  f.serving_g = 0;
  CHECK_THROWS_AS(f.validate(), ValidationError);
  f.serving_g = 100;
  f.min_servings = 6;
  CHECK_THROWS_AS(f.validate(), ValidationError);
  f.min_servings = 0;
  f.per100g[1] = -1;
  CHECK_THROWS_AS(f.validate(), ValidationError);
}

TEST_CASE("weights") {
  const MacroVector t = derive_targets({600, 30, 45, 25});
  const MacroVector w = compute_weights(t, WeightScheme::inverse_target());
  CHECK(w[1] / w[0] == doctest::Approx(600.0 / 45.0));
  const MacroVector zero_carb = compute_weights(derive_targets({400, 100, 0, 0}), WeightScheme::inverse_target());
  CHECK(zero_carb[2] == 1.0);
  CHECK(compute_weights(t, WeightScheme::equal()) == MacroVector::Ones());
  const MacroVector dp = compute_weights(t, WeightScheme::double_protein());
  CHECK(dp[1] == doctest::Approx(2 * w[1]));
  CHECK(dp[0] == doctest::Approx(w[0]));
}

TEST_CASE("goal program layout") {
  const auto& a = worked_example('A');
  const MacroVector t = derive_targets(a.target);
  const MacroVector w = compute_weights(t, WeightScheme::inverse_target());
  const auto lp = build_migp(a.foods, t, w);
  CHECK(lp.num_vars() == 13);
  CHECK(lp.num_rows() == 4);
  CHECK(build_migp(worked_example('D').foods, t, w).num_vars() == static_cast<Eigen::Index>(worked_example('D').foods.size() + 8));

  // All servings at zero: the deviation-only point costs sum(w * T).
  Eigen::VectorXd x = Eigen::VectorXd::Zero(13);
  x.segment(5 + 4, 4) = t;
  CHECK((lp.eq_matrix * x - lp.eq_rhs).norm() <= 1e-12);
  CHECK(lp.objective.dot(x) == doctest::Approx(w.dot(t)));
}

TEST_CASE("pre-check") {
  std::vector<Food> foods = {{"a", make_macros(100, 10, 0, 0), 100, 0, 2}, {"b", make_macros(200, 21, 0, 0), 100, 0, 2}};
  const auto s = precheck_feasibility(foods, make_macros(500, 80, 0, 0));
  REQUIRE(s);
  CHECK(s->macro == Macro::Protein);
  CHECK(s->message() == "Cannot reach protein target of 80 g. Maximum achievable: 62 g.");
  CHECK(!precheck_feasibility(foods, make_macros(500, 50, 0, 0)));
  const auto& a = worked_example('A');
  CHECK(!precheck_feasibility(a.foods, derive_targets(a.target)));
}

TEST_CASE("evaluate example A allocation") {
  const auto& a = worked_example('A');
  const MacroVector t = derive_targets(a.target);
  const MacroVector w = compute_weights(t, WeightScheme::inverse_target());
  Eigen::VectorXi x(5);
  x << 2, 3, 5, 3, 0;
  const auto r = evaluate(a.foods, x, t, w);
  CHECK(r.objective == doctest::Approx(0.1654).epsilon(1e-3));
  CHECK(*r.deviation_pct[0] == doctest::Approx(-1.4).epsilon(0.05));
  CHECK(*r.deviation_pct[1] == doctest::Approx(-4.8).epsilon(0.05));
  CHECK(*r.deviation_pct[2] == doctest::Approx(0.7).epsilon(0.1));
  CHECK(*r.deviation_pct[3] == doctest::Approx(9.7).epsilon(0.05));
  CHECK(r.feasible());
  CHECK(r.total_servings() == 13);

  const auto empty = evaluate(a.foods, std::vector<Allocation>{}, t, w);
  CHECK(empty.objective == doctest::Approx(4.0));
  CHECK_THROWS_AS(evaluate(a.foods, std::vector<Allocation>{{"unicorn", 1}}, t, w), ValidationError);
  CHECK_THROWS_AS(evaluate(a.foods, std::vector<Allocation>{{a.foods[0].name, 99}}, t, w), ValidationError);
}

TEST_CASE("evaluate example C allocation") {
  const auto& c = worked_example('C');
  const MacroVector t = derive_targets(c.target);
  const MacroVector w = compute_weights(t, WeightScheme::inverse_target());
  Eigen::VectorXi x(8);
  x << 2, 1, 2, 1, 1, 1, 3, 1;
  const auto r = evaluate(c.foods, x, t, w);
  CHECK(r.achieved[0] == doctest::Approx(769.6).epsilon(1e-3));
  CHECK(*r.deviation_pct[3] == doctest::Approx(121.2).epsilon(2e-3));
  CHECK(r.objective == doctest::Approx(1.5557).epsilon(1e-3));
}

TEST_CASE("property: energy consistency of bank-style foods and weight normalization") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto foods = testing::random_foods(rng, 1, 0, 3);
    const MacroVector c = per_serving(foods[0]);
    CHECK(c[0] == doctest::Approx(4 * c[1] + 4 * c[2] + 9 * c[3]));
    const MacroVector t = derive_targets(testing::random_target(rng));
    const MacroVector w = compute_weights(t, WeightScheme::inverse_target());
    for (int i = 0; i < 4; ++i)
      CHECK(w[i] * std::max(t[i], 1.0) == doctest::Approx(1.0));
    // Macro energy adds back up to the calorie target.
    CHECK(4 * t[1] + 4 * t[2] + 9 * t[3] == doctest::Approx(t[0]));
  }
}
