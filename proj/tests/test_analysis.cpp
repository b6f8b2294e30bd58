#include "helpers.hpp"
#include "mealopt/analysis.hpp"
#include "mealopt/examples.hpp"
#include "mealopt/methods.hpp"

#include <doctest.h>

using namespace mealopt;

TEST_CASE("example C gap is about one percent") {
  const auto& c = worked_example('C');
  const auto g = integrality_gap(c.foods, derive_targets(c.target), WeightScheme::inverse_target());
  REQUIRE(g.gamma_is_relative());
  CHECK(g.gamma_value() == doctest::Approx(0.0106).epsilon(0.03));
  CHECK(g.regime == GapRegime::ImperfectContinuous);
  CHECK(!g.lp_deviation_zero);
  CHECK(g.mip_optimal);
}

TEST_CASE("gap regimes") {
  const auto both_zero = make_gap_report(0, 0);
  CHECK(both_zero.gamma_is_relative());
  CHECK(both_zero.gamma_value() == 0.0);
  CHECK(both_zero.regime == GapRegime::PerfectContinuous);

  const auto absolute = make_gap_report(0, 0.024);
  CHECK(!absolute.gamma_is_relative());
  CHECK(absolute.gamma_value() == doctest::Approx(0.024));
  CHECK(absolute.absolute_gap() == doctest::Approx(0.024));

  CHECK(classify_regime(5e-10) == GapRegime::PerfectContinuous);
  CHECK(classify_regime(1e-3) == GapRegime::ImperfectContinuous);
  CHECK(to_string(GapRegime::PerfectContinuous) == "perfect_continuous");

  const auto rel = make_gap_report(2.0, 2.5);
  CHECK(rel.gamma_value() == doctest::Approx(0.25));
}

TEST_CASE("example A has zero relaxation deviation") {
  const auto& a = worked_example('A');
  const auto g = integrality_gap(a.foods, derive_targets(a.target), WeightScheme::inverse_target());
  CHECK(g.lp_deviation_zero);
  CHECK(g.regime == GapRegime::PerfectContinuous);
  CHECK(!g.gamma_is_relative());
  CHECK(g.gamma_value() == doctest::Approx(0.1654).epsilon(3e-3));
}

TEST_CASE("absorption bound on the worked examples") {
  for (char id : {'A', 'C'}) {
    const auto& ex = worked_example(id);
    const MacroVector t = derive_targets(ex.target);
    const auto gp = solve_gp_rounding(ex.foods, t, WeightScheme::inverse_target());
    Eigen::VectorXi x(static_cast<Eigen::Index>(ex.foods.size()));
    for (std::size_t i = 0; i < ex.foods.size(); ++i) x[static_cast<Eigen::Index>(i)] = gp.servings_of(ex.foods[i].name);
    const auto chk = absorption_check(ex.foods, t, WeightScheme::inverse_target(), x);
    CHECK(chk.holds);
    CHECK(chk.achieved == doctest::Approx(gp.objective));
  }
}

TEST_CASE("absorption with an integral relaxation is tight") {
  std::vector<Food> foods = {{"p", make_macros(400, 100, 0, 0), 100, 0, 5},
                             {"c", make_macros(400, 0, 100, 0), 100, 0, 5}};
  const MacroVector t = make_macros(1200, 100, 200, 0);
  Eigen::VectorXi x(2);
  x << 1, 2;
  const auto chk = absorption_check(foods, t, WeightScheme::inverse_target(), x);
  CHECK(chk.holds);
  CHECK(chk.delta.norm() <= 1e-9);
  CHECK(chk.achieved == doctest::Approx(chk.bound));
  x << 0, 6;
  CHECK_THROWS_AS(absorption_check(foods, t, WeightScheme::inverse_target(), x), ValidationError);
}

TEST_CASE("property: random roundings respect the absorption bound") {
  std::mt19937_64 rng(17);
  for (int inst = 0; inst < 30; ++inst) {
    const int n = std::uniform_int_distribution<int>(3, 15)(rng);
    const auto foods = testing::random_foods(rng, n, 0, 8);
    const MacroVector t = derive_targets(testing::random_target(rng));
    const MacroVector w = compute_weights(t, WeightScheme::inverse_target());
    const auto lp = solve_relaxation(foods, t, w);
    for (int k = 0; k < 100; ++k) {
      const Eigen::VectorXi x = random_rounding(foods, lp.servings, rng);
      for (int j = 0; j < n; ++j) {
        CHECK(x[j] >= foods[static_cast<std::size_t>(j)].min_servings);
        CHECK(x[j] <= foods[static_cast<std::size_t>(j)].max_servings);
      }
      CHECK(absorption_check(foods, t, w, lp, x).holds);
    }
  }
}
