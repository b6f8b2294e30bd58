#include "helpers.hpp"
#include "mealopt/examples.hpp"
#include "mealopt/methods.hpp"

#include <doctest.h>

using namespace mealopt;

namespace {

struct Solved {
  SolverResult migp, gp, hard;
};

Solved solve_example(char id) {
  const auto& ex = worked_example(id);
  const MacroVector t = derive_targets(ex.target);
  const auto s = WeightScheme::inverse_target();
  return {solve_migp(ex.foods, t, s), solve_gp_rounding(ex.foods, t, s), solve_hard_ip(ex.foods, t, s)};
}

}  // namespace

TEST_CASE("worked example objectives") {
  for (const auto& ex : worked_examples()) {
    CAPTURE(ex.id);
    const auto r = solve_example(ex.id);
    CHECK(std::abs(r.migp.objective - ex.expected.migp) <= 5e-4);
    CHECK(r.migp.status == SolveStatus::Optimal);
    CHECK(r.hard.feasible() == ex.expected.hard_ip.has_value());
    if (ex.expected.hard_ip) {
      CHECK(std::abs(r.hard.objective - *ex.expected.hard_ip) <= 5e-4);
      CHECK(std::abs(r.hard.max_dev_pct() - *ex.expected.hard_ip_max_dev_pct) <= 0.2);
    } else {
      CHECK(!r.hard.note.empty());
    }
  }
}

TEST_CASE("rounded relaxation objectives on the reproducible examples") {
  for (char id : {'A', 'C', 'D', 'E'}) {
    CAPTURE(id);
    CHECK(std::abs(solve_example(id).gp.objective - worked_example(id).expected.gp_round) <= 5e-4);
  }
}

TEST_CASE("example E keeps the mandatory whey serving") {
  const auto r = solve_example('E');
  CHECK(r.migp.servings_of("whey protein powder") >= 1);
  CHECK(r.gp.servings_of("whey protein powder") >= 1);
}

TEST_CASE("single food matched exactly at two servings") {
  Food f{"f", make_macros(250, 20, 25, 8), 100, 0, 5};
  const MacroVector t = per_serving(f) * 2;
  const auto s = WeightScheme::inverse_target();
  for (const auto& kind : {MethodKind::migp(), MethodKind::gp_rounding(), MethodKind::hard_ip()}) {
    const auto r = run_method(kind, {f}, t, s);
    REQUIRE(r.feasible());
    CHECK(r.servings_of("f") == 2);
    CHECK(r.objective == doctest::Approx(0.0).scale(1));
    CHECK(r.solve_ms >= 0);
  }
}

TEST_CASE("integral relaxation: rounding equals the integer optimum") {
  std::vector<Food> foods = {{"p", make_macros(400, 100, 0, 0), 100, 0, 5},
                             {"c", make_macros(400, 0, 100, 0), 100, 0, 5},
                             {"f", make_macros(900, 0, 0, 100), 100, 0, 5}};
  const MacroVector t = make_macros(2 * 400 + 3 * 400 + 900, 200, 300, 100);
  const auto s = WeightScheme::inverse_target();
  const auto m = solve_migp(foods, t, s);
  const auto g = solve_gp_rounding(foods, t, s);
  CHECK(m.objective == doctest::Approx(g.objective));
  CHECK(m.servings_of("p") == 2);
  CHECK(g.servings_of("c") == 3);
}

TEST_CASE("hard bands hold on every macro") {
  std::mt19937_64 rng(11);
  int feasible = 0;
  for (int inst = 0; inst < 40; ++inst) {
    const auto foods = testing::random_foods(rng, 8, 0, 6);
    const MacroVector t = derive_targets(testing::random_target(rng));
    for (double tol : {0.05, 0.3, 0.99}) {
      const auto r = solve_hard_ip(foods, t, WeightScheme::inverse_target(), tol);
      if (!r.feasible()) continue;
      ++feasible;
      for (int i = 0; i < 4; ++i) {
        CHECK(r.achieved[i] >= (1 - tol) * t[i] - 1e-6);
        CHECK(r.achieved[i] <= (1 + tol) * t[i] + 1e-6);
      }
    }
  }
  CHECK(feasible > 0);
}

TEST_CASE("hard bands with a zero target force that macro to zero") {
  std::vector<Food> foods = {{"lean", make_macros(400, 100, 0, 0), 100, 0, 5},
                             {"fatty", make_macros(540, 60, 0, 33.3), 100, 0, 5}};
  const MacroVector t = derive_targets({800, 100, 0, 0});
  const auto r = solve_hard_ip(foods, t, WeightScheme::inverse_target(), 0.1);
  REQUIRE(r.feasible());
  CHECK(r.servings_of("fatty") == 0);
  CHECK(r.servings_of("lean") == 2);
}

TEST_CASE("tolerance must lie strictly between 0 and 1") {
  CHECK_THROWS_AS(MethodKind::hard_ip(1.0).validate(), ValidationError);
  CHECK_THROWS_AS(MethodKind::hard_ip(0.0).validate(), ValidationError);
  CHECK_NOTHROW(MethodKind::hard_ip(0.99).validate());
}

TEST_CASE("method names round trip") {
  for (auto k : {MethodKind::Kind::Migp, MethodKind::Kind::GpRounding, MethodKind::Kind::HardIp})
    CHECK(parse_method(to_string(k)) == k);
  CHECK(!parse_method("simplex"));
}

TEST_CASE("property: the integer optimum never loses to rounding") {
  std::mt19937_64 rng(21);
  for (int inst = 0; inst < 60; ++inst) {
    const int n = std::uniform_int_distribution<int>(2, 12)(rng);
    const auto foods = testing::random_foods(rng, n, 0, 8);
    const MacroVector t = derive_targets(testing::random_target(rng));
    const auto s = WeightScheme::inverse_target();
    const auto m = solve_migp(foods, t, s);
    const auto g = solve_gp_rounding(foods, t, s);
    REQUIRE(m.status == SolveStatus::Optimal);
    CHECK(m.objective <= g.objective + 1e-9);
    REQUIRE(m.lp_bound);
    CHECK(*m.lp_bound <= m.objective + 1e-9);
  }
}
