#include "mealopt/examples.hpp"
#include "mealopt/io.hpp"

#include <doctest.h>

using namespace mealopt;
using nlohmann::json;

namespace {

MealSpec example_spec(char id, MethodKind method = MethodKind::migp()) {
  const auto& ex = worked_example(id);
  MealSpec s;
  s.target = ex.target;
  s.foods = ex.foods;
  s.method = method;
  return s;
}

std::vector<std::string> error_fields(const std::string& text, const FoodBank* bank = nullptr) {
  try {
    parse_meal_spec(text, bank);
  } catch (const SpecError& e) {
    std::vector<std::string> out;
    for (const auto& fe : e.errors()) out.push_back(fe.field);
    return out;
  }
  return {};
}

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("spec round trip") {
  MealSpec s = example_spec('B', MethodKind::hard_ip(0.1));
  s.weights = WeightScheme::custom(make_macros(1, 2, 1, 0.5));
  s.time_limit_s = 5;
  const MealSpec back = meal_spec_from_json(meal_spec_to_json(s));
  CHECK(back.method == s.method);
  CHECK(back.time_limit_s == 5);
  CHECK(back.weights.kind == WeightScheme::Kind::Custom);
  CHECK(back.weights.multipliers == s.weights.multipliers);
  REQUIRE(back.foods.size() == s.foods.size());
  for (std::size_t i = 0; i < s.foods.size(); ++i) {
    CHECK(back.foods[i].name == s.foods[i].name);
    CHECK(back.foods[i].per100g == s.foods[i].per100g);
    CHECK(back.foods[i].max_servings == s.foods[i].max_servings);
  }
  CHECK(meal_spec_to_json(back) == meal_spec_to_json(s));
}

TEST_CASE("every invalid field is reported") {
  const auto fields = error_fields(R"({
    "schema_version": 1,
    "target": {"calories": -600, "prot_pct": 30, "carbs_pct": 45, "fat_pct": 20},
    "method": "simplex",
    "tolerance": 1.5,
    "foods": [
      {"name": "x", "per100g": {"kcal": 100, "protein_g": -1, "carbs_g": 0, "fat_g": 0}},
      {"name": "y"},
      {"name": "x", "per100g": {"kcal": 1, "protein_g": 0, "carbs_g": 0, "fat_g": 0}, "min_servings": 3, "max_servings": 2}
    ]
  })");
  CHECK(has(fields, "target.calories"));
  CHECK(has(fields, "target"));
  CHECK(has(fields, "method"));
  CHECK(has(fields, "tolerance"));
  CHECK(has(fields, "foods[0].per100g.protein_g"));
  CHECK(has(fields, "foods[1].per100g"));
  CHECK(has(fields, "foods[2].name"));
  CHECK(has(fields, "foods[2].max_servings"));
}

TEST_CASE("empty foods and missing target") {
  CHECK(has(error_fields(R"({"target": {"calories": 600, "prot_pct": 30, "carbs_pct": 45, "fat_pct": 25}, "foods": []})"),
            "foods"));
  CHECK(has(error_fields(R"({"foods": [{"name": "a"}]})"), "target"));
  CHECK(has(error_fields(R"({"schema_version": 9, "target": {"calories": 600, "prot_pct": 30, "carbs_pct": 45, "fat_pct": 25}, "foods": [{"name": "a", "per100g": {"kcal": 1, "protein_g": 0, "carbs_g": 0, "fat_g": 0}}]})"),
            "schema_version"));
}

TEST_CASE("malformed JSON reports line and column") {
  try {
    parse_meal_spec("{\n  \"target\": {\n    \"calories\": ,\n  }\n}");
    FAIL("accepted malformed JSON");
  } catch (const SpecError& e) {
    REQUIRE(e.errors().size() == 1);
    CHECK(e.errors()[0].message.find("line 3") != std::string::npos);
    CHECK(e.errors()[0].message.find("column") != std::string::npos);
  }
}

TEST_CASE("foods can be named from the bank and overridden") {
  const FoodBank bank = load_bank(std::string(MEALOPT_DATA_DIR) + "/food_bank.json");
  const auto spec = parse_meal_spec(R"({
    "target": {"calories": 600, "prot_pct": 30, "carbs_pct": 45, "fat_pct": 25},
    "weights": "equal",
    "foods": [{"name": "white rice"}, {"name": "chicken breast", "max_servings": 3}]
  })", &bank);
  REQUIRE(spec.foods.size() == 2);
  CHECK(spec.foods[0].per100g[0] == 130);
  CHECK(spec.foods[1].max_servings == 3);
  CHECK(spec.weights.kind == WeightScheme::Kind::Equal);
  CHECK(has(error_fields(R"({"target": {"calories": 600, "prot_pct": 30, "carbs_pct": 45, "fat_pct": 25},
    "foods": [{"name": "dragon fruit"}]})", &bank), "foods[0].per100g"));
}

TEST_CASE("result document") {
  const MealSpec spec = example_spec('E');
  const auto out = optimize(spec);
  const json doc = result_to_json(spec, out);
  CHECK(doc["schema_version"] == kSchemaVersion);
  CHECK(doc["method"] == "migp");
  CHECK(doc["status"] == "optimal");
  CHECK(doc["feasible"] == true);
  CHECK(std::abs(doc["objective"].get<double>() - 0.0959) <= 5e-4);
  CHECK(doc["macros"].size() == 4);
  CHECK(doc["precheck"]["ok"] == true);
  int total = 0;
  for (const auto& a : doc["allocations"]) total += a["servings"].get<int>();
  CHECK(total == doc["total_servings"].get<int>());
}

TEST_CASE("infeasible hard bands serialize with a note and null objective") {
  const MealSpec spec = example_spec('A', MethodKind::hard_ip());
  const json doc = result_to_json(spec, optimize(spec));
  CHECK(doc["feasible"] == false);
  CHECK(doc["status"] == "infeasible");
  CHECK(doc["objective"].is_null());
  CHECK(doc["note"].get<std::string>().find("5%") != std::string::npos);
}

TEST_CASE("pre-check shortfall travels with the result") {
  MealSpec spec;
  spec.target = {600, 30, 45, 25};
  spec.foods = {{"a", make_macros(100, 5, 10, 2), 100, 0, 2}};
  const auto out = optimize(spec);
  REQUIRE(out.shortfall);
  const json doc = result_to_json(spec, out);
  CHECK(doc["precheck"]["ok"] == false);
  CHECK(doc["precheck"]["macro"] == "calories");
  CHECK(doc["feasible"] == true);
}

TEST_CASE("gap document") {
  const json rel = gap_to_json(make_gap_report(1.5394, 1.5557));
  CHECK(rel["gamma_kind"] == "relative");
  CHECK(rel["regime"] == "imperfect_continuous");
  const json abs = gap_to_json(make_gap_report(0, 0.1654));
  CHECK(abs["gamma"].is_null());
  CHECK(abs["gamma_kind"] == "absolute_diff");
  CHECK(abs["absolute_gap"].get<double>() == doctest::Approx(0.1654));
}
