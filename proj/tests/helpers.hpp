#pragma once

#include "mealopt/meal_model.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing {

// Foods with macros drawn from plausible ranges; kcal roughly follows 4/4/9.
inline std::vector<mealopt::Food> random_foods(std::mt19937_64& rng, int n, int lo, int hi_max) {
  std::uniform_real_distribution<double> p(0, 30), c(0, 80), f(0, 40), srv(20, 120);
  std::uniform_int_distribution<int> hi(lo, hi_max);
  std::vector<mealopt::Food> foods;
  for (int i = 0; i < n; ++i) {
    mealopt::Food food;
    food.name = "food" + std::to_string(i);
    const double pp = p(rng), cc = c(rng), ff = f(rng);
    food.per100g = mealopt::make_macros(4 * pp + 4 * cc + 9 * ff, pp, cc, ff);
    food.serving_g = std::round(srv(rng));
    food.min_servings = lo;
    food.max_servings = hi(rng);
    foods.push_back(food);
  }
  return foods;
}

inline mealopt::MealTarget random_target(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> cal(300, 1200), pct(10, 50);
  const double p = std::round(pct(rng)), c = std::round(pct(rng));
  return {std::round(cal(rng)), p, c, 100 - p - c};
}

}  // namespace testing
