#include "mealopt/examples.hpp"

namespace mealopt {

namespace {

Food food(const char* name, double kcal, double p, double c, double f, double serving_g, int lo, int hi) {
  Food out;
  out.name = name;
  out.per100g = make_macros(kcal, p, c, f);
  out.serving_g = serving_g;
  out.min_servings = lo;
  out.max_servings = hi;
  return out;
}

std::vector<WorkedExample> build() {
  std::vector<WorkedExample> ex;
  ex.push_back({'A', "Post-workout recovery meal", {600, 30, 45, 25},
                {food("chicken breast", 165, 31.0, 0.0, 3.6, 50, 0, 10),
                 food("white rice", 130, 2.7, 28.2, 0.3, 50, 0, 10),
                 food("broccoli", 35, 2.4, 7.2, 0.4, 50, 0, 8),
                 food("avocado", 160, 2.0, 8.5, 14.7, 30, 0, 6),
                 food("olive oil", 884, 0.0, 0.0, 100.0, 15, 0, 4)},
                {0.0, 0.1654, 0.2298, std::nullopt, std::nullopt}});
  ex.push_back({'B', "Balanced lunch", {800, 35, 40, 25},
                {food("chicken breast", 165, 31.0, 0.0, 3.6, 50, 0, 8),
                 food("salmon fillet", 208, 20.4, 0.0, 13.4, 50, 0, 8),
                 food("white rice", 130, 2.7, 28.2, 0.3, 50, 0, 8),
                 food("sweet potato", 90, 2.0, 20.7, 0.1, 50, 0, 8),
                 food("broccoli", 35, 2.4, 7.2, 0.4, 50, 0, 8),
                 food("olive oil", 884, 0.0, 0.0, 100.0, 15, 0, 4),
                 food("almonds", 579, 21.2, 21.6, 49.9, 30, 0, 4),
                 food("whole eggs", 155, 12.6, 1.1, 10.6, 50, 0, 4)},
                {0.0, 0.0507, 0.1447, 0.0899, 4.1}});
  ex.push_back({'C', "Variety dinner (ambitious bounds)", {600, 40, 35, 25},
                {food("chicken breast", 165, 31.0, 0.0, 3.6, 50, 1, 6),
                 food("salmon fillet", 208, 20.4, 0.0, 13.4, 50, 1, 6),
                 food("white rice", 130, 2.7, 28.2, 0.3, 50, 1, 6),
                 food("quinoa", 120, 4.4, 21.3, 1.9, 50, 1, 6),
                 food("avocado", 160, 2.0, 8.5, 14.7, 30, 1, 6),
                 food("olive oil", 884, 0.0, 0.0, 100.0, 15, 1, 3),
                 food("broccoli", 35, 2.4, 7.2, 0.4, 50, 1, 6),
                 food("whole eggs", 155, 12.6, 1.1, 10.6, 50, 1, 3)},
                {1.5394, 1.5557, 1.5777, std::nullopt, std::nullopt}});
  ex.push_back({'D', "Cyclist energy snack batch", {1000, 10, 75, 15},
                {food("oats", 389, 16.9, 66.3, 6.9, 40, 0, 8),
                 food("honey", 304, 0.3, 82.4, 0.0, 15, 0, 10),
                 food("banana", 89, 1.1, 22.8, 0.3, 120, 0, 3),
                 food("dates", 282, 2.5, 75.0, 0.4, 30, 0, 8),
                 food("peanut butter", 588, 25.1, 19.6, 50.4, 32, 0, 4),
                 food("dark chocolate chips", 546, 5.5, 60.5, 31.3, 20, 0, 4)},
                {std::nullopt, 0.1437, 0.4143, std::nullopt, std::nullopt}});
  ex.push_back({'E', "Post-gym protein recovery", {600, 45, 30, 25},
                {food("whey protein powder", 400, 80.0, 10.0, 3.3, 30, 1, 2),
                 food("tuna (canned)", 116, 25.5, 0.0, 0.8, 80, 0, 3),
                 food("greek yogurt", 59, 10.2, 3.6, 0.7, 150, 0, 2),
                 food("white rice", 130, 2.7, 28.2, 0.3, 50, 0, 6),
                 food("banana", 89, 1.1, 22.8, 0.3, 120, 0, 2),
                 food("olive oil", 884, 0.0, 0.0, 100.0, 5, 0, 4)},
                {std::nullopt, 0.0959, 0.2574, std::nullopt, std::nullopt}});
  return ex;
}

}  // namespace

const std::vector<WorkedExample>& worked_examples() {
  static const std::vector<WorkedExample> all = build();
  return all;
}

const WorkedExample& worked_example(char id) {
  for (const auto& e : worked_examples())
    if (e.id == id) return e;
  throw ValidationError(std::string("unknown example '") + id + "' (expected A-E)");
}

}  // namespace mealopt
