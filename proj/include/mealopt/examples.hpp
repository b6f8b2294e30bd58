#pragma once

// Built-in worked examples A-E with their reference objectives.

#include "mealopt/meal_model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace mealopt {

struct ExpectedObjectives {
  std::optional<double> z_lp;
  double migp = 0;
  double gp_round = 0;
  // nullopt: no allocation satisfies the +/-5% bands.
  std::optional<double> hard_ip;
  std::optional<double> hard_ip_max_dev_pct;
};

struct WorkedExample {
  char id = 'A';
  std::string title;
  MealTarget target;
  std::vector<Food> foods;
  ExpectedObjectives expected;
};

const std::vector<WorkedExample>& worked_examples();

/// Throws ValidationError for an unknown id.
const WorkedExample& worked_example(char id);

}  // namespace mealopt
