#pragma once

// Versioned JSON documents for meal specs, results and gap reports, shared by
// the CLI and the HTTP service so both emit identical structures.

#include "mealopt/analysis.hpp"
#include "mealopt/benchmark.hpp"
#include "mealopt/methods.hpp"

#include <json.hpp>

#include <string>
#include <string_view>
#include <vector>

namespace mealopt {

inline constexpr int kSchemaVersion = 1;
inline constexpr double kMaxTimeLimitS = 30.0;

struct FieldError {
  std::string field;
  std::string message;
};

/// Validation failure carrying every offending field, not only the first.
class SpecError : public ValidationError {
 public:
  explicit SpecError(std::vector<FieldError> errors);
  SpecError(std::string field, std::string message) : SpecError(std::vector<FieldError>{{std::move(field), std::move(message)}}) {}
  const std::vector<FieldError>& errors() const { return errors_; }

 private:
  std::vector<FieldError> errors_;
};

struct MealSpec {
  MealTarget target;
  WeightScheme weights;
  std::vector<Food> foods;
  MethodKind method;
  double time_limit_s = kMaxTimeLimitS;
};

/// `bank` (optional) lets foods be given by name alone; explicit fields
/// override the bank entry.
MealSpec meal_spec_from_json(const nlohmann::json& doc, const FoodBank* bank = nullptr);
/// Parse errors carry line and column.
MealSpec parse_meal_spec(std::string_view text, const FoodBank* bank = nullptr);
nlohmann::json meal_spec_to_json(const MealSpec& spec);

/// {"calories": m, "protein": m, "carbs": m, "fat": m}; missing keys are 1.
MacroVector weight_multipliers_from_json(const nlohmann::json& doc);

nlohmann::json food_to_json(const Food& f);

struct OptimizeOutcome {
  SolverResult result;
  std::optional<Shortfall> shortfall;
};

/// Pre-check, then the requested method with the spec's time limit.
OptimizeOutcome optimize(const MealSpec& spec);

nlohmann::json result_to_json(const MealSpec& spec, const OptimizeOutcome& outcome);
nlohmann::json gap_to_json(const GapReport& report);
nlohmann::json errors_to_json(const std::vector<FieldError>& errors);

}  // namespace mealopt
