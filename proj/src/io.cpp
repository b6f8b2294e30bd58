#include "mealopt/io.hpp"

#include <cmath>
#include <set>

namespace mealopt {

using nlohmann::json;

namespace {

std::string join_errors(const std::vector<FieldError>& errors) {
  std::string s;
  for (const auto& e : errors) s += (s.empty() ? "" : "; ") + e.field + ": " + e.message;
  return s;
}

const char* kPer100Keys[4] = {"kcal", "protein_g", "carbs_g", "fat_g"};

// Collects field errors while reading a document.
struct Reader {
  std::vector<FieldError> errors;

  void fail(const std::string& field, const std::string& msg) { errors.push_back({field, msg}); }

  std::optional<double> number(const json& obj, const char* key, const std::string& path, bool required) {
    if (!obj.contains(key)) {
      if (required) fail(path + key, "is required");
      return std::nullopt;
    }
    const auto& v = obj.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      fail(path + key, "must be a finite number");
      return std::nullopt;
    }
    return v.get<double>();
  }

  std::optional<int> integer(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) return std::nullopt;
    const auto& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(path + key, "must be an integer");
      return std::nullopt;
    }
    return v.get<int>();
  }
};

const BankEntry* bank_lookup(const FoodBank* bank, const std::string& name) {
  if (!bank) return nullptr;
  for (const auto& e : bank->entries)
    if (e.food.name == name) return &e;
  return nullptr;
}

}  // namespace

SpecError::SpecError(std::vector<FieldError> errors) : ValidationError(join_errors(errors)), errors_(std::move(errors)) {}

MacroVector weight_multipliers_from_json(const json& doc) {
  if (!doc.is_object()) throw SpecError("weights.custom", "must be an object with calories/protein/carbs/fat");
  Reader rd;
  MacroVector m = MacroVector::Ones();
  for (Macro mac : kMacros) {
    const std::string key(macro_name(mac));
    if (auto v = rd.number(doc, key.c_str(), "weights.custom.", false)) {
      if (*v <= 0) rd.fail("weights.custom." + key, "must be positive");
      m[static_cast<int>(mac)] = *v;
    }
  }
  for (const auto& [k, v] : doc.items())
    if (k != "calories" && k != "protein" && k != "carbs" && k != "fat") rd.fail("weights.custom." + k, "unknown macro");
  if (!rd.errors.empty()) throw SpecError(rd.errors);
  return m;
}

MealSpec meal_spec_from_json(const json& doc, const FoodBank* bank) {
  Reader rd;
  MealSpec spec;
  if (!doc.is_object()) throw SpecError("$", "meal spec must be a JSON object");

  if (doc.contains("schema_version")) {
    const auto& v = doc["schema_version"];
    if (!v.is_number_integer() || v.get<int>() != kSchemaVersion)
      rd.fail("schema_version", "unsupported; expected " + std::to_string(kSchemaVersion));
  }

  if (!doc.contains("target") || !doc["target"].is_object()) {
    rd.fail("target", "is required and must be an object");
  } else {
    const auto& t = doc["target"];
    spec.target.calories = rd.number(t, "calories", "target.", true).value_or(0);
    spec.target.prot_pct = rd.number(t, "prot_pct", "target.", true).value_or(0);
    spec.target.carbs_pct = rd.number(t, "carbs_pct", "target.", true).value_or(0);
    spec.target.fat_pct = rd.number(t, "fat_pct", "target.", true).value_or(0);
    if (rd.errors.empty()) {
      if (spec.target.calories <= 0) rd.fail("target.calories", "must be positive");
      for (auto [k, v] : {std::pair{"prot_pct", spec.target.prot_pct}, std::pair{"carbs_pct", spec.target.carbs_pct},
                          std::pair{"fat_pct", spec.target.fat_pct}})
        if (v < 0) rd.fail(std::string("target.") + k, "must be non-negative");
      const double sum = spec.target.prot_pct + spec.target.carbs_pct + spec.target.fat_pct;
      if (std::abs(sum - 100.0) > 1e-9) rd.fail("target", "prot_pct + carbs_pct + fat_pct must equal 100");
    }
  }

  if (doc.contains("weights")) {
    const auto& w = doc["weights"];
    if (w.is_string()) {
      const auto s = w.get<std::string>();
      if (s == "inverse") spec.weights = WeightScheme::inverse_target();
      else if (s == "equal") spec.weights = WeightScheme::equal();
      else if (s == "double-protein") spec.weights = WeightScheme::double_protein();
      else rd.fail("weights", "must be \"inverse\", \"equal\", \"double-protein\" or {\"custom\": {...}}");
    } else if (w.is_object() && w.contains("custom")) {
      try {
        spec.weights = WeightScheme::custom(weight_multipliers_from_json(w["custom"]));
      } catch (const SpecError& e) {
        for (const auto& fe : e.errors()) rd.errors.push_back(fe);
      }
    } else {
      rd.fail("weights", "must be a string or {\"custom\": {...}}");
    }
  }

  if (doc.contains("method")) {
    const auto& m = doc["method"];
    auto kind = m.is_string() ? parse_method(m.get<std::string>()) : std::nullopt;
    if (!kind) rd.fail("method", "must be one of migp, gp-round, hard-ip");
    else spec.method.kind = *kind;
  }
  if (auto tol = rd.number(doc, "tolerance", "", false)) {
    if (!(*tol > 0 && *tol < 1)) rd.fail("tolerance", "must lie in (0, 1)");
    else spec.method.tolerance_frac = *tol;
  }
  if (auto tl = rd.number(doc, "time_limit_s", "", false)) {
    if (!(*tl > 0)) rd.fail("time_limit_s", "must be positive");
    else spec.time_limit_s = *tl;
  }

  if (!doc.contains("foods") || !doc["foods"].is_array()) {
    rd.fail("foods", "is required and must be an array");
  } else if (doc["foods"].empty()) {
    rd.fail("foods", "must contain at least one food");
  } else {
    std::set<std::string> names;
    const auto& arr = doc["foods"];
    for (std::size_t i = 0; i < arr.size(); ++i) {
      const std::string path = "foods[" + std::to_string(i) + "].";
      const auto& e = arr[i];
      if (!e.is_object()) {
        rd.fail("foods[" + std::to_string(i) + "]", "must be an object");
        continue;
      }
      if (!e.contains("name") || !e["name"].is_string() || e["name"].get<std::string>().empty()) {
        rd.fail(path + "name", "is required and must be a non-empty string");
        continue;
      }
      Food f;
      f.name = e["name"].get<std::string>();
      if (!names.insert(f.name).second) rd.fail(path + "name", "duplicate food '" + f.name + "'");
      const BankEntry* known = bank_lookup(bank, f.name);
      if (known) f = known->food;

      if (e.contains("per100g")) {
        if (!e["per100g"].is_object()) {
          rd.fail(path + "per100g", "must be an object");
        } else {
          for (int m = 0; m < kNumMacros; ++m)
            if (auto v = rd.number(e["per100g"], kPer100Keys[m], path + "per100g.", true)) {
              if (*v < 0) rd.fail(path + "per100g." + kPer100Keys[m], "must be non-negative");
              f.per100g[m] = *v;
            }
        }
      } else if (!known) {
        rd.fail(path + "per100g", bank ? "is required for foods not in the bank" : "is required");
      }
      if (auto v = rd.number(e, "serving_g", path, false)) {
        if (*v <= 0) rd.fail(path + "serving_g", "must be positive");
        f.serving_g = *v;
      }
      if (auto v = rd.integer(e, "min_servings", path)) f.min_servings = *v;
      if (auto v = rd.integer(e, "max_servings", path)) f.max_servings = *v;
      if (f.min_servings < 0) rd.fail(path + "min_servings", "must be non-negative");
      if (f.max_servings < f.min_servings) rd.fail(path + "max_servings", "must be >= min_servings");
      spec.foods.push_back(std::move(f));
    }
  }

  if (!rd.errors.empty()) throw SpecError(rd.errors);
  return spec;
}

MealSpec parse_meal_spec(std::string_view text, const FoodBank* bank) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Translate the byte offset into line/column.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw SpecError("$", "malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(col));
  }
  return meal_spec_from_json(doc, bank);
}

json food_to_json(const Food& f) {
  json per = json::object();
  for (int m = 0; m < kNumMacros; ++m) per[kPer100Keys[m]] = f.per100g[m];
  return {{"name", f.name},
          {"per100g", per},
          {"serving_g", f.serving_g},
          {"min_servings", f.min_servings},
          {"max_servings", f.max_servings}};
}

json meal_spec_to_json(const MealSpec& spec) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["target"] = {{"calories", spec.target.calories},
                   {"prot_pct", spec.target.prot_pct},
                   {"carbs_pct", spec.target.carbs_pct},
                   {"fat_pct", spec.target.fat_pct}};
  switch (spec.weights.kind) {
    case WeightScheme::Kind::InverseTarget: doc["weights"] = "inverse"; break;
    case WeightScheme::Kind::Equal: doc["weights"] = "equal"; break;
    case WeightScheme::Kind::Custom: {
      json m = json::object();
      for (Macro mac : kMacros) m[std::string(macro_name(mac))] = spec.weights.multipliers[static_cast<int>(mac)];
      doc["weights"] = {{"custom", m}};
      break;
    }
  }
  doc["method"] = std::string(to_string(spec.method.kind));
  if (spec.method.kind == MethodKind::Kind::HardIp) doc["tolerance"] = spec.method.tolerance_frac;
  doc["time_limit_s"] = spec.time_limit_s;
  doc["foods"] = json::array();
  for (const auto& f : spec.foods) doc["foods"].push_back(food_to_json(f));
  return doc;
}

OptimizeOutcome optimize(const MealSpec& spec) {
  OptimizeOutcome out;
  const MacroVector targets = derive_targets(spec.target);
  out.shortfall = precheck_feasibility(spec.foods, targets);
  BnbConfig cfg;
  cfg.time_limit_s = std::min(spec.time_limit_s, kMaxTimeLimitS);
  out.result = run_method(spec.method, spec.foods, targets, spec.weights, cfg);
  return out;
}

json result_to_json(const MealSpec& spec, const OptimizeOutcome& outcome) {
  const auto& r = outcome.result;
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["method"] = std::string(to_string(spec.method.kind));
  doc["status"] = std::string(to_string(r.status));
  doc["feasible"] = r.feasible();
  doc["objective"] = r.feasible() ? json(r.objective) : json(nullptr);
  doc["lp_bound"] = r.lp_bound ? json(*r.lp_bound) : json(nullptr);
  doc["total_servings"] = r.feasible() ? json(r.total_servings()) : json(nullptr);
  doc["max_dev_pct"] = r.feasible() ? json(r.max_dev_pct()) : json(nullptr);
  doc["solve_ms"] = r.solve_ms;
  doc["allocations"] = json::array();
  for (const auto& f : spec.foods) {
    const int k = r.servings_of(f.name);
    if (k > 0) doc["allocations"].push_back({{"name", f.name}, {"servings", k}, {"grams", k * f.serving_g}});
  }
  doc["macros"] = json::array();
  for (Macro m : kMacros) {
    const int i = static_cast<int>(m);
    json row = {{"macro", std::string(macro_name(m))}, {"unit", std::string(macro_unit(m))}, {"target", r.targets[i]},
                {"weight", r.weights[i]}};
    if (r.feasible()) {
      row["achieved"] = r.achieved[i];
      row["deviation"] = r.deviation[i];
      const auto& pct = r.deviation_pct[static_cast<std::size_t>(i)];
      row["deviation_pct"] = pct ? json(*pct) : json(nullptr);
    } else {
      row["achieved"] = nullptr;
      row["deviation"] = nullptr;
      row["deviation_pct"] = nullptr;
    }
    doc["macros"].push_back(std::move(row));
  }
  if (outcome.shortfall) {
    doc["precheck"] = {{"ok", false},
                       {"macro", std::string(macro_name(outcome.shortfall->macro))},
                       {"target", outcome.shortfall->target},
                       {"max_achievable", outcome.shortfall->max_achievable},
                       {"message", outcome.shortfall->message()}};
  } else {
    doc["precheck"] = {{"ok", true}};
  }
  doc["note"] = r.note.empty() ? json(nullptr) : json(r.note);
  return doc;
}

json gap_to_json(const GapReport& report) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["z_lp"] = report.z_lp;
  doc["z_mip"] = report.z_mip;
  doc["absolute_gap"] = report.absolute_gap();
  if (report.gamma_is_relative()) {
    doc["gamma"] = report.gamma_value();
    doc["gamma_kind"] = "relative";
  } else {
    doc["gamma"] = nullptr;
    doc["gamma_kind"] = "absolute_diff";
  }
  doc["regime"] = std::string(to_string(report.regime));
  doc["lp_deviation_zero"] = report.lp_deviation_zero;
  doc["mip_optimal"] = report.mip_optimal;
  return doc;
}

json errors_to_json(const std::vector<FieldError>& errors) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["error"] = "validation";
  doc["errors"] = json::array();
  for (const auto& e : errors) doc["errors"].push_back({{"field", e.field}, {"message", e.message}});
  return doc;
}

}  // namespace mealopt
