#pragma once

// Food bank ingestion, deterministic instance sampling, and the benchmark
// study runners with their CSV emitters.

#include "mealopt/analysis.hpp"
#include "mealopt/methods.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mealopt {

enum class FoodProfile { HighProtein, HighCarb, HighFat, Balanced };
std::string_view to_string(FoodProfile p);
std::optional<FoodProfile> parse_profile(std::string_view s);

struct BankEntry {
  Food food;
  FoodProfile profile = FoodProfile::Balanced;
  std::string source;
};

struct FoodBank {
  std::vector<BankEntry> entries;

  std::size_t size() const { return entries.size(); }
  std::vector<Food> foods() const;
};

/// Parses the bank document (a JSON array). Errors name the offending entry
/// and field: duplicate names, negative or missing values, wrong types.
FoodBank parse_bank(std::string_view text);
FoodBank load_bank(const std::filesystem::path& path);
/// Same document shape as parse_bank accepts.
std::string bank_to_json(const FoodBank& bank, int indent = 2);

enum class ServingRange { Loose, Tight, Ambitious };
std::string_view to_string(ServingRange r);

struct BenchConfig {
  std::string name;  // e.g. "medium-loose"
  int ordinal = 0;   // position in the standard matrix; part of the PRNG seed
  int n_foods = 8;
  ServingRange range = ServingRange::Loose;
  int min_servings = 0;
  int max_servings = 10;
  MealTarget target;
};

/// The nine standard configurations, loose/tight/ambitious x small/medium/large.
const std::vector<BenchConfig>& standard_configs();
/// Throws ValidationError listing the valid names.
const BenchConfig& find_config(std::string_view name);

/// splitmix64 step.
std::uint64_t splitmix64(std::uint64_t& state);

/// Fisher-Yates shuffle of the bank driven by splitmix64 seeded with
/// ordinal * 1000 + seed; the first n_foods are kept and their serving bounds
/// replaced by the configuration's range.
std::vector<Food> sample_instance(const FoodBank& bank, const BenchConfig& cfg, int seed);

struct InstanceRecord {
  std::string config;
  int n_foods = 0;
  ServingRange range = ServingRange::Loose;
  int seed = 0;
  MethodKind::Kind method = MethodKind::Kind::Migp;
  bool feasible = false;
  // Empty when the method returned no allocation.
  std::optional<double> objective;
  std::optional<double> max_dev_pct;
  std::optional<double> macros_within_5pct;
  double solve_ms = 0;
  double z_lp = 0;
  // MIGP rows only; empty when the ratio is undefined (z_lp = 0 < z_mip).
  std::optional<double> gamma;
  std::optional<GapReport> gap;
  // Signed per-macro deviation %, nullopt entries for zero targets.
  std::array<std::optional<double>, 4> deviation_pct{};
  std::vector<int> servings;
  std::string error;
};

struct StudyOptions {
  int n_seeds = 30;
  BnbConfig bnb;
  std::function<void(const InstanceRecord&)> on_record;
};

std::vector<MethodKind> all_methods();

/// Every (config, seed, method) triple, sorted in that order.
std::vector<InstanceRecord> run_study(const FoodBank& bank, const std::vector<BenchConfig>& configs,
                                      const std::vector<MethodKind>& methods, const StudyOptions& opt = {});

/// Exact header: config,n_foods,range,seed,method,feasible,objective,max_dev_pct,macros_within_5pct,solve_ms,z_lp,gamma
void write_results_csv(std::ostream& os, const std::vector<InstanceRecord>& records, bool include_timing = true);

double quantile(std::vector<double> values, double q);
inline double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

struct MethodSummary {
  std::string group;  // "all" or a config name
  MethodKind::Kind method = MethodKind::Kind::Migp;
  int instances = 0;
  double feasibility_pct = 0;
  // Medians over feasible rows; nullopt when none are feasible.
  std::optional<double> median_objective;
  std::optional<double> median_max_dev_pct;
  std::optional<double> median_within_5pct;
  std::optional<double> median_ms;
};

/// Overall rows first (one per method), then one row per (config, method).
std::vector<MethodSummary> summarize(const std::vector<InstanceRecord>& records);
void write_summary_csv(std::ostream& os, const std::vector<MethodSummary>& rows);

/// Writes fig1..fig5 data files into `dir`.
void write_figure_data(const std::filesystem::path& dir, const std::vector<InstanceRecord>& records);

struct GranularityRecord {
  double serving_g = 0;
  int seed = 0;
  double objective = 0;
  double z_lp = 0;
  double max_dev_pct = 0;
  double macros_within_5pct = 0;
  double solve_ms = 0;
  bool optimal = true;
};

struct GranularitySummary {
  double serving_g = 0;
  double median_objective = 0;
  double median_max_dev_pct = 0;
  double median_within_5pct = 0;
  double median_ms = 0;
  double median_gap = 0;  // z_mip - z_lp
};

/// MIGP on the base configuration's instances with every food's serving size
/// overridden by each value in `sizes_g`.
std::vector<GranularityRecord> granularity_study(const FoodBank& bank, const std::vector<double>& sizes_g = {25, 50, 100, 200},
                                                 const BenchConfig& base = find_config("medium-loose"),
                                                 const StudyOptions& opt = {});
std::vector<GranularitySummary> summarize_granularity(const std::vector<GranularityRecord>& records);
void write_granularity_csv(std::ostream& os, const std::vector<GranularityRecord>& records);
void write_granularity_summary_csv(std::ostream& os, const std::vector<GranularitySummary>& rows);

struct WeightStudyRecord {
  std::string scheme;  // inverse, equal, double-protein
  int seed = 0;
  // Scale differs per scheme; never compare across schemes.
  double objective = 0;
  std::array<std::optional<double>, 4> deviation_pct{};
};

struct WeightStudySummary {
  std::string scheme;
  // Median |deviation %| per macro.
  std::array<double, 4> median_abs_dev_pct{};
  double median_objective = 0;
};

std::vector<WeightStudyRecord> weight_sensitivity_study(const FoodBank& bank,
                                                        const BenchConfig& base = find_config("medium-loose"),
                                                        const StudyOptions& opt = {});
std::vector<WeightStudySummary> summarize_weights(const std::vector<WeightStudyRecord>& records);
void write_weight_csv(std::ostream& os, const std::vector<WeightStudyRecord>& records);
void write_weight_summary_csv(std::ostream& os, const std::vector<WeightStudySummary>& rows);

}  // namespace mealopt
