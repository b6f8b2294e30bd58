#include "mealopt/benchmark.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace mealopt {

using nlohmann::json;

std::string_view to_string(FoodProfile p) {
  switch (p) {
    case FoodProfile::HighProtein: return "high_protein";
    case FoodProfile::HighCarb: return "high_carb";
    case FoodProfile::HighFat: return "high_fat";
    case FoodProfile::Balanced: return "balanced";
  }
  return "?";
}

std::optional<FoodProfile> parse_profile(std::string_view s) {
  for (auto p : {FoodProfile::HighProtein, FoodProfile::HighCarb, FoodProfile::HighFat, FoodProfile::Balanced})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

std::vector<Food> FoodBank::foods() const {
  std::vector<Food> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.food);
  return out;
}

namespace {

const char* kPer100Keys[4] = {"kcal", "protein_g", "carbs_g", "fat_g"};

double number_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError(where + "." + key + ": missing");
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(where + "." + key + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ValidationError(where + "." + key + ": must be finite");
  return d;
}

int int_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ValidationError(where + "." + key + ": missing");
  const auto& v = obj.at(key);
  if (!v.is_number_integer()) throw ValidationError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

}  // namespace

FoodBank parse_bank(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("food bank is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ValidationError("food bank must be a JSON array of foods");
  FoodBank bank;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& e = doc[i];
    const std::string where = "foods[" + std::to_string(i) + "]";
    if (!e.is_object()) throw ValidationError(where + ": expected an object");
    BankEntry entry;
    if (!e.contains("name") || !e["name"].is_string() || e["name"].get<std::string>().empty())
      throw ValidationError(where + ".name: expected a non-empty string");
    entry.food.name = e["name"].get<std::string>();
    if (!seen.insert(entry.food.name).second)
      throw ValidationError(where + ".name: duplicate food '" + entry.food.name + "'");
    const std::string at = where + " ('" + entry.food.name + "')";
    if (!e.contains("profile") || !e["profile"].is_string())
      throw ValidationError(at + ".profile: expected a string");
    auto profile = parse_profile(e["profile"].get<std::string>());
    if (!profile)
      throw ValidationError(at + ".profile: must be one of high_protein, high_carb, high_fat, balanced");
    entry.profile = *profile;
    if (!e.contains("per100g") || !e["per100g"].is_object()) throw ValidationError(at + ".per100g: expected an object");
    for (int m = 0; m < kNumMacros; ++m) {
      const double v = number_field(e["per100g"], kPer100Keys[m], at + ".per100g");
      if (v < 0) throw ValidationError(at + ".per100g." + kPer100Keys[m] + ": must be non-negative");
      entry.food.per100g[m] = v;
    }
    entry.food.serving_g = number_field(e, "serving_g", at);
    if (entry.food.serving_g <= 0) throw ValidationError(at + ".serving_g: must be positive");
    entry.food.min_servings = int_field(e, "min_servings", at);
    entry.food.max_servings = int_field(e, "max_servings", at);
    if (entry.food.min_servings < 0) throw ValidationError(at + ".min_servings: must be non-negative");
    if (entry.food.max_servings < entry.food.min_servings)
      throw ValidationError(at + ".max_servings: must be >= min_servings");
    if (e.contains("source") && e["source"].is_string()) entry.source = e["source"].get<std::string>();
    bank.entries.push_back(std::move(entry));
  }
  return bank;
}

FoodBank load_bank(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open food bank file '" + path.string() + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_bank(ss.str());
}

std::string bank_to_json(const FoodBank& bank, int indent) {
  json doc = json::array();
  for (const auto& e : bank.entries) {
    json per = json::object();
    for (int m = 0; m < kNumMacros; ++m) per[kPer100Keys[m]] = e.food.per100g[m];
    json item = {{"name", e.food.name},
                 {"profile", std::string(to_string(e.profile))},
                 {"per100g", per},
                 {"serving_g", e.food.serving_g},
                 {"min_servings", e.food.min_servings},
                 {"max_servings", e.food.max_servings}};
    if (!e.source.empty()) item["source"] = e.source;
    doc.push_back(std::move(item));
  }
  return doc.dump(indent);
}

std::string_view to_string(ServingRange r) {
  switch (r) {
    case ServingRange::Loose: return "loose";
    case ServingRange::Tight: return "tight";
    case ServingRange::Ambitious: return "ambitious";
  }
  return "?";
}

const std::vector<BenchConfig>& standard_configs() {
  static const std::vector<BenchConfig> configs = [] {
    struct RangeSpec {
      ServingRange range;
      int lo, hi;
      double p, c, f;
    };
    const RangeSpec ranges[] = {{ServingRange::Loose, 0, 10, 30, 45, 25},
                                {ServingRange::Tight, 0, 4, 35, 40, 25},
                                {ServingRange::Ambitious, 1, 3, 40, 35, 25}};
    const struct {
      const char* name;
      int n;
      double kcal;
    } sizes[] = {{"small", 8, 600}, {"medium", 15, 800}, {"large", 25, 1000}};
    std::vector<BenchConfig> out;
    for (const auto& r : ranges)
      for (const auto& s : sizes) {
        BenchConfig c;
        c.name = std::string(s.name) + "-" + std::string(to_string(r.range));
        c.ordinal = static_cast<int>(out.size());
        c.n_foods = s.n;
        c.range = r.range;
        c.min_servings = r.lo;
        c.max_servings = r.hi;
        c.target = {s.kcal, r.p, r.c, r.f};
        out.push_back(c);
      }
    return out;
  }();
  return configs;
}

const BenchConfig& find_config(std::string_view name) {
  std::string valid;
  for (const auto& c : standard_configs()) {
    if (c.name == name) return c;
    valid += (valid.empty() ? "" : ", ") + c.name;
  }
  throw ValidationError("unknown configuration '" + std::string(name) + "' (valid: " + valid + ")");
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<Food> sample_instance(const FoodBank& bank, const BenchConfig& cfg, int seed) {
  if (cfg.n_foods < 1 || static_cast<std::size_t>(cfg.n_foods) > bank.size())
    throw ValidationError("configuration '" + cfg.name + "' needs " + std::to_string(cfg.n_foods) +
                          " foods; bank has " + std::to_string(bank.size()));
  std::vector<Food> foods = bank.foods();
  std::uint64_t state = static_cast<std::uint64_t>(cfg.ordinal) * 1000u + static_cast<std::uint64_t>(seed);
  for (std::size_t i = foods.size() - 1; i > 0; --i) {
    const std::size_t j = splitmix64(state) % (i + 1);
    std::swap(foods[i], foods[j]);
  }
  foods.resize(static_cast<std::size_t>(cfg.n_foods));
  for (auto& f : foods) {
    f.min_servings = cfg.min_servings;
    f.max_servings = cfg.max_servings;
  }
  return foods;
}

std::vector<MethodKind> all_methods() { return {MethodKind::migp(), MethodKind::gp_rounding(), MethodKind::hard_ip()}; }

std::vector<InstanceRecord> run_study(const FoodBank& bank, const std::vector<BenchConfig>& configs,
                                      const std::vector<MethodKind>& methods, const StudyOptions& opt) {
  std::vector<InstanceRecord> out;
  const auto scheme = WeightScheme::inverse_target();
  for (const auto& cfg : configs) {
    for (int seed = 0; seed < opt.n_seeds; ++seed) {
      const auto foods = sample_instance(bank, cfg, seed);
      const MacroVector targets = derive_targets(cfg.target);
      const MacroVector w = compute_weights(targets, scheme);
      double z_lp = 0;
      try {
        z_lp = solve_relaxation(foods, targets, w).z_lp;
      } catch (const std::exception&) {
        // Reported through the method rows below.
      }
      for (const auto& m : methods) {
        InstanceRecord rec;
        rec.config = cfg.name;
        rec.n_foods = cfg.n_foods;
        rec.range = cfg.range;
        rec.seed = seed;
        rec.method = m.kind;
        rec.z_lp = z_lp;
        try {
          const auto r = run_method(m, foods, targets, scheme, opt.bnb);
          rec.solve_ms = r.solve_ms;
          rec.feasible = r.feasible();
          if (rec.feasible) {
            rec.objective = r.objective;
            rec.max_dev_pct = r.max_dev_pct();
            rec.macros_within_5pct = r.macros_within_5pct();
            rec.deviation_pct = r.deviation_pct;
            for (const auto& f : foods) rec.servings.push_back(r.servings_of(f.name));
          }
          if (m.kind == MethodKind::Kind::Migp && rec.feasible) {
            rec.gap = make_gap_report(z_lp, r.objective, r.status == SolveStatus::Optimal);
            if (rec.gap->gamma_is_relative()) rec.gamma = rec.gap->gamma_value();
          }
          if (r.status == SolveStatus::TimeLimit) rec.error = "time limit";
        } catch (const std::exception& e) {
          rec.feasible = false;
          rec.error = e.what();
        }
        if (opt.on_record) opt.on_record(rec);
        out.push_back(std::move(rec));
      }
    }
  }
  return out;
}

void write_results_csv(std::ostream& os, const std::vector<InstanceRecord>& records, bool include_timing) {
  os << "config,n_foods,range,seed,method,feasible,objective,max_dev_pct,macros_within_5pct,solve_ms,z_lp,gamma\n";
  for (const auto& r : records) {
    os << r.config << ',' << r.n_foods << ',' << to_string(r.range) << ',' << r.seed << ',' << to_string(r.method)
       << ',' << (r.feasible ? "true" : "false") << ',' << fmt_opt(r.objective) << ',' << fmt_opt(r.max_dev_pct) << ','
       << fmt_opt(r.macros_within_5pct) << ',';
    if (include_timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", r.solve_ms);
      os << buf;
    }
    os << ',' << fmt(r.z_lp) << ',' << fmt_opt(r.gamma) << '\n';
  }
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw std::invalid_argument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

namespace {

std::optional<double> median_or_none(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  return median(v);
}

MethodSummary summarize_group(const std::string& group, MethodKind::Kind method,
                              const std::vector<const InstanceRecord*>& rows) {
  MethodSummary s;
  s.group = group;
  s.method = method;
  s.instances = static_cast<int>(rows.size());
  std::vector<double> obj, dev, within, ms;
  int feasible = 0;
  for (const auto* r : rows) {
    if (!r->feasible) continue;
    ++feasible;
    obj.push_back(*r->objective);
    dev.push_back(*r->max_dev_pct);
    within.push_back(*r->macros_within_5pct);
    ms.push_back(r->solve_ms);
  }
  s.feasibility_pct = rows.empty() ? 0 : 100.0 * feasible / static_cast<double>(rows.size());
  s.median_objective = median_or_none(obj);
  s.median_max_dev_pct = median_or_none(dev);
  s.median_within_5pct = median_or_none(within);
  s.median_ms = median_or_none(ms);
  return s;
}

}  // namespace

std::vector<MethodSummary> summarize(const std::vector<InstanceRecord>& records) {
  std::vector<MethodSummary> out;
  std::vector<MethodKind::Kind> methods;
  std::vector<std::string> configs;
  for (const auto& r : records) {
    if (std::find(methods.begin(), methods.end(), r.method) == methods.end()) methods.push_back(r.method);
    if (std::find(configs.begin(), configs.end(), r.config) == configs.end()) configs.push_back(r.config);
  }
  for (auto m : methods) {
    std::vector<const InstanceRecord*> rows;
    for (const auto& r : records)
      if (r.method == m) rows.push_back(&r);
    out.push_back(summarize_group("all", m, rows));
  }
  for (const auto& c : configs)
    for (auto m : methods) {
      std::vector<const InstanceRecord*> rows;
      for (const auto& r : records)
        if (r.method == m && r.config == c) rows.push_back(&r);
      out.push_back(summarize_group(c, m, rows));
    }
  return out;
}

void write_summary_csv(std::ostream& os, const std::vector<MethodSummary>& rows) {
  os << "group,method,instances,feasibility_pct,median_objective,median_max_dev_pct,median_macros_within_5pct,median_ms\n";
  for (const auto& s : rows)
    os << s.group << ',' << to_string(s.method) << ',' << s.instances << ',' << fmt(s.feasibility_pct) << ','
       << fmt_opt(s.median_objective) << ',' << fmt_opt(s.median_max_dev_pct) << ',' << fmt_opt(s.median_within_5pct)
       << ',' << fmt_opt(s.median_ms) << '\n';
}

void write_figure_data(const std::filesystem::path& dir, const std::vector<InstanceRecord>& records) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw std::runtime_error("cannot write " + (dir / name).string());
    return f;
  };
  std::set<int> sizes;
  for (const auto& r : records) sizes.insert(r.n_foods);
  const MethodKind::Kind kinds[] = {MethodKind::Kind::Migp, MethodKind::Kind::GpRounding, MethodKind::Kind::HardIp};

  {
    auto f = open("fig1_gap_vs_foods.csv");
    f << "n_foods,instances,abs_cost_median,abs_cost_q1,abs_cost_q3,positive_lp_instances,pct_gap_median,pct_gap_q1,"
         "pct_gap_q3\n";
    for (int n : sizes) {
      std::vector<double> abs_cost, pct;
      for (const auto& r : records) {
        if (r.n_foods != n || r.method != MethodKind::Kind::Migp || !r.gap) continue;
        abs_cost.push_back(r.gap->absolute_gap());
        if (r.gap->gamma_is_relative() && !r.gap->lp_deviation_zero) pct.push_back(100.0 * r.gap->gamma_value());
      }
      if (abs_cost.empty()) continue;
      f << n << ',' << abs_cost.size() << ',' << fmt(quantile(abs_cost, 0.5)) << ',' << fmt(quantile(abs_cost, 0.25))
        << ',' << fmt(quantile(abs_cost, 0.75)) << ',' << pct.size() << ',';
      if (pct.empty()) f << ",,\n";
      else f << fmt(quantile(pct, 0.5)) << ',' << fmt(quantile(pct, 0.25)) << ',' << fmt(quantile(pct, 0.75)) << '\n';
    }
  }
  {
    auto f = open("fig2_migp_vs_rounding.csv");
    f << "config,range,seed,migp_objective,gp_round_objective,migp_strictly_better\n";
    std::map<std::pair<std::string, int>, std::pair<const InstanceRecord*, const InstanceRecord*>> pairs;
    std::vector<std::pair<std::string, int>> order;
    for (const auto& r : records) {
      const auto key = std::make_pair(r.config, r.seed);
      if (!pairs.count(key)) order.push_back(key);
      if (r.method == MethodKind::Kind::Migp) pairs[key].first = &r;
      if (r.method == MethodKind::Kind::GpRounding) pairs[key].second = &r;
    }
    for (const auto& key : order) {
      const auto [m, g] = pairs[key];
      if (!m || !g || !m->objective || !g->objective) continue;
      f << key.first << ',' << to_string(m->range) << ',' << key.second << ',' << fmt(*m->objective) << ','
        << fmt(*g->objective) << ',' << (*m->objective < *g->objective - 1e-9 ? "true" : "false") << '\n';
    }
  }
  {
    auto f = open("fig3_feasibility.csv");
    f << "range,method,instances,feasible,feasibility_pct\n";
    for (auto range : {ServingRange::Loose, ServingRange::Tight, ServingRange::Ambitious})
      for (auto k : kinds) {
        int n = 0, ok = 0;
        for (const auto& r : records)
          if (r.range == range && r.method == k) {
            ++n;
            ok += r.feasible;
          }
        if (n) f << to_string(range) << ',' << to_string(k) << ',' << n << ',' << ok << ',' << fmt(100.0 * ok / n) << '\n';
      }
  }
  {
    auto f = open("fig4_solve_time.csv");
    f << "n_foods,method,instances,median_ms,q1_ms,q3_ms\n";
    for (int n : sizes)
      for (auto k : kinds) {
        std::vector<double> ms;
        for (const auto& r : records)
          if (r.n_foods == n && r.method == k) ms.push_back(r.solve_ms);
        if (!ms.empty())
          f << n << ',' << to_string(k) << ',' << ms.size() << ',' << fmt(quantile(ms, 0.5)) << ','
            << fmt(quantile(ms, 0.25)) << ',' << fmt(quantile(ms, 0.75)) << '\n';
      }
  }
  {
    auto f = open("fig5_max_deviation.csv");
    f << "n_foods,method,feasible_instances,min,q1,median,q3,max\n";
    for (int n : sizes)
      for (auto k : kinds) {
        std::vector<double> dev;
        for (const auto& r : records)
          if (r.n_foods == n && r.method == k && r.feasible) dev.push_back(*r.max_dev_pct);
        f << n << ',' << to_string(k) << ',' << dev.size();
        if (dev.empty()) f << ",,,,,\n";
        else
          f << ',' << fmt(quantile(dev, 0)) << ',' << fmt(quantile(dev, 0.25)) << ',' << fmt(quantile(dev, 0.5)) << ','
            << fmt(quantile(dev, 0.75)) << ',' << fmt(quantile(dev, 1)) << '\n';
      }
  }
}

std::vector<GranularityRecord> granularity_study(const FoodBank& bank, const std::vector<double>& sizes_g,
                                                 const BenchConfig& base, const StudyOptions& opt) {
  std::vector<GranularityRecord> out;
  const MacroVector targets = derive_targets(base.target);
  for (double size : sizes_g) {
    if (!(size > 0)) throw ValidationError("serving sizes must be positive");
    for (int seed = 0; seed < opt.n_seeds; ++seed) {
      auto foods = sample_instance(bank, base, seed);
      for (auto& f : foods) f.serving_g = size;
      const auto r = solve_migp(foods, targets, WeightScheme::inverse_target(), opt.bnb);
      GranularityRecord g;
      g.serving_g = size;
      g.seed = seed;
      g.objective = r.objective;
      g.z_lp = r.lp_bound.value_or(0.0);
      g.max_dev_pct = r.max_dev_pct();
      g.macros_within_5pct = r.macros_within_5pct();
      g.solve_ms = r.solve_ms;
      g.optimal = r.status == SolveStatus::Optimal;
      out.push_back(g);
    }
  }
  return out;
}

std::vector<GranularitySummary> summarize_granularity(const std::vector<GranularityRecord>& records) {
  std::vector<double> sizes;
  for (const auto& r : records)
    if (std::find(sizes.begin(), sizes.end(), r.serving_g) == sizes.end()) sizes.push_back(r.serving_g);
  std::vector<GranularitySummary> out;
  for (double s : sizes) {
    std::vector<double> obj, dev, within, ms, gap;
    for (const auto& r : records) {
      if (r.serving_g != s) continue;
      obj.push_back(r.objective);
      dev.push_back(r.max_dev_pct);
      within.push_back(r.macros_within_5pct);
      ms.push_back(r.solve_ms);
      gap.push_back(r.objective - r.z_lp);
    }
    out.push_back({s, median(obj), median(dev), median(within), median(ms), median(gap)});
  }
  return out;
}

void write_granularity_csv(std::ostream& os, const std::vector<GranularityRecord>& records) {
  os << "serving_g,seed,objective,z_lp,max_dev_pct,macros_within_5pct,solve_ms,optimal\n";
  for (const auto& r : records)
    os << fmt(r.serving_g) << ',' << r.seed << ',' << fmt(r.objective) << ',' << fmt(r.z_lp) << ','
       << fmt(r.max_dev_pct) << ',' << fmt(r.macros_within_5pct) << ',' << fmt(r.solve_ms) << ','
       << (r.optimal ? "true" : "false") << '\n';
}

void write_granularity_summary_csv(std::ostream& os, const std::vector<GranularitySummary>& rows) {
  os << "serving_g,median_objective,median_max_dev_pct,median_macros_within_5pct,median_ms,median_gap\n";
  for (const auto& s : rows)
    os << fmt(s.serving_g) << ',' << fmt(s.median_objective) << ',' << fmt(s.median_max_dev_pct) << ','
       << fmt(s.median_within_5pct) << ',' << fmt(s.median_ms) << ',' << fmt(s.median_gap) << '\n';
}

std::vector<WeightStudyRecord> weight_sensitivity_study(const FoodBank& bank, const BenchConfig& base,
                                                        const StudyOptions& opt) {
  const std::pair<const char*, WeightScheme> schemes[] = {{"inverse", WeightScheme::inverse_target()},
                                                          {"equal", WeightScheme::equal()},
                                                          {"double-protein", WeightScheme::double_protein()}};
  std::vector<WeightStudyRecord> out;
  const MacroVector targets = derive_targets(base.target);
  for (const auto& [name, scheme] : schemes)
    for (int seed = 0; seed < opt.n_seeds; ++seed) {
      const auto foods = sample_instance(bank, base, seed);
      const auto r = solve_migp(foods, targets, scheme, opt.bnb);
      out.push_back({name, seed, r.objective, r.deviation_pct});
    }
  return out;
}

std::vector<WeightStudySummary> summarize_weights(const std::vector<WeightStudyRecord>& records) {
  std::vector<std::string> schemes;
  for (const auto& r : records)
    if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end()) schemes.push_back(r.scheme);
  std::vector<WeightStudySummary> out;
  for (const auto& s : schemes) {
    WeightStudySummary sum;
    sum.scheme = s;
    std::vector<double> obj;
    std::array<std::vector<double>, 4> dev;
    for (const auto& r : records) {
      if (r.scheme != s) continue;
      obj.push_back(r.objective);
      for (std::size_t m = 0; m < 4; ++m)
        if (r.deviation_pct[m]) dev[m].push_back(std::abs(*r.deviation_pct[m]));
    }
    for (std::size_t m = 0; m < 4; ++m) sum.median_abs_dev_pct[m] = dev[m].empty() ? 0.0 : median(dev[m]);
    sum.median_objective = median(obj);
    out.push_back(sum);
  }
  return out;
}

void write_weight_csv(std::ostream& os, const std::vector<WeightStudyRecord>& records) {
  os << "scheme,seed,objective,objective_comparable_across_schemes,dev_pct_calories,dev_pct_protein,dev_pct_carbs,"
        "dev_pct_fat\n";
  for (const auto& r : records) {
    os << r.scheme << ',' << r.seed << ',' << fmt(r.objective) << ",false";
    for (const auto& d : r.deviation_pct) os << ',' << fmt_opt(d);
    os << '\n';
  }
}

void write_weight_summary_csv(std::ostream& os, const std::vector<WeightStudySummary>& rows) {
  os << "scheme,median_abs_dev_pct_calories,median_abs_dev_pct_protein,median_abs_dev_pct_carbs,"
        "median_abs_dev_pct_fat,median_objective,objective_comparable_across_schemes\n";
  for (const auto& s : rows) {
    os << s.scheme;
    for (double d : s.median_abs_dev_pct) os << ',' << fmt(d);
    os << ',' << fmt(s.median_objective) << ",false\n";
  }
}

}  // namespace mealopt
