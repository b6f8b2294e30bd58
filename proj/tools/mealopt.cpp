// mealopt: optimize a meal, rerun the worked examples, run the benchmark
// study, or serve the HTTP API.

#include "mealopt/benchmark.hpp"
#include "mealopt/io.hpp"
#include "mealopt/report.hpp"
#include "mealopt/server.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mealopt;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitCheckFailed = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_errors(const std::string& file, const ValidationError& e) {
  if (const auto* se = dynamic_cast<const SpecError*>(&e)) {
    for (const auto& fe : se->errors()) std::cerr << file << ": " << fe.field << ": " << fe.message << '\n';
  } else {
    std::cerr << file << ": " << e.what() << '\n';
  }
}

struct OptimizeArgs {
  std::string meal;
  std::string method;
  std::string weights;
  std::string bank;
  std::string precheck = "warn";
  double time_limit_s = 30;
  bool time_limit_given = false;
  bool json = false;
};

int cmd_optimize(const OptimizeArgs& a) {
  MealSpec spec;
  std::optional<FoodBank> bank;
  try {
    if (!a.bank.empty()) bank = load_bank(a.bank);
    spec = parse_meal_spec(read_file(a.meal), bank ? &*bank : nullptr);
    if (!a.method.empty()) {
      auto k = parse_method(a.method);
      if (!k) throw SpecError("--method", "must be one of migp, gp-round, hard-ip");
      spec.method.kind = *k;
    }
    if (!a.weights.empty()) {
      if (a.weights == "inverse") spec.weights = WeightScheme::inverse_target();
      else if (a.weights == "equal") spec.weights = WeightScheme::equal();
      else if (a.weights.rfind("custom:", 0) == 0)
        spec.weights = WeightScheme::custom(weight_multipliers_from_json(nlohmann::json::parse(read_file(a.weights.substr(7)))));
      else throw SpecError("--weights", "must be inverse, equal or custom:<file>");
    }
    if (a.time_limit_given) {
      if (!(a.time_limit_s > 0)) throw SpecError("--time-limit-s", "must be positive");
      spec.time_limit_s = a.time_limit_s;
    }
  } catch (const ValidationError& e) {
    print_errors(a.meal, e);
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "weights file: " << e.what() << '\n';
    return kExitInput;
  }

  const MacroVector targets = derive_targets(spec.target);
  if (a.precheck == "abort") {
    if (auto s = precheck_feasibility(spec.foods, targets)) {
      std::cerr << s->message() << '\n';
      return kExitNoSolution;
    }
  }

  OptimizeOutcome outcome;
  try {
    outcome = optimize(spec);
  } catch (const ValidationError& e) {
    print_errors(a.meal, e);
    return kExitInput;
  }
  if (a.json) std::cout << result_to_json(spec, outcome).dump(2) << '\n';
  else std::cout << format_result(spec, outcome);
  return outcome.result.feasible() ? kExitOk : kExitNoSolution;
}

int cmd_examples(const std::string& which) {
  std::vector<char> ids;
  if (which == "all") {
    for (const auto& e : worked_examples()) ids.push_back(e.id);
  } else if (which.size() == 1) {
    ids.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(which[0]))));
  } else {
    std::cerr << "--which must be A, B, C, D, E or all\n";
    return kExitInput;
  }
  int passed = 0, total = 0;
  for (char id : ids) {
    const WorkedExample* ex;
    try {
      ex = &worked_example(id);
    } catch (const ValidationError& e) {
      std::cerr << e.what() << '\n';
      return kExitInput;
    }
    const auto rep = run_example(*ex);
    std::cout << rep.text << '\n';
    for (const auto& c : rep.checks) {
      ++total;
      passed += c.pass;
    }
  }
  std::cout << passed << "/" << total << " checks passed\n";
  return passed == total ? kExitOk : kExitCheckFailed;
}

struct BenchArgs {
  std::string bank;
  std::string out;
  int seeds = 30;
  std::vector<std::string> configs;
  bool granularity = false;
  bool weights_study = false;
  double time_limit_s = 30;
  bool quiet = false;
};

int cmd_benchmark(const BenchArgs& a) {
  FoodBank bank;
  std::vector<BenchConfig> configs;
  try {
    bank = load_bank(a.bank);
    if (a.configs.empty()) configs = standard_configs();
    for (const auto& name : a.configs) configs.push_back(find_config(name));
  } catch (const ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitInput;
  }
  if (a.seeds < 1) {
    std::cerr << "--seeds must be >= 1\n";
    return kExitInput;
  }
  const std::filesystem::path out(a.out);
  std::filesystem::create_directories(out);

  StudyOptions opt;
  opt.n_seeds = a.seeds;
  opt.bnb.time_limit_s = a.time_limit_s;
  if (!a.quiet)
    opt.on_record = [](const InstanceRecord& r) {
      std::fprintf(stderr, "\r%-16s seed %2d %-8s %9.1f ms", r.config.c_str(), r.seed,
                   std::string(to_string(r.method)).c_str(), r.solve_ms);
    };

  const auto records = run_study(bank, configs, all_methods(), opt);
  if (!a.quiet) std::fputc('\n', stderr);
  {
    std::ofstream f(out / "results.csv");
    write_results_csv(f, records);
  }
  const auto summary = summarize(records);
  {
    std::ofstream f(out / "summary.csv");
    write_summary_csv(f, summary);
  }
  write_figure_data(out, records);
  std::cout << records.size() << " rows written to " << (out / "results.csv").string() << "\n\n";
  std::printf("%-16s %-9s %12s %11s %14s %12s %11s\n", "group", "method", "feasibility", "median obj", "median maxdev",
              "within 5%", "median ms");
  for (const auto& s : summary) {
    auto o = [](const std::optional<double>& v, const char* f) {
      char buf[32];
      if (v) std::snprintf(buf, sizeof buf, f, *v);
      else std::snprintf(buf, sizeof buf, "-");
      return std::string(buf);
    };
    std::printf("%-16s %-9s %11.1f%% %11s %14s %12s %11s\n", s.group.c_str(), std::string(to_string(s.method)).c_str(),
                s.feasibility_pct, o(s.median_objective, "%.4f").c_str(), o(s.median_max_dev_pct, "%.1f%%").c_str(),
                o(s.median_within_5pct, "%.0f%%").c_str(), o(s.median_ms, "%.1f").c_str());
  }

  if (a.granularity) {
    const auto recs = granularity_study(bank, {25, 50, 100, 200}, find_config("medium-loose"), opt);
    const auto sum = summarize_granularity(recs);
    std::ofstream f(out / "granularity.csv");
    write_granularity_csv(f, recs);
    std::ofstream g(out / "granularity_summary.csv");
    write_granularity_summary_csv(g, sum);
    std::printf("\n%-12s %11s %12s %11s %12s\n", "serving", "median obj", "max dev %", "within 5%", "median ms");
    for (const auto& s : sum)
      std::printf("%-12s %11.4f %11.1f%% %10.0f%% %12.1f\n", (std::to_string(int(s.serving_g)) + " g").c_str(),
                  s.median_objective, s.median_max_dev_pct, s.median_within_5pct, s.median_ms);
  }
  if (a.weights_study) {
    const auto recs = weight_sensitivity_study(bank, find_config("medium-loose"), opt);
    const auto sum = summarize_weights(recs);
    std::ofstream f(out / "weights.csv");
    write_weight_csv(f, recs);
    std::ofstream g(out / "weights_summary.csv");
    write_weight_summary_csv(g, sum);
    std::printf("\nmedian |deviation %%| per macro (objectives are not comparable across schemes)\n");
    std::printf("%-16s %8s %8s %8s %8s\n", "scheme", "kcal", "P", "C", "F");
    for (const auto& s : sum)
      std::printf("%-16s %8.2f %8.2f %8.2f %8.2f\n", s.scheme.c_str(), s.median_abs_dev_pct[0], s.median_abs_dev_pct[1],
                  s.median_abs_dev_pct[2], s.median_abs_dev_pct[3]);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integer meal optimization with soft macro targets"};
  app.require_subcommand(1);

  OptimizeArgs oa;
  auto* opt = app.add_subcommand("optimize", "Solve one meal spec");
  opt->add_option("--meal", oa.meal, "Meal spec JSON file")->required();
  opt->add_option("--method", oa.method, "migp | gp-round | hard-ip (overrides the file)");
  opt->add_option("--weights", oa.weights, "inverse | equal | custom:<file>");
  auto* tl = opt->add_option("--time-limit-s", oa.time_limit_s, "Solver time limit in seconds");
  opt->add_option("--bank", oa.bank, "Food bank used to resolve foods given by name");
  opt->add_option("--precheck", oa.precheck, "warn (default) or abort when a target is out of reach")
      ->check(CLI::IsMember({"warn", "abort"}));
  opt->add_flag("--json", oa.json, "Print the result document instead of tables");

  std::string which = "all";
  auto* ex = app.add_subcommand("examples", "Rerun the built-in worked examples");
  ex->add_option("--which", which, "A | B | C | D | E | all");

  BenchArgs ba;
  auto* bench = app.add_subcommand("benchmark", "Run the benchmark study");
  bench->add_option("--bank", ba.bank, "Food bank JSON")->required();
  bench->add_option("--out", ba.out, "Output directory")->required();
  bench->add_option("--seeds", ba.seeds, "Seeds per configuration");
  bench->add_option("--configs", ba.configs, "Configuration names (default: all nine)")->delimiter(',');
  bench->add_flag("--granularity", ba.granularity, "Also run the serving-granularity study");
  bench->add_flag("--weights-study", ba.weights_study, "Also run the weight-scheme study");
  bench->add_option("--time-limit-s", ba.time_limit_s, "Per-solve time limit");
  bench->add_flag("--quiet", ba.quiet, "No progress output");

  std::string bank_path = "data/food_bank.json", host = "127.0.0.1";
  int port = 8080;
  auto* srv = app.add_subcommand("serve", "Serve the HTTP API");
  srv->add_option("--bank", bank_path, "Food bank JSON");
  srv->add_option("--host", host, "Bind address");
  srv->add_option("--port", port, "Port");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*opt) {
      oa.time_limit_given = tl->count() > 0;
      return cmd_optimize(oa);
    }
    if (*ex) return cmd_examples(which);
    if (*bench) return cmd_benchmark(ba);
    if (*srv) {
      FoodBank bank;
      try {
        bank = load_bank(bank_path);
      } catch (const ValidationError& e) {
        std::cerr << e.what() << '\n';
        return kExitInput;
      }
      std::cerr << "serving " << bank.size() << " foods on http://" << host << ':' << port << '\n';
      serve(bank, host, port);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitOk;
}
