#include "mealopt/report.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>

namespace mealopt {

namespace {

// printf into a std::string.
std::string sfmt(const char* f, ...) {
  va_list ap;
  va_start(ap, f);
  char buf[512];
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::string pct(const std::optional<double>& p) { return p ? sfmt("%+.1f%%", *p) : std::string("n/a%"); }

std::string rule(int width) { return std::string(static_cast<std::size_t>(width), '-') + '\n'; }

const char* kMacroHeads[4] = {"kcal", "P (g)", "C (g)", "F (g)"};

std::string macro_table(const SolverResult& r) {
  std::string s = sfmt("%-10s %10s %10s %10s %9s\n", "", "target", "achieved", "deviation", "dev %");
  for (Macro m : kMacros) {
    const int i = static_cast<int>(m);
    s += sfmt("%-10s %10.1f %10.1f %+10.1f %9s\n", kMacroHeads[i], r.targets[i], r.achieved[i], r.deviation[i],
              pct(r.deviation_pct[static_cast<std::size_t>(i)]).c_str());
  }
  return s;
}

}  // namespace

std::string format_result(const MealSpec& spec, const OptimizeOutcome& outcome) {
  const auto& r = outcome.result;
  std::string s;
  s += sfmt("method: %s   status: %s   time: %.1f ms\n", std::string(to_string(spec.method.kind)).c_str(),
            std::string(to_string(r.status)).c_str(), r.solve_ms);
  if (outcome.shortfall) s += "pre-check: " + outcome.shortfall->message() + "\n";
  if (!r.feasible()) {
    s += "no solution: " + r.note + "\n";
    return s;
  }
  s += "\n" + sfmt("%-28s %8s %10s\n", "food", "servings", "grams") + rule(48);
  for (const auto& f : spec.foods) {
    const int k = r.servings_of(f.name);
    if (k > 0) s += sfmt("%-28s %8d %10.1f\n", f.name.c_str(), k, k * f.serving_g);
  }
  s += "\n" + macro_table(r);
  s += sfmt("\nobjective (weighted deviation): %.4f\n", r.objective);
  if (r.lp_bound) s += sfmt("relaxation bound:               %.4f\n", *r.lp_bound);
  if (spec.method.kind == MethodKind::Kind::HardIp) s += sfmt("total servings: %d\n", r.total_servings());
  return s;
}

bool ExampleReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

ExampleReport run_example(const WorkedExample& ex) {
  ExampleReport rep;
  rep.id = ex.id;
  const MacroVector t = derive_targets(ex.target);
  const auto scheme = WeightScheme::inverse_target();
  const MacroVector w = compute_weights(t, scheme);
  rep.migp = run_method(MethodKind::migp(), ex.foods, t, scheme);
  rep.gp_round = run_method(MethodKind::gp_rounding(), ex.foods, t, scheme);
  rep.hard_ip = run_method(MethodKind::hard_ip(), ex.foods, t, scheme);
  const Eigen::VectorXd lp_x = canonical_relaxation(ex.foods, t, w, &rep.z_lp);
  const auto coeffs = coefficient_matrix(ex.foods);

  std::string& s = rep.text;
  s += sfmt("=== Example %c: %s ===\n\n", ex.id, ex.title.c_str());

  s += sfmt("Targets: %.0f kcal, %.0f/%.0f/%.0f (P/C/F %%)\n", ex.target.calories, ex.target.prot_pct,
            ex.target.carbs_pct, ex.target.fat_pct);
  s += sfmt("  protein = %.0f x %.2f / 4 = %.3f g\n", ex.target.calories, ex.target.prot_pct / 100, t[1]);
  s += sfmt("  carbs   = %.0f x %.2f / 4 = %.3f g\n", ex.target.calories, ex.target.carbs_pct / 100, t[2]);
  s += sfmt("  fat     = %.0f x %.2f / 9 = %.3f g\n\n", ex.target.calories, ex.target.fat_pct / 100, t[3]);

  s += sfmt("%-22s %5s %8s | %6s %6s %6s %6s | %6s %6s %6s %6s\n", "Food", "g", "range", "kcal", "P", "C", "F",
            "kcal", "P", "C", "F");
  s += rule(98);
  for (const auto& f : ex.foods) {
    const MacroVector c = per_serving(f);
    s += sfmt("%-22s %5.0f %8s | %6.0f %6.1f %6.1f %6.1f | %6.1f %6.1f %6.1f %6.1f\n", f.name.c_str(), f.serving_g,
              sfmt("[%d, %d]", f.min_servings, f.max_servings).c_str(), f.per100g[0], f.per100g[1], f.per100g[2],
              f.per100g[3], c[0], c[1], c[2], c[3]);
  }

  s += "\nMIGP breakdown\n";
  s += sfmt("%-28s %4s %8s %8s %8s %8s\n", "Food (serving)", "Qty", "kcal", "P (g)", "C (g)", "F (g)");
  s += rule(70);
  for (const auto& f : ex.foods) {
    const int k = rep.migp.servings_of(f.name);
    if (k == 0) continue;
    const MacroVector c = per_serving(f) * k;
    s += sfmt("%-28s %4d %8.1f %8.1f %8.1f %8.1f\n", sfmt("%s (%.0f g)", f.name.c_str(), f.serving_g).c_str(), k, c[0],
              c[1], c[2], c[3]);
  }
  s += rule(70);
  const auto& a = rep.migp.achieved;
  s += sfmt("%-28s %4s %8.1f %8.1f %8.1f %8.1f\n", "Total", "", a[0], a[1], a[2], a[3]);
  s += sfmt("%-28s %4s %8.1f %8.1f %8.1f %8.1f\n", "Target", "", t[0], t[1], t[2], t[3]);
  s += sfmt("%-28s %4s %8s %8s %8s %8s\n", "Deviation", "", pct(rep.migp.deviation_pct[0]).c_str(),
            pct(rep.migp.deviation_pct[1]).c_str(), pct(rep.migp.deviation_pct[2]).c_str(),
            pct(rep.migp.deviation_pct[3]).c_str());

  s += "\nSide by side\n";
  s += sfmt("%-22s %15s %15s %15s\n", "", "LP continuous", "GP+Round", "MIGP");
  s += rule(70);
  for (std::size_t i = 0; i < ex.foods.size(); ++i) {
    const auto& f = ex.foods[i];
    s += sfmt("%-22s %15.2f %15d %15d\n", f.name.c_str(), lp_x[static_cast<Eigen::Index>(i)],
              rep.gp_round.servings_of(f.name), rep.migp.servings_of(f.name));
  }
  s += rule(70);
  const MacroVector lp_a = coeffs * lp_x;
  for (Macro m : kMacros) {
    const int i = static_cast<int>(m);
    auto cell = [&](double v) {
      return t[i] != 0 ? sfmt("%.1f (%+.1f%%)", v, 100 * (v - t[i]) / t[i]) : sfmt("%.1f (n/a%%)", v);
    };
    s += sfmt("%-22s %15s %15s %15s\n", kMacroHeads[i], cell(lp_a[i]).c_str(), cell(rep.gp_round.achieved[i]).c_str(),
              cell(rep.migp.achieved[i]).c_str());
  }
  s += sfmt("%-22s %15.4f %15.4f %15.4f\n", "Objective (z)", rep.z_lp, rep.gp_round.objective, rep.migp.objective);

  s += "\nMethod comparison\n";
  s += sfmt("%-10s %9s %10s %8s %8s %8s %8s %9s\n", "Method", "Feasible", "Objective", "kcal", "P", "C", "F",
            "Max dev");
  s += rule(78);
  for (const auto* r : {&rep.migp, &rep.gp_round, &rep.hard_ip}) {
    const char* name = r == &rep.migp ? "MIGP" : r == &rep.gp_round ? "GP+Round" : "Hard-IP";
    if (!r->feasible()) {
      s += sfmt("%-10s %9s %10s %8s %8s %8s %8s %9s\n", name, "No", "-", "-", "-", "-", "-", "-");
      continue;
    }
    s += sfmt("%-10s %9s %10.4f %8s %8s %8s %8s %8.1f%%\n", name, "Yes", r->objective, pct(r->deviation_pct[0]).c_str(),
              pct(r->deviation_pct[1]).c_str(), pct(r->deviation_pct[2]).c_str(), pct(r->deviation_pct[3]).c_str(),
              r->max_dev_pct());
  }

  auto check_obj = [&](const std::string& what, double expected, double actual) {
    rep.checks.push_back({what, sfmt("%.4f", expected), sfmt("%.4f", actual),
                          std::abs(expected - actual) <= kExampleObjectiveTol});
  };
  const auto& e = ex.expected;
  if (e.z_lp) check_obj("LP objective", *e.z_lp, rep.z_lp);
  check_obj("MIGP objective", e.migp, rep.migp.objective);
  check_obj("GP+Round objective", e.gp_round, rep.gp_round.objective);
  if (e.hard_ip) {
    rep.checks.push_back({"Hard-IP feasible", "yes", rep.hard_ip.feasible() ? "yes" : "no", rep.hard_ip.feasible()});
    if (rep.hard_ip.feasible()) {
      check_obj("Hard-IP objective", *e.hard_ip, rep.hard_ip.objective);
      if (e.hard_ip_max_dev_pct)
        rep.checks.push_back({"Hard-IP max deviation", sfmt("%.1f%%", *e.hard_ip_max_dev_pct),
                              sfmt("%.2f%%", rep.hard_ip.max_dev_pct()),
                              std::abs(rep.hard_ip.max_dev_pct() - *e.hard_ip_max_dev_pct) <= kExampleMaxDevTolPct});
    }
  } else {
    rep.checks.push_back({"Hard-IP feasible", "no", rep.hard_ip.feasible() ? "yes" : "no", !rep.hard_ip.feasible()});
  }

  s += "\nChecks\n";
  for (const auto& c : rep.checks)
    s += sfmt("  %-4s %-24s expected %-8s got %s\n", c.pass ? "PASS" : "FAIL", c.what.c_str(), c.expected.c_str(),
              c.actual.c_str());
  return rep;
}

}  // namespace mealopt
