#include "mealopt/server.hpp"

#include "mealopt/io.hpp"

#include <stdexcept>

namespace mealopt {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

// Parses the body into a MealSpec or writes the 400 response.
std::optional<MealSpec> read_spec(const httplib::Request& req, httplib::Response& res, const FoodBank& bank) {
  try {
    return parse_meal_spec(req.body, &bank);
  } catch (const SpecError& e) {
    send_json(res, 400, errors_to_json(e.errors()));
  } catch (const ValidationError& e) {
    send_json(res, 400, errors_to_json({{"$", e.what()}}));
  }
  return std::nullopt;
}

void solver_failure(httplib::Response& res, const std::string& status, const std::string& message) {
  send_json(res, 422, {{"schema_version", kSchemaVersion}, {"error", "solver_failure"}, {"status", status},
                       {"message", message}});
}

}  // namespace

void register_routes(httplib::Server& server, const FoodBank& bank) {
  server.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    send_json(res, 200, {{"status", "ok"}, {"schema_version", kSchemaVersion}});
  });

  server.Get("/api/foods", [&bank](const httplib::Request&, httplib::Response& res) {
    res.status = 200;
    res.set_content(bank_to_json(bank, -1), "application/json");
  });

  server.Post("/api/optimize", [&bank](const httplib::Request& req, httplib::Response& res) {
    auto spec = read_spec(req, res, bank);
    if (!spec) return;
    try {
      const auto outcome = optimize(*spec);
      // A time limit with nothing to show is a solver failure; Hard-IP
      // infeasibility is an ordinary answer.
      if (outcome.result.status == SolveStatus::TimeLimit && !outcome.result.has_allocation) {
        solver_failure(res, "time_limit", outcome.result.note);
        return;
      }
      send_json(res, 200, result_to_json(*spec, outcome));
    } catch (const ValidationError& e) {
      send_json(res, 400, errors_to_json({{"$", e.what()}}));
    } catch (const std::exception& e) {
      solver_failure(res, "error", e.what());
    }
  });

  server.Post("/api/gap", [&bank](const httplib::Request& req, httplib::Response& res) {
    auto spec = read_spec(req, res, bank);
    if (!spec) return;
    try {
      BnbConfig cfg;
      cfg.time_limit_s = std::min(spec->time_limit_s, kMaxTimeLimitS);
      const auto report = integrality_gap(spec->foods, derive_targets(spec->target), spec->weights, cfg);
      send_json(res, 200, gap_to_json(report));
    } catch (const ValidationError& e) {
      send_json(res, 400, errors_to_json({{"$", e.what()}}));
    } catch (const std::exception& e) {
      solver_failure(res, "error", e.what());
    }
  });
}

void serve(const FoodBank& bank, const std::string& host, int port) {
  httplib::Server server;
  register_routes(server, bank);
  if (!server.bind_to_port(host, port))
    throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port) + " (port busy or not permitted)");
  server.listen_after_bind();
}

}  // namespace mealopt
