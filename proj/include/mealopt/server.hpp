#pragma once

// HTTP surface over the solver: health, food bank, optimize, gap.

#include "mealopt/benchmark.hpp"

#include <httplib.h>

#include <string>

namespace mealopt {

/// Registers the /api routes. `bank` must outlive the server.
void register_routes(httplib::Server& server, const FoodBank& bank);

/// Blocks until the server stops. Throws std::runtime_error when the port
/// cannot be bound.
void serve(const FoodBank& bank, const std::string& host, int port);

}  // namespace mealopt
