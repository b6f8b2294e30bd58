#include "mealopt/examples.hpp"
#include "mealopt/io.hpp"
#include "mealopt/server.hpp"

#include <doctest.h>

#include <future>
#include <thread>

using namespace mealopt;
using nlohmann::json;

namespace {

struct TestServer {
  FoodBank bank = load_bank(std::string(MEALOPT_DATA_DIR) + "/food_bank.json");
  httplib::Server server;
  std::thread thread;
  int port = 0;

  TestServer() {
    register_routes(server, bank);
    port = server.bind_to_any_port("127.0.0.1");
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
  }
  ~TestServer() {
    server.stop();
    thread.join();
  }
  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port);
    c.set_read_timeout(60, 0);
    return c;
  }
};

TestServer& srv() {
  static TestServer s;
  return s;
}

MealSpec example_spec(char id, MethodKind method = MethodKind::migp()) {
  const auto& ex = worked_example(id);
  MealSpec s;
  s.target = ex.target;
  s.foods = ex.foods;
  s.method = method;
  return s;
}

httplib::Result post(const std::string& path, const json& body) {
  return srv().client().Post(path, body.dump(), "application/json");
}

// Same keys and value types, recursively; values may differ (timing).
bool same_shape(const json& a, const json& b) {
  if (a.type() != b.type()) {
    const bool both_numbers = a.is_number() && b.is_number();
    return both_numbers;
  }
  if (a.is_object()) {
    if (a.size() != b.size()) return false;
    for (auto it = a.begin(); it != a.end(); ++it)
      if (!b.contains(it.key()) || !same_shape(it.value(), b[it.key()])) return false;
  }
  if (a.is_array()) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!same_shape(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("health and food bank") {
  auto h = srv().client().Get("/api/health");
  REQUIRE(h);
  CHECK(h->status == 200);
  CHECK(json::parse(h->body)["status"] == "ok");

  auto f = srv().client().Get("/api/foods");
  REQUIRE(f);
  CHECK(f->status == 200);
  const json foods = json::parse(f->body);
  REQUIRE(foods.is_array());
  CHECK(foods.size() == 30);
}

TEST_CASE("optimize matches the library and the CLI document") {
  const MealSpec spec = example_spec('E');
  auto r = post("/api/optimize", meal_spec_to_json(spec));
  REQUIRE(r);
  CHECK(r->status == 200);
  const json doc = json::parse(r->body);
  CHECK(std::abs(doc["objective"].get<double>() - 0.0959) <= 5e-4);
  const json local = result_to_json(spec, optimize(spec));
  CHECK(same_shape(doc, local));
  json a = doc, b = local;
  a.erase("solve_ms");
  b.erase("solve_ms");
  CHECK(a == b);
}

TEST_CASE("hard bands without a solution are a normal answer") {
  auto r = post("/api/optimize", meal_spec_to_json(example_spec('A', MethodKind::hard_ip())));
  REQUIRE(r);
  CHECK(r->status == 200);
  const json doc = json::parse(r->body);
  CHECK(doc["feasible"] == false);
  CHECK(!doc["note"].is_null());
}

TEST_CASE("validation errors are 400 with field details") {
  auto r = srv().client().Post("/api/optimize", "{not json", "application/json");
  REQUIRE(r);
  CHECK(r->status == 400);
  const json bad = json::parse(r->body);
  CHECK(bad["error"] == "validation");
  CHECK(!bad["errors"].empty());

  json spec = meal_spec_to_json(example_spec('A'));
  spec["foods"] = json::array();
  spec["target"]["fat_pct"] = 10;
  auto r2 = post("/api/optimize", spec);
  REQUIRE(r2);
  CHECK(r2->status == 400);
  CHECK(json::parse(r2->body)["errors"].size() >= 2);
}

TEST_CASE("gap endpoint") {
  auto r = post("/api/gap", meal_spec_to_json(example_spec('C')));
  REQUIRE(r);
  CHECK(r->status == 200);
  const json doc = json::parse(r->body);
  CHECK(doc["gamma_kind"] == "relative");
  CHECK(doc["gamma"].get<double>() == doctest::Approx(0.0106).epsilon(0.03));
}

TEST_CASE("concurrent requests give the sequential answers") {
  std::vector<json> expected;
  for (char id : {'A', 'B', 'C', 'D', 'E'}) expected.push_back(json::parse(post("/api/optimize", meal_spec_to_json(example_spec(id)))->body));
  std::vector<std::future<json>> futures;
  for (int rep = 0; rep < 2; ++rep)
    for (char id : {'A', 'B', 'C', 'D', 'E'})
      futures.push_back(std::async(std::launch::async, [id] {
        return json::parse(post("/api/optimize", meal_spec_to_json(example_spec(id)))->body);
      }));
  for (std::size_t i = 0; i < futures.size(); ++i) {
    json got = futures[i].get(), want = expected[i % 5];
    got.erase("solve_ms");
    want.erase("solve_ms");
    CHECK(got == want);
  }
}
