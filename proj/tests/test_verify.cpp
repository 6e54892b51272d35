#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "thomalab/errors.hpp"
#include "thomalab/verify.hpp"

using namespace thomalab;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.group_degree = 4;  // keep unit runs quick; acceptance runs degree 6
  config.ell_sequence = {1, 2, 4};
  return config;
}

}  // namespace

TEST_CASE("every suite runs green at reduced scale") {
  const ExperimentConfig config = small_config();
  for (const auto& name : suite_names()) {
    const VerificationReport report = run_suite(name, config);
    CAPTURE(name);
    CHECK(report.passed());
    CHECK(!report.records.empty());
    for (const auto& r : report.records) {
      CAPTURE(r.label);
      CHECK(r.pass);
    }
  }
  CHECK_THROWS_AS(run_suite("nonsense", config), ConfigError);
}

TEST_CASE("reports are deterministic") {
  const ExperimentConfig config = small_config();
  for (const std::string name : {"limit-cycles", "commuting-squares", "stirling"}) {
    const std::string once = report_to_json(run_suite(name, config)).dump(2);
    const std::string twice = report_to_json(run_suite(name, config)).dump(2);
    CHECK(once == twice);
  }
  // A different seed is recorded in the report.
  ExperimentConfig reseeded = config;
  reseeded.seed = 42;
  CHECK(report_to_json(run_suite("limit-cycles", reseeded))["seed"] == 42);
}

TEST_CASE("config parsing") {
  const Json j = {
      {"params", {{"a", {"1/2", "1/4"}}, {"b", {"1/8"}}}},
      {"slot_count", 7},
      {"seed", 99},
      {"suites", {"stirling", "markov"}},
  };
  const ExperimentConfig config = config_from_json(j);
  CHECK(config.params.a == std::vector<Rat>{Rat(1, 2), Rat(1, 4)});
  CHECK(config.params.c == Rat(1, 8));
  CHECK(config.slot_count == 7);
  CHECK(config.seed == 99);
  CHECK(config.suites == std::vector<std::string>{"stirling", "markov"});

  CHECK_THROWS_AS(config_from_json(Json{{"params", {{"a", {"0.5"}}}}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json{{"suites", {"bogus"}}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json{{"group_degree", 12}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(Json{{"params", {{"a", {"1/2", "2/3"}}}}}), ConfigError);

  // Round trip through JSON keeps the exact fractions.
  const ExperimentConfig back = config_from_json(config_to_json(config));
  CHECK(back.params == config.params);
  CHECK(back.seed == config.seed);
}

TEST_CASE("character table") {
  ExperimentConfig config = small_config();
  config.params = ThomaParams::make({Rat(1, 3), Rat(1, 3), Rat(1, 3)}, {});
  const auto rows = character_table(config);
  CHECK(rows.size() == 5);  // cycle types of S4
  for (const auto& row : rows) {
    CHECK(row.equal);
    // Uniform weights: the trace of a k-cycle is (1/3)^(k-1), so each row
    // value is (1/3)^(degree - number of orbits).
    int moved = 0, parts = 0;
    for (const auto& [k, mk] : row.type) {
      moved += k * mk;
      parts += mk;
    }
    CHECK(row.formula == rat_pow(Rat(1, 3), moved - parts));
  }

  const std::string csv = character_table_to_csv(rows);
  CHECK(csv.starts_with("cycle_type,character,model_trace,status\n"));
  CHECK(csv.find("\r") == std::string::npos);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

  // Regular parameters: zero column off the identity.
  config.params = ThomaParams::regular();
  for (const auto& row : character_table(config)) {
    CHECK(row.equal);
    if (!row.type.empty()) CHECK(row.formula == 0);
  }
}

TEST_CASE("oracle equivalence harness") {
  ExperimentConfig config = small_config();
  const VerificationReport report = run_oracle_equivalence(config, 24);
  CHECK(report.passed());
  CHECK(report.records.size() == 12);  // four spaces, three paths each
}

TEST_CASE("json round trips for domain values") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> letters;
    for (int i = 0; i < 6; ++i) letters.push_back(static_cast<int>(rng() % 8));
    const GeneratorWord w{rng() % 2 ? Alphabet::Star : Alphabet::Coxeter, letters};
    CHECK(word_from_json(word_to_json(w)) == w);
    const Permutation p = eval_word(w);
    CHECK(permutation_from_json(permutation_to_json(p)) == p);
  }
  const ThomaParams params = ThomaParams::make({Rat(1, 2), Rat(1, 4)}, {Rat(1, 8)});
  CHECK(params_from_json(params_to_json(params)) == params);
  const ThomaMeasure m = spectral_measure(params);
  CHECK(measure_from_json(measure_to_json(m)) == m);
  CHECK_THROWS_AS(permutation_from_json(Json{{"cycles", {{0, 0}}}}), ContractError);
  CHECK_THROWS_AS(params_from_json(Json{{"a", {"1/2"}}, {"c", "1/3"}}), ConfigError);

  // Operators round trip with their diagonal parts.
  const ModelSpace space = ModelSpace::from_params(params, 4);
  const ModelOperator x = multiply(
      space, represent(space, Permutation::from_cycles({{0, 2, 3}})),
      limit_cycle_A(space, 1));
  CHECK(operator_from_json(operator_to_json(x)) == x);

  // Matrices round trip, complex entries as [re, im] pairs.
  CMatrix cm = cmat_zero(2);
  cm[0][1] = CRat(Rat(1, 2), Rat(-1, 3));
  cm[1][0] = CRat(Rat(2));
  CHECK(cmatrix_from_json(cmatrix_to_json(cm)) == cm);
}

TEST_CASE("commuting-square fixtures declared in config") {
  // A 2x2 diagonal corner inside the full algebra over the normalized
  // trace; diagonal and off-diagonal phase algebras form a square over the
  // scalars.
  const Json density = Json::array({Json::array({"1/2", "0"}), Json::array({"0", "1/2"})});
  const Json diag_gen = Json::array({Json::array({"1", "0"}), Json::array({"0", "-1"})});
  const Json flip_gen = Json::array({Json::array({"0", "1"}), Json::array({"1", "0"})});
  Json fixture;
  fixture["name"] = "pauli";
  fixture["density"] = density;
  fixture["N"] = Json::array();
  fixture["B1"] = Json::array({diag_gen});
  fixture["B2"] = Json::array({flip_gen});
  fixture["M"] = Json::array({diag_gen, flip_gen});
  Json config_json;
  config_json["square_fixtures"] = Json::array({fixture});
  const ExperimentConfig config = config_from_json(config_json);
  const VerificationReport report = run_suite("commuting-squares", config);
  bool found = false;
  for (const auto& r : report.records)
    if (r.label == "config-fixture/pauli") {
      found = true;
      CHECK(r.pass);
    }
  CHECK(found);
}
