#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "thomalab/json_io.hpp"
#include "thomalab/thoma.hpp"

namespace thomalab {

/// Knobs for the verification suites; every rational enters as an exact
/// fraction string.
struct ExperimentConfig {
  ThomaParams params = ThomaParams::make({Rat(1, 2), Rat(1, 4)}, {Rat(1, 4)});
  int slot_count = 6;
  int zero_labels = 1;
  std::vector<int> ell_sequence = {1, 2, 4, 8, 16};
  int enumeration_bound = 8;
  int group_degree = 6;   // size of the symmetric-group sweeps
  long max_dense_dim = 243;
  std::uint64_t seed = 20240914;
  // Suites for the consolidated report: absent = all, an explicitly empty
  // list = none.
  bool suites_selected = false;
  std::vector<std::string> suites;
  // Extra commuting-square fixtures, each {"name", "density", "N", "B1",
  // "B2", "M"} with matrices as nested fraction arrays; checked by the
  // commuting-squares suite.
  Json square_fixtures = Json::array();
};

ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& config);

struct CheckRecord {
  std::string label;
  std::string anchor;  // which identity family the check belongs to
  bool pass = false;
  std::string lhs;
  std::string rhs;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckRecord> records;
  double wall_seconds = 0;  // console diagnostics only, never serialized

  bool passed() const;
  int failures() const;
};

// Deterministic: no timing fields, insertion-ordered keys.
Json report_to_json(const VerificationReport& report);

const std::vector<std::string>& suite_names();
bool is_suite_name(const std::string& name);

// Runs one named suite at the configured scale.
VerificationReport run_suite(const std::string& name, const ExperimentConfig& config);

/// One row of the character table: a cycle type of the configured symmetric
/// group with the formula value and the model trace.
struct CharacterRow {
  CycleType type;
  Rat formula;
  Rat model_trace;
  bool equal = false;
};

std::vector<CharacterRow> character_table(const ExperimentConfig& config);
Json character_table_to_json(const ExperimentConfig& config,
                             const std::vector<CharacterRow>& rows);
std::string character_table_to_csv(const std::vector<CharacterRow>& rows);

// Oracle equivalence: every combinatorial trace/product/expectation path
// against the dense matrix model, on seeded random words over several
// spaces.
VerificationReport run_oracle_equivalence(const ExperimentConfig& config, int words);

}  // namespace thomalab
