#pragma once

// The desk-scale acceptance suite: fourteen numbered criteria covering the
// exact constants, the oracle equivalences, the empirical densities and the
// determinism of the whole suite.

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "psc/config.hpp"
#include "psc/serialize.hpp"

namespace psc::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool ok = false;         // the substantive check
  Json detail;             // everything measured; never contains timings
  double elapsed_ms = 0.0;
  double budget_ms = 0.0;

  bool within_budget() const { return elapsed_ms < budget_ms; }
  bool passed() const { return ok && within_budget(); }
};

inline constexpr int kCriteria = 14;

// Runs criterion `id` (1..14). Criterion 14 re-runs 1..13 at jobs 1 and 4.
CriterionResult run_criterion(int id, const Exec& exec = {});

// Calls `sink` after each criterion, in order.
std::vector<CriterionResult> run_acceptance(const Exec& exec = {},
                                            const std::function<void(const CriterionResult&)>& sink = {});

// The JSON line compared across job counts: id, name, ok, detail.
Json canonical(const CriterionResult& r);

// Regression fixtures: a fixed set of derived values, one JSONL line per
// case, keyed by the FNV-1a hash of the canonical parameter dump.
struct FixtureCase {
  std::string command;
  Json params;
  std::function<Json(const Exec&)> compute;
};

std::vector<FixtureCase> fixture_cases();
std::string fixture_key(const std::string& command, const Json& params);

inline constexpr const char* kFixtureFile = "derived.jsonl";

// Writes dir/derived.jsonl; returns the number of cases.
std::size_t record_fixtures(const std::filesystem::path& dir, const Exec& exec = {});

struct FixtureMismatch {
  std::string key;
  std::string command;
  std::string reason;
};

struct FixtureCheck {
  bool present = false;  // the fixture file exists
  std::size_t checked = 0;
  std::vector<FixtureMismatch> mismatches;
  bool ok() const { return present && mismatches.empty(); }
};

// Numbers compare to 1e-9 relative, everything else exactly.
FixtureCheck check_fixtures(const std::filesystem::path& dir, const Exec& exec = {});

}  // namespace psc::verify
