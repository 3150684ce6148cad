#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qck {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double budget = 0.0;  // runtime limit in seconds, part of the pass condition
  std::string detail;   // first failing check, or the error message
  nlohmann::json metrics = nlohmann::json::object();

  nlohmann::json to_json() const;
};

/// Criterion ids of a named suite: all, flat, qch, bochner, sasaki, hygiene.
/// Throws ConfigError for anything else.
std::vector<int> suite_criteria(const std::string& suite);

/// Runs one criterion (1..11). Exceptions from the library are caught and
/// reported as failures.
CriterionResult run_criterion(int id);

std::vector<CriterionResult> run_suite(const std::string& suite);

/// "[PASS]  3  name  (0.41 s / 30 s)" plus the failure detail if any.
std::string format_line(const CriterionResult& r);

}  // namespace qck
