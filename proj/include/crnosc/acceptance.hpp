#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace crnosc {

struct CriterionResult {
  std::string id;    // "A1", ..., "A13", "A6m"
  std::string name;  // "enumeration", ...
  bool passed = false;
  std::string detail;
  nlohmann::json metrics = nlohmann::json::object();
  double seconds = 0;
};

struct AcceptanceOptions {
  bool quick = false;              // skip the five-species enumeration sweep
  std::vector<std::string> only;   // ids or names; empty runs everything
  std::uint64_t seed = 20240611;
  unsigned workers = 0;
};

struct CriterionInfo {
  std::string id;
  std::string name;
};

const std::vector<CriterionInfo>& acceptance_criteria();

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt = {});

/// "A1 PASS enumeration: ..." per criterion.
std::string summary_line(const CriterionResult& r);
nlohmann::json to_json(const std::vector<CriterionResult>& results);

}  // namespace crnosc
