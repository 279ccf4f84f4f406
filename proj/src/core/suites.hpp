#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace milnor {

struct SuiteInfo {
  int criterion;
  std::string name;
  std::string description;
};

struct SuiteResult {
  int criterion = 0;
  std::string name;
  bool passed = false;
  long cases = 0;
  double worst = 0.0;   // worst residual / ratio the suite tracks
  std::string summary;  // one line
  nlohmann::json details;
};

const std::vector<SuiteInfo>& suite_catalog();
// Throws Error(UnknownSuite) for names outside the catalog.
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 20240607);

}  // namespace milnor
