#pragma once

#include <functional>
#include <string>
#include <vector>

namespace wpa {

struct AcceptanceResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

std::vector<std::string> acceptance_names();

// Runs the criteria whose names are listed in only (all when empty); throws
// ConfigurationError on an unknown name.
std::vector<AcceptanceResult> run_acceptance(const std::vector<std::string>& only,
                                             const std::function<void(const AcceptanceResult&)>& on_result = {});

}  // namespace wpa
