#pragma once

#include "torcal/serialize.hpp"

#include <functional>
#include <string>
#include <vector>

namespace torcal::selftest {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Options {
  unsigned long long seed = 7;
  int jobs = 1;
  // trimmed corpus sizes for quick smoke runs; the acceptance defaults are
  // the full sizes
  bool quick = false;
};

std::vector<CriterionResult> run_acceptance(const Options& opt);
std::string report_text(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

// deterministic parallel map over an index range
void parallel_for(int jobs, int n, const std::function<void(int)>& fn);

}  // namespace torcal::selftest
