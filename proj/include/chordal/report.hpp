#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "chordal/parallel.hpp"

namespace chordal {

struct CheckResult {
  std::string name;
  bool pass = true;
  long checked = 0;
  std::string witness;  // first failing instance
};

CheckResult named_check(std::string name);
void record(CheckResult& c, bool ok, const std::string& witness);

struct SuiteReport {
  std::string suite;
  int degree = 0;
  bool pass = true;
  std::vector<CheckResult> checks;
  std::map<std::string, std::string> facts;  // extra per-suite values
};

// Runs f over n items with the configured workers and folds the outcomes in
// index order, so the first witness never depends on scheduling.
template <class F>
void run_checks(CheckResult& c, std::size_t n, F&& f) {
  auto results = parallel_map<std::pair<bool, std::string>>(n, std::forward<F>(f));
  for (auto& [ok, w] : results) record(c, ok, w);
}

// Sets pass from the individual checks.
SuiteReport finish(SuiteReport r);

}  // namespace chordal
