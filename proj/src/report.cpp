#include "chordal/report.hpp"

#include <algorithm>

namespace chordal {

CheckResult named_check(std::string name) {
  CheckResult c;
  c.name = std::move(name);
  return c;
}

void record(CheckResult& c, bool ok, const std::string& witness) {
  ++c.checked;
  if (!ok && c.pass) {
    c.pass = false;
    c.witness = witness;
  }
}

SuiteReport finish(SuiteReport r) {
  r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const auto& c) { return c.pass; });
  return r;
}

}  // namespace chordal
