// Acceptance gate: runs every named suite and prints one verdict line per
// criterion. Exits nonzero if any suite fails.

#include <cstdio>
#include <exception>
#include <string>

#include "sfq/suites.hpp"

#ifndef SFQ_CLI_PATH
#define SFQ_CLI_PATH ""
#endif
#ifndef SFQ_FIXTURE_DIR
#define SFQ_FIXTURE_DIR "fixtures"
#endif

int main() {
  bool all_pass = true;
  for (const auto& s : sfq::suites::registry(SFQ_CLI_PATH, SFQ_FIXTURE_DIR)) {
    sfq::suites::Outcome out;
    try {
      out = s.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    if (out.pass) {
      std::printf("criterion %2d %-22s PASS (%ld checks)\n", s.id,
                  s.name.c_str(), out.checks);
    } else {
      std::printf("criterion %2d %-22s FAIL (%ld checks) -- %s\n", s.id,
                  s.name.c_str(), out.checks, out.detail.c_str());
      all_pass = false;
    }
    std::fflush(stdout);
  }
  return all_pass ? 0 : 1;
}
