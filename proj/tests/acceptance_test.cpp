#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>

#include "kplus/acceptance.hpp"

TEST_CASE("acceptance criteria") {
  const auto results = kplus::run_acceptance("all");
  REQUIRE(results.size() == 10);
  for (const auto& r : results) {
    std::printf("[%s] criterion %d: %s (%.1fs)%s%s\n", r.pass ? "PASS" : "FAIL",
                r.id, r.name.c_str(), r.seconds, r.pass ? "" : " -- ",
                r.pass ? "" : r.detail.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(r.pass, "criterion ", r.id, ": ", r.detail);
  }
}
