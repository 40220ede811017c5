#include <doctest.h>

#include <cmath>

#include "equivalence_suite.hpp"

using namespace combench;
using namespace combench::testing;

TEST_CASE("family oracle equivalence at tiny parameter points") {
  for (const auto& pt : equivalence_points()) {
    CAPTURE(pt.family);
    auto errors = run_equivalence_point(pt);
    for (const auto& e : errors) FAIL_CHECK(e);
  }
}

TEST_CASE("every build_model family appears in the equivalence point list") {
  std::set<std::string> covered;
  for (const auto& pt : equivalence_points()) covered.insert(pt.family);
  for (const auto& name : family_names()) {
    const auto& spec = registry_lookup(name);
    if (spec.build_model) {
      CAPTURE(name);
      CHECK(covered.count(name) == 1);
    }
  }
}
