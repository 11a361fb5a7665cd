// Randomized and exhaustive semantic property checks: regression through
// actions and programs must agree with direct execution, and the auxiliary
// transformations (simplification, counting elimination, closure evaluation,
// printing) must preserve meaning.
#include <catch2/catch_amalgamated.hpp>

#include "property_core.hpp"

using namespace soundabs;
namespace props = soundabs::testprops;

TEST_CASE("one-step regression agrees with execution on every small blocks state",
          "[properties]") {
  props::PropertyOutcome out = props::step_regression_agreement();
  INFO("failures: " << (out.failures.empty() ? "none" : out.failures.front()));
  CHECK(out.checks > 10000);  // exhaustive sweep is genuinely large
  for (const auto& msg : out.failures) FAIL_CHECK(msg);
  REQUIRE(out.failures.empty());
}

TEST_CASE("program regression agrees with execution enumeration on random triples",
          "[properties]") {
  props::PropertyOutcome out = props::program_regression_agreement(20260814, 600);
  REQUIRE(out.triples >= 500);
  for (const auto& msg : out.failures) FAIL_CHECK(msg);
  REQUIRE(out.failures.empty());
}

TEST_CASE("a second seed exercises different shapes", "[properties]") {
  props::PropertyOutcome out = props::program_regression_agreement(42, 150);
  REQUIRE(out.triples == 150);
  for (const auto& msg : out.failures) FAIL_CHECK(msg);
  REQUIRE(out.failures.empty());
}
