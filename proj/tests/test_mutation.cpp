// Mutation battery: small textual corruptions of the corpus files must never
// be proven sound when a finite oracle can already exhibit a failing state.
#include <catch2/catch_amalgamated.hpp>

#include "mutation_core.hpp"

using namespace soundabs;
namespace mut = soundabs::testmut;
namespace tu = soundabs::testutil;

TEST_CASE("finitely refutable mutations are never verified as sound", "[mutation]") {
  VerifyOptions opts;
  opts.solverCmd = tu::solver_cmd();
  opts.timeoutSecs = 2;
  opts.jobs = 4;

  mut::MutationStats stats = mut::run_battery(opts);

  for (const auto& e : stats.errors) FAIL_CHECK(e);
  REQUIRE(stats.errors.empty());

  INFO("refutable mutations: " << stats.refutableCount << " of " << stats.records.size());
  CHECK(stats.refutableCount >= 20);

  for (const auto& name : stats.unsoundAccepted)
    FAIL_CHECK("verifier proved a finitely refuted abstraction sound: " << name);
  REQUIRE(stats.unsoundAccepted.empty());

  // Every record ran to completion and the battery stayed informative.
  for (const auto& rec : stats.records) {
    INFO(rec.name << " verdict " << to_string(rec.verdict)
                  << (rec.refutable ? " (oracle: " + rec.violatedTask + ")" : ""));
    CHECK(rec.applied);
    CHECK(rec.error.empty());
  }
}
