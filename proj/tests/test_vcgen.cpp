#include <catch2/catch_amalgamated.hpp>

#include "soundabs/vcgen.hpp"
#include "soundabs/exec.hpp"
#include "test_util.hpp"

using namespace soundabs;
namespace tu = soundabs::testutil;

namespace {
FormulaPtr above_a(const std::string& x) {
  return f::exists({"?z"}, f::and_({f::atom("on", {t::var(x), t::var("?z")}),
                                    f::tc("?u", "?v",
                                          f::atom("on", {t::var("?u"), t::var("?v")}),
                                          t::var("?z"), t::cnst("A"))}));
}
}  // namespace

TEST_CASE("suite enumerates the documented task counts") {
  std::map<std::string, std::size_t> expected = {
      {"cleara", 8},  {"getlast", 4},   {"finda", 4}, {"corner", 8},
      {"gripper", 34}, {"logistics", 26}, {"onab", 32},
  };
  for (const auto& name : tu::corpus_names()) {
    CAPTURE(name);
    auto c = tu::load_corpus(name);
    auto suite = generate_tasks(c.domain, c.constraints, c.qnp, c.mapping);
    std::size_t formula =
        2 + c.qnp.actions.size() * (1 + c.qnp.bools.size() + c.qnp.nums.size());
    CHECK(suite.tasks.size() == formula);
    CHECK(suite.tasks.size() == expected.at(name));
  }
}

TEST_CASE("every generated formula is closed and machinery-free") {
  for (const auto& name : tu::corpus_names()) {
    CAPTURE(name);
    auto c = tu::load_corpus(name);
    auto suite = generate_tasks(c.domain, c.constraints, c.qnp, c.mapping);
    for (const auto& task : suite.tasks) {
      CAPTURE(task.id);
      CHECK(free_vars(task.formula).empty());
      CHECK(!has_internal_nodes(task.formula));
    }
  }
}

TEST_CASE("task identifiers and kinds follow the fixed scheme") {
  auto c = tu::load_corpus("cleara");
  auto suite = generate_tasks(c.domain, c.constraints, c.qnp, c.mapping);
  std::vector<std::string> ids;
  for (const auto& task : suite.tasks) ids.push_back(task.id);
  std::vector<std::string> expected = {
      "task1:init",          "task2:pickabove",     "task2:putaside",
      "task3:pickabove:H",   "task3:putaside:H",    "task4:pickabove:n",
      "task4:putaside:n",    "task5:goal",
  };
  CHECK(ids == expected);
  CHECK(suite.tasks.front().kind == VerificationTask::Kind::Init);
  CHECK(suite.tasks.back().kind == VerificationTask::Kind::Goal);
}

TEST_CASE("init task matches its printed form") {
  auto c = tu::load_corpus("cleara");
  auto task = gen_task_init(c.domain, c.qnp, c.mapping);

  // concrete init implies (no block held) and (some block above A)
  auto expected = f::imply(
      c.domain.init,
      f::and_({f::exists({"?x"}, above_a("?x")),
               f::not_(f::exists({"?x"}, f::atom("holding", {t::var("?x")})))}));
  expected = simplify(eliminate_counting(expected));
  CHECK(equal_up_to_normalization(task.formula, expected));
}

TEST_CASE("init task is exhaustively valid on small structures") {
  auto c = tu::load_corpus("cleara");
  auto task = gen_task_init(c.domain, c.qnp, c.mapping);

  // every arrangement of up to four blocks satisfies the implication, with
  // and without a held block
  std::vector<std::vector<std::string>> universes = {
      {"A"}, {"A", "b1"}, {"A", "b1", "b2"}, {"A", "b1", "b2", "b3"}};
  int checked = 0;
  for (const auto& names : universes) {
    for (auto& s : tu::all_block_arrangements(names)) {
      CHECK(evaluate(s, task.formula));
      ++checked;
      // lift each tower top in turn
      for (const auto& b : names) {
        if (!s.holds("clear", {b}) || b == "A") continue;
        Structure held = s;
        held.relations["holding"].insert({b});
        held.relations["ontable"].erase({b});
        for (auto& [pred, tuples] : held.relations) {
          if (pred != "on") continue;
          std::set<std::vector<std::string>> kept;
          for (const auto& tup : tuples)
            if (tup[0] != b) kept.insert(tup);
          tuples = kept;
        }
        CHECK(evaluate(held, task.formula));
        ++checked;
      }
    }
  }
  CHECK(checked > 100);

  // and no structure with at most three objects falsifies it
  auto cm = find_countermodel(task.formula, {}, c.domain.symbols.predicates,
                              c.domain.symbols.constants, {3, 300000});
  CHECK(!cm.has_value());
}

TEST_CASE("executability task shape: constraints imply the equivalence") {
  auto c = tu::load_corpus("cleara");
  const auto& put = c.qnp.actions[1];
  auto task = gen_task_exec(c.domain, c.constraints, c.qnp, c.mapping, put);
  REQUIRE(task.formula->kind == Formula::Kind::Imply);
  const auto& conclusion = task.formula->kids[1];
  REQUIRE(conclusion->kind == Formula::Kind::Iff);
  // right-hand side is the mapped abstract precondition of putaside: H
  auto mappedPre = f::exists({"?x"}, f::atom("holding", {t::var("?x")}));
  CHECK(equal_up_to_normalization(conclusion->kids[1], simplify(mappedPre)));
}

TEST_CASE("count change templates have the documented shape") {
  auto body = f::atom("holding", {t::var("?x")});
  auto count = f::count_cmp(NumOp::EqZero, {"?x"}, body);

  auto inc = build_psi(count, NumEffect::Inc);
  REQUIRE(inc->kind == Formula::Kind::And);
  CHECK(inc->kids.size() == 3);  // gain witness, no losses, gain uniqueness

  auto dec = build_psi(count, NumEffect::Dec);
  REQUIRE(dec->kind == Formula::Kind::And);
  CHECK(dec->kids.size() == 3);

  auto frame = build_psi(count, NumEffect::Frame);
  CHECK(free_vars(frame).empty());

  // multi-variable counts are rejected for strict change tracking
  auto pair = f::count_cmp(NumOp::EqZero, {"?x", "?y"},
                           f::atom("on", {t::var("?x"), t::var("?y")}));
  CHECK_THROWS_AS(build_psi(pair, NumEffect::Dec), LogicError);
}

TEST_CASE("change template with identical pre and post state is unsatisfiable") {
  // if the property does not change, "some object gains it" cannot hold:
  // evaluate the increment template with frozen state equal to current state
  auto body = f::atom("holding", {t::var("?x")});
  auto count = f::count_cmp(NumOp::EqZero, {"?x"}, body);
  auto inc = strip_frozen(build_psi(count, NumEffect::Inc));
  auto s = tu::tower_instance(3);
  CHECK(!evaluate(s, inc));
  auto held = tu::blocks_state({"A", "b1"}, {{"b1", "@"}});
  CHECK(!evaluate(held, inc));
}

TEST_CASE("goal task premises include constraints and the mapped goal") {
  auto c = tu::load_corpus("cleara");
  auto task = gen_task_goal(c.domain, c.constraints, c.qnp, c.mapping);
  REQUIRE(task.formula->kind == Formula::Kind::Imply);
  CHECK(equal_up_to_normalization(task.formula->kids[1], c.domain.goal));
  // the premise conjunction mentions every constraint plus the mapped goal
  REQUIRE(task.formula->kids[0]->kind == Formula::Kind::And);
  CHECK(task.formula->kids[0]->kids.size() == c.constraints.size() + 1);
}

TEST_CASE("degenerate abstraction with no actions yields init and goal only") {
  auto c = tu::load_corpus("cleara");
  auto q = parse_qnp(read_one_sexpr(
      "(qnp empty (:bools H) (:nums n) (:init (not H)) (:goal (not H)))", "<test>"));
  auto suite = generate_tasks(c.domain, c.constraints, q, c.mapping);
  REQUIRE(suite.tasks.size() == 2);
  CHECK(suite.tasks[0].kind == VerificationTask::Kind::Init);
  CHECK(suite.tasks[1].kind == VerificationTask::Kind::Goal);
}

TEST_CASE("missing mapping entries are reported before any task is built") {
  auto c = tu::load_corpus("cleara");
  auto q = parse_qnp(read_one_sexpr(
      "(qnp extra (:bools H G) (:nums n) (:init (not H)) (:goal (not H)))", "<test>"));
  CHECK_THROWS_AS(generate_tasks(c.domain, c.constraints, q, c.mapping), InputError);
}

TEST_CASE("generated task formulas hold on every reachable bundled state") {
  // spot-check the smallest two domains end to end against the interpreter
  for (const std::string name : {"cleara", "getlast"}) {
    CAPTURE(name);
    auto c = tu::load_corpus(name);
    auto suite = generate_tasks(c.domain, c.constraints, c.qnp, c.mapping);
    for (const auto& task : suite.tasks) {
      CAPTURE(task.id);
      auto res = check_validity_finite(task.formula, c.domain, c.instances);
      CHECK(res.valid);
      if (!res.valid) WARN(task.id + " violated at " + res.witness);
    }
  }
}
