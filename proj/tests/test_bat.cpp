#include <catch2/catch_amalgamated.hpp>

#include "soundabs/bat.hpp"
#include "soundabs/regression.hpp"
#include "test_util.hpp"

using namespace soundabs;
namespace tu = soundabs::testutil;

namespace {
// A compact blocks domain used to pin compiler behavior independent of the
// bundled corpus files.  q is affected by no action.
const char* kBlocksText = R"((domain blocks-mini
  (:predicates (on ?x ?y) (ontable ?x) (clear ?x) (holding ?x) (q ?x))
  (:action mt
    :parameters (?x)
    :precondition (and (clear ?x) (not (ontable ?x)))
    :effect (and (ontable ?x) (not (holding ?x))))
  (:action unstack
    :parameters (?x ?y)
    :precondition (and (clear ?x) (on ?x ?y) (forall (?z) (not (holding ?z))))
    :effect (and (holding ?x) (clear ?y) (not (on ?x ?y))))
  (:init (ontable A))
  (:goal (clear A))))";

Domain mini() { return parse_domain(read_one_sexpr(kBlocksText, "<test>")); }
}  // namespace

TEST_CASE("domain compilation copies precondition axioms verbatim") {
  Domain d = mini();
  const Action& mt = d.action("mt");
  REQUIRE(mt.params == std::vector<std::string>{"?x"});
  auto expected = f::and_({f::atom("clear", {t::var("?x")}),
                           f::not_(f::atom("ontable", {t::var("?x")}))});
  CHECK(equal_up_to_normalization(mt.precondition, expected));
}

TEST_CASE("effect axioms realize the add/delete trichotomy") {
  Domain d = mini();
  RegressionContext ctx(d);

  // unstack(A,B) deletes on(A,B): the atom regresses to false
  auto onAB = f::atom("on", {t::cnst("A"), t::cnst("B")},
                      t::app("unstack", {t::cnst("A"), t::cnst("B")}));
  CHECK(equal_up_to_normalization(ctx.regress_step(onAB), f::fls()));

  // a different instance keeps its frame: on(A,B) survives unstack(A,C)
  auto frame = f::atom("on", {t::cnst("A"), t::cnst("B")},
                       t::app("unstack", {t::cnst("A"), t::cnst("C")}));
  CHECK(equal_up_to_normalization(ctx.regress_step(frame),
                                  f::atom("on", {t::cnst("A"), t::cnst("B")})));

  // mt(B) adds ontable(B): the atom regresses to true
  auto tableB = f::atom("ontable", {t::cnst("B")}, t::app("mt", {t::cnst("B")}));
  CHECK(equal_up_to_normalization(ctx.regress_step(tableB), f::tru()));

  // actions never mentioned in a fluent's effects leave it untouched
  auto qA = f::atom("q", {t::cnst("A")}, t::app("mt", {t::cnst("B")}));
  CHECK(equal_up_to_normalization(ctx.regress_step(qA), f::atom("q", {t::cnst("A")})));
}

TEST_CASE("unique-names reasoning distinguishes action instances") {
  Domain d = mini();
  RegressionContext ctx(d);
  // holding(B) after unstack(B,C) is just true (the add fires); after mt(B)
  // the delete fires and the atom regresses to false regardless of the frame.
  auto h1 = f::atom("holding", {t::cnst("B")}, t::app("unstack", {t::cnst("B"), t::cnst("C")}));
  CHECK(equal_up_to_normalization(ctx.regress_step(h1), f::tru()));
  auto h2 = f::atom("holding", {t::cnst("B")}, t::app("mt", {t::cnst("B")}));
  CHECK(equal_up_to_normalization(ctx.regress_step(h2), f::fls()));
}

TEST_CASE("compilation is deterministic") {
  Domain a = mini();
  Domain b = mini();
  REQUIRE(a.actions.size() == b.actions.size());
  for (std::size_t i = 0; i < a.actions.size(); ++i) {
    CHECK(a.actions[i].name == b.actions[i].name);
    CHECK(normal_form_string(a.actions[i].precondition) ==
          normal_form_string(b.actions[i].precondition));
    CHECK(a.actions[i].effects.size() == b.actions[i].effects.size());
  }
  CHECK(normal_form_string(a.init) == normal_form_string(b.init));
  CHECK(normal_form_string(a.goal) == normal_form_string(b.goal));
}

TEST_CASE("domain parser rejects malformed input") {
  // effect on an undeclared fluent
  CHECK_THROWS_AS(parse_domain(read_one_sexpr(R"((domain bad
    (:predicates (p ?x))
    (:action a :parameters (?x) :precondition (p ?x) :effect (and (zap ?x)))
    (:init true) (:goal true)))", "<test>")),
                  InputError);
  // arity mismatch in a precondition
  CHECK_THROWS_AS(parse_domain(read_one_sexpr(R"((domain bad
    (:predicates (p ?x))
    (:action a :parameters (?x) :precondition (p ?x ?x) :effect (and (p ?x)))
    (:init true) (:goal true)))", "<test>")),
                  InputError);
  // conditional effects are not part of the input language
  CHECK_THROWS_AS(parse_domain(read_one_sexpr(R"((domain bad
    (:predicates (p ?x) (r ?x))
    (:action a :parameters (?x) :precondition (p ?x)
      :effect (and (when (r ?x) (p ?x))))
    (:init true) (:goal true)))", "<test>")),
                  InputError);
  // effect variable outside the parameter list
  CHECK_THROWS_AS(parse_domain(read_one_sexpr(R"((domain bad
    (:predicates (p ?x))
    (:action a :parameters (?x) :precondition (p ?x) :effect (and (p ?y)))
    (:init true) (:goal true)))", "<test>")),
                  InputError);
}

TEST_CASE("constraint files parse to a formula list") {
  SymbolTable symbols;
  symbols.predicates = {{"p", 1}, {"r", 1}};
  auto none = parse_constraints(read_one_sexpr("(constraints)", "<t>"), symbols);
  CHECK(none.empty());

  auto two = parse_constraints(
      read_one_sexpr("(constraints (forall (?x) (p ?x)) (exists (?x) (r ?x)))", "<t>"), symbols);
  REQUIRE(two.size() == 2);
  CHECK(free_vars(two[0]).empty());
  CHECK(free_vars(two[1]).empty());

  // open formulas are rejected: constraints must be closed
  CHECK_THROWS_AS(parse_constraints(read_one_sexpr("(constraints (p ?x))", "<t>"), symbols),
                  InputError);
}

TEST_CASE("bundled corpus parses and instances satisfy their initial formulas") {
  for (const auto& name : tu::corpus_names()) {
    CAPTURE(name);
    auto c = tu::load_corpus(name);
    CHECK(!c.domain.actions.empty());
    CHECK(free_vars(c.domain.init).empty());
    CHECK(free_vars(c.domain.goal).empty());
    for (const auto& phi : c.constraints) CHECK(free_vars(phi).empty());
    CHECK(!c.instances.empty());  // load_instance validates each against init
  }
}
