#include <catch2/catch_amalgamated.hpp>

#include "soundabs/qnp.hpp"
#include "soundabs/sexpr.hpp"
#include "test_util.hpp"

using namespace soundabs;
namespace tu = soundabs::testutil;

namespace {
QnpProblem cleara_qnp() {
  return parse_qnp(read_one_sexpr(R"((qnp cleara
    (:bools H)
    (:nums n)
    (:init (> n 0) (not H))
    (:goal (= n 0))
    (:action pickabove :pre ((not H) (> n 0)) :eff (H (dec n)))
    (:action putaside :pre (H) :eff ((not H)))))", "<test>"));
}

// Prints a problem back into the input grammar (round-trip fixture only).
std::string print_qnp(const QnpProblem& q) {
  auto lit = [](const QnpLiteral& l) -> std::string {
    switch (l.kind) {
      case QnpLiteral::Kind::BoolPos: return l.symbol;
      case QnpLiteral::Kind::BoolNeg: return "(not " + l.symbol + ")";
      case QnpLiteral::Kind::NumEqZero: return "(= " + l.symbol + " 0)";
      case QnpLiteral::Kind::NumGtZero: return "(> " + l.symbol + " 0)";
    }
    return "";
  };
  std::string out = "(qnp " + q.name + " (:bools";
  for (const auto& b : q.bools) out += " " + b;
  out += ") (:nums";
  for (const auto& v : q.nums) out += " " + v;
  out += ") (:init";
  for (const auto& l : q.init) out += " " + lit(l);
  out += ") (:goal";
  for (const auto& l : q.goal) out += " " + lit(l);
  out += ")";
  for (const auto& a : q.actions) {
    out += " (:action " + a.name + " :pre (";
    for (std::size_t i = 0; i < a.pre.size(); ++i) out += (i ? " " : "") + lit(a.pre[i]);
    out += ") :eff (";
    bool first = true;
    for (const auto& [sym, val] : a.boolEffects) {
      out += (first ? "" : " ") + std::string(val ? sym : "(not " + sym + ")");
      first = false;
    }
    for (const auto& [sym, inc] : a.numEffects) {
      out += (first ? "" : " ") + std::string(inc ? "(inc " : "(dec ") + sym + ")";
      first = false;
    }
    out += "))";
  }
  return out + ")";
}
}  // namespace

TEST_CASE("abstraction file parses to declared features and actions") {
  auto q = cleara_qnp();
  CHECK(q.bools == std::vector<std::string>{"H"});
  CHECK(q.nums == std::vector<std::string>{"n"});
  REQUIRE(q.actions.size() == 2);

  const auto& pick = q.actions[0];
  CHECK(pick.name == "pickabove");
  REQUIRE(pick.pre.size() == 2);
  CHECK(pick.pre[0].kind == QnpLiteral::Kind::BoolNeg);
  CHECK(pick.pre[0].symbol == "H");
  CHECK(pick.pre[1].kind == QnpLiteral::Kind::NumGtZero);
  CHECK(pick.pre[1].symbol == "n");
  CHECK(pick.bool_effect("H") == BoolEffect::SetTrue);
  CHECK(pick.num_effect("n") == NumEffect::Dec);

  const auto& put = q.actions[1];
  CHECK(put.name == "putaside");
  REQUIRE(put.pre.size() == 1);
  CHECK(put.pre[0].kind == QnpLiteral::Kind::BoolPos);
  CHECK(put.bool_effect("H") == BoolEffect::SetFalse);
  CHECK(put.num_effect("n") == NumEffect::Frame);
}

TEST_CASE("effect descriptors default to frame") {
  auto q = parse_qnp(read_one_sexpr(
      "(qnp t (:bools F) (:nums n) (:init F) (:goal F) (:action idle :pre (F) :eff ()))",
      "<test>"));
  const auto& idle = q.actions[0];
  CHECK(idle.bool_effect("F") == BoolEffect::Frame);
  CHECK(idle.num_effect("n") == NumEffect::Frame);
}

TEST_CASE("conflicting numeric effects are rejected") {
  CHECK_THROWS_AS(parse_qnp(read_one_sexpr(
                      "(qnp bad (:bools) (:nums n) (:init (> n 0)) (:goal (= n 0))"
                      " (:action a :pre ((> n 0)) :eff ((inc n) (dec n))))", "<test>")),
                  InputError);
  CHECK_THROWS_AS(parse_qnp(read_one_sexpr(
                      "(qnp bad (:bools F) (:nums) (:init F) (:goal F)"
                      " (:action a :pre (F) :eff (F (not F))))", "<test>")),
                  InputError);
}

TEST_CASE("literals must reference declared symbols") {
  CHECK_THROWS_AS(parse_qnp(read_one_sexpr(
                      "(qnp bad (:bools H) (:nums) (:init G) (:goal H)"
                      " (:action a :pre (H) :eff ()))", "<test>")),
                  InputError);
  CHECK_THROWS_AS(parse_qnp(read_one_sexpr(
                      "(qnp bad (:bools H) (:nums) (:init H) (:goal (= H 0))"
                      " (:action a :pre (H) :eff ()))", "<test>")),
                  InputError);
}

TEST_CASE("parse print parse is stable") {
  for (const auto& name : tu::corpus_names()) {
    CAPTURE(name);
    auto q = tu::load_corpus(name).qnp;
    auto reparsed = parse_qnp(read_one_sexpr(print_qnp(q), "<round>"));
    CHECK(q.name == reparsed.name);
    CHECK(q.bools == reparsed.bools);
    CHECK(q.nums == reparsed.nums);
    REQUIRE(q.actions.size() == reparsed.actions.size());
    for (std::size_t i = 0; i < q.actions.size(); ++i) {
      CHECK(q.actions[i].name == reparsed.actions[i].name);
      CHECK(q.actions[i].boolEffects == reparsed.actions[i].boolEffects);
      CHECK(q.actions[i].numEffects == reparsed.actions[i].numEffects);
      CHECK(q.actions[i].pre.size() == reparsed.actions[i].pre.size());
    }
  }
}

TEST_CASE("literal conjunctions convert to formulas") {
  auto q = cleara_qnp();
  auto init = literals_formula(q.init);
  REQUIRE(init->kind == Formula::Kind::And);
  auto goal = literals_formula(q.goal);
  CHECK(goal->kind == Formula::Kind::NumCmp);
}
