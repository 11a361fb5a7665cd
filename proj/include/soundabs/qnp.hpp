#ifndef SOUNDABS_QNP_HPP
#define SOUNDABS_QNP_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "soundabs/logic.hpp"
#include "soundabs/sexpr.hpp"

namespace soundabs {

// ---------------------------------------------------------------------------
// Qualitative numeric planning problems
// ---------------------------------------------------------------------------

// A literal of the abstract language: a boolean feature or its negation, or a
// zero-test on a numeric variable.
struct QnpLiteral {
  enum class Kind { BoolPos, BoolNeg, NumEqZero, NumGtZero };
  Kind kind;
  std::string symbol;
};

enum class BoolEffect { SetTrue, SetFalse, Frame };
enum class NumEffect { Inc, Dec, Frame };

struct QnpAction {
  std::string name;
  std::vector<QnpLiteral> pre;
  std::map<std::string, bool> boolEffects;      // feature -> value set
  std::map<std::string, bool> numEffects;       // variable -> true:inc, false:dec

  BoolEffect bool_effect(const std::string& feature) const {
    auto it = boolEffects.find(feature);
    if (it == boolEffects.end()) return BoolEffect::Frame;
    return it->second ? BoolEffect::SetTrue : BoolEffect::SetFalse;
  }
  NumEffect num_effect(const std::string& var) const {
    auto it = numEffects.find(var);
    if (it == numEffects.end()) return NumEffect::Frame;
    return it->second ? NumEffect::Inc : NumEffect::Dec;
  }
};

// Boolean features, numeric variables (compared only against zero), actions
// with set/clear and increment/decrement effects, and literal-conjunction
// init and goal.
struct QnpProblem {
  std::string name;
  std::vector<std::string> bools;
  std::vector<std::string> nums;
  std::vector<QnpLiteral> init;
  std::vector<QnpLiteral> goal;
  std::vector<QnpAction> actions;

  bool is_bool(const std::string& n) const {
    for (const auto& b : bools)
      if (b == n) return true;
    return false;
  }
  bool is_num(const std::string& n) const {
    for (const auto& v : nums)
      if (v == n) return true;
    return false;
  }
};

// Turns an abstract literal into a formula over feature atoms / numeric
// comparisons, ready for map_formula.
inline FormulaPtr literal_formula(const QnpLiteral& lit) {
  switch (lit.kind) {
    case QnpLiteral::Kind::BoolPos:
      return f::atom(lit.symbol, {});
    case QnpLiteral::Kind::BoolNeg:
      return f::not_(f::atom(lit.symbol, {}));
    case QnpLiteral::Kind::NumEqZero:
      return f::numvar_cmp(NumOp::EqZero, lit.symbol);
    case QnpLiteral::Kind::NumGtZero:
      return f::numvar_cmp(NumOp::GtZero, lit.symbol);
  }
  throw LogicError("bad literal");
}

inline FormulaPtr literals_formula(const std::vector<QnpLiteral>& lits) {
  std::vector<FormulaPtr> kids;
  kids.reserve(lits.size());
  for (const auto& l : lits) kids.push_back(literal_formula(l));
  if (kids.empty()) return f::tru();
  if (kids.size() == 1) return kids[0];
  return f::and_(std::move(kids));
}

namespace detail {

inline QnpLiteral parse_qnp_literal(const Sexpr& e, const QnpProblem& q) {
  if (e.is_atom()) {
    if (!q.is_bool(e.atom))
      throw InputError(e.atom + " is not a declared boolean feature", e.pos, e.origin);
    return {QnpLiteral::Kind::BoolPos, e.atom};
  }
  if (e.size() == 2 && e.head() == "not") {
    const Sexpr& inner = e.at(1);
    if (!inner.is_atom() || !q.is_bool(inner.atom))
      throw InputError("not applies to a declared boolean feature", inner.pos, inner.origin);
    return {QnpLiteral::Kind::BoolNeg, inner.atom};
  }
  if (e.size() == 3 && (e.head() == "=" || e.head() == ">")) {
    const Sexpr& var = e.at(1);
    const Sexpr& zero = e.at(2);
    if (!var.is_atom() || !q.is_num(var.atom))
      throw InputError("comparison needs a declared numeric variable", var.pos, var.origin);
    if (!zero.is_atom() || zero.atom != "0")
      throw InputError("numeric variables are compared only against 0", zero.pos, zero.origin);
    return {e.head() == "=" ? QnpLiteral::Kind::NumEqZero : QnpLiteral::Kind::NumGtZero,
            var.atom};
  }
  throw InputError("expected a literal: F, (not F), (= n 0) or (> n 0)", e.pos, e.origin);
}

inline std::vector<QnpLiteral> parse_qnp_literals(const Sexpr& e, const QnpProblem& q,
                                                  const char* what) {
  if (!e.is_list())
    throw InputError(std::string(what) + " must be a literal list", e.pos, e.origin);
  std::vector<QnpLiteral> out;
  for (const auto& item : e.items) out.push_back(parse_qnp_literal(item, q));
  return out;
}

}  // namespace detail

// Grammar:
//   (qnp NAME (:bools F*) (:nums n*) (:init lit*) (:goal lit*)
//        (:action NAME :pre (lit*) :eff (eff*))*)
//   lit ::= F | (not F) | (= n 0) | (> n 0)
//   eff ::= F | (not F) | (inc n) | (dec n)
inline QnpProblem parse_qnp(const Sexpr& e) {
  if (!e.is_list() || e.size() < 2 || e.head() != "qnp" || !e.at(1).is_atom())
    throw InputError("expected (qnp NAME ...)", e.pos, e.origin);
  QnpProblem q;
  q.name = e.at(1).atom;

  bool sawBools = false, sawNums = false, sawInit = false, sawGoal = false;
  for (std::size_t i = 2; i < e.size(); ++i) {
    const Sexpr& sect = e.at(i);
    if (!sect.is_list() || sect.size() == 0)
      throw InputError("expected a qnp section", sect.pos, sect.origin);
    const std::string& tag = sect.head();

    if (tag == ":bools" || tag == ":nums") {
      bool& flag = tag == ":bools" ? sawBools : sawNums;
      if (flag) throw InputError("duplicate " + tag + " section", sect.pos, sect.origin);
      flag = true;
      auto& into = tag == ":bools" ? q.bools : q.nums;
      for (std::size_t j = 1; j < sect.size(); ++j) {
        const Sexpr& sym = sect.at(j);
        if (!sym.is_atom())
          throw InputError("feature names must be atoms", sym.pos, sym.origin);
        if (q.is_bool(sym.atom) || q.is_num(sym.atom))
          throw InputError("duplicate feature " + sym.atom, sym.pos, sym.origin);
        into.push_back(sym.atom);
      }
    } else if (tag == ":init" || tag == ":goal") {
      bool& flag = tag == ":init" ? sawInit : sawGoal;
      if (flag) throw InputError("duplicate " + tag + " section", sect.pos, sect.origin);
      flag = true;
      std::vector<QnpLiteral> lits;
      for (std::size_t j = 1; j < sect.size(); ++j)
        lits.push_back(detail::parse_qnp_literal(sect.at(j), q));
      (tag == ":init" ? q.init : q.goal) = std::move(lits);
    } else if (tag == ":action") {
      if (sect.size() != 6 || !sect.at(1).is_atom() || !sect.at(2).is_atom(":pre") ||
          !sect.at(4).is_atom(":eff"))
        throw InputError("expected (:action NAME :pre (lit*) :eff (eff*))", sect.pos,
                         sect.origin);
      QnpAction a;
      a.name = sect.at(1).atom;
      for (const auto& other : q.actions)
        if (other.name == a.name)
          throw InputError("duplicate action " + a.name, sect.pos, sect.origin);
      a.pre = detail::parse_qnp_literals(sect.at(3), q, ":pre");
      const Sexpr& effs = sect.at(5);
      if (!effs.is_list())
        throw InputError(":eff must be an effect list", effs.pos, effs.origin);
      for (const auto& eff : effs.items) {
        if (eff.is_atom()) {
          if (!q.is_bool(eff.atom))
            throw InputError(eff.atom + " is not a declared boolean feature", eff.pos,
                             eff.origin);
          if (a.boolEffects.count(eff.atom))
            throw InputError("conflicting effects on " + eff.atom, eff.pos, eff.origin);
          a.boolEffects.emplace(eff.atom, true);
        } else if (eff.size() == 2 && eff.head() == "not" && eff.at(1).is_atom()) {
          const std::string& sym = eff.at(1).atom;
          if (!q.is_bool(sym))
            throw InputError(sym + " is not a declared boolean feature", eff.pos, eff.origin);
          if (a.boolEffects.count(sym))
            throw InputError("conflicting effects on " + sym, eff.pos, eff.origin);
          a.boolEffects.emplace(sym, false);
        } else if (eff.size() == 2 && (eff.head() == "inc" || eff.head() == "dec") &&
                   eff.at(1).is_atom()) {
          const std::string& sym = eff.at(1).atom;
          if (!q.is_num(sym))
            throw InputError(sym + " is not a declared numeric variable", eff.pos, eff.origin);
          if (a.numEffects.count(sym))
            throw InputError("conflicting effects on " + sym, eff.pos, eff.origin);
          a.numEffects.emplace(sym, eff.head() == "inc");
        } else {
          throw InputError("expected an effect: F, (not F), (inc n) or (dec n)", eff.pos,
                           eff.origin);
        }
      }
      q.actions.push_back(std::move(a));
    } else {
      throw InputError("unknown qnp section " + tag, sect.pos, sect.origin);
    }
  }
  if (!sawBools || !sawNums)
    throw InputError("qnp needs :bools and :nums sections (may be empty)", e.pos, e.origin);
  if (!sawInit || !sawGoal)
    throw InputError("qnp needs :init and :goal sections", e.pos, e.origin);
  return q;
}

}  // namespace soundabs

#endif  // SOUNDABS_QNP_HPP
