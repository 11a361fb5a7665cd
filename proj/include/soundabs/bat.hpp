#ifndef SOUNDABS_BAT_HPP
#define SOUNDABS_BAT_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "soundabs/formula_io.hpp"
#include "soundabs/logic.hpp"

namespace soundabs {

// One add or delete literal of an action effect.  Arguments are parameter
// variables or constants.
struct EffectLiteral {
  bool add = true;
  std::string pred;
  std::vector<TermPtr> args;
};

struct Action {
  std::string name;
  std::vector<std::string> params;
  FormulaPtr precondition;  // free variables among params
  std::vector<EffectLiteral> effects;
};

// A concrete planning domain: vocabulary, parameterized actions with
// precondition and effect literals, a closed initial-state description, and a
// closed goal.  Effects induce the usual successor-state axioms
//   P(x) after a  <->  gamma+_P(x, a) or (P(x) and not gamma-_P(x, a)),
// which the regression module unfolds per ground action.
struct Domain {
  std::string name;
  SymbolTable symbols;
  std::vector<Action> actions;
  std::map<std::string, std::size_t> actionIndex;
  FormulaPtr init;
  FormulaPtr goal;

  const Action& action(const std::string& n) const {
    auto it = actionIndex.find(n);
    if (it == actionIndex.end()) throw LogicError("unknown action " + n);
    return actions[it->second];
  }
};

namespace detail {

inline void require_closed(const FormulaPtr& phi, const Sexpr& site, const char* what) {
  auto fv = free_vars(phi);
  if (!fv.empty())
    throw InputError(std::string(what) + " must be a closed formula (free: " + *fv.begin() + ")",
                     site.pos, site.origin);
}

inline void parse_effect_literals(const Sexpr& e, SymbolTable& symbols,
                                  const std::set<std::string>& params,
                                  std::vector<EffectLiteral>& out) {
  if (!e.is_list() || e.size() == 0)
    throw InputError("effect must be a literal or (and ...)", e.pos, e.origin);
  const std::string& head = e.head();
  if (head == "and") {
    for (std::size_t i = 1; i < e.size(); ++i)
      parse_effect_literals(e.at(i), symbols, params, out);
    return;
  }
  bool add = true;
  const Sexpr* lit = &e;
  if (head == "not") {
    if (e.size() != 2)
      throw InputError("not takes one literal", e.pos, e.origin);
    add = false;
    lit = &e.at(1);
    if (!lit->is_list() || lit->size() == 0)
      throw InputError("expected an atom under not", lit->pos, lit->origin);
  }
  const std::string& pred = lit->head();
  auto it = symbols.predicates.find(pred);
  if (it == symbols.predicates.end())
    throw InputError("unknown predicate " + pred + " in effect", lit->pos, lit->origin);
  if (static_cast<int>(lit->size()) - 1 != it->second)
    throw InputError(pred + " expects " + std::to_string(it->second) + " argument(s)", lit->pos,
                     lit->origin);
  EffectLiteral el;
  el.add = add;
  el.pred = pred;
  for (std::size_t i = 1; i < lit->size(); ++i)
    el.args.push_back(parse_term(lit->at(i), symbols, params));
  out.push_back(std::move(el));
}

}  // namespace detail

// Grammar:
//   (domain NAME
//     (:predicates (PRED ?v*)*)
//     (:action NAME :parameters (?v*) :precondition f :effect eff)*
//     (:init f)
//     (:goal f))
//   eff ::= (PRED t*) | (not (PRED t*)) | (and eff*)
inline Domain parse_domain(const Sexpr& e) {
  if (!e.is_list() || e.size() < 2 || e.head() != "domain" || !e.at(1).is_atom())
    throw InputError("expected (domain NAME ...)", e.pos, e.origin);
  Domain d;
  d.name = e.at(1).atom;

  bool sawPredicates = false, sawInit = false, sawGoal = false;
  for (std::size_t i = 2; i < e.size(); ++i) {
    const Sexpr& sect = e.at(i);
    if (!sect.is_list() || sect.size() == 0)
      throw InputError("expected a domain section", sect.pos, sect.origin);
    const std::string& tag = sect.head();

    if (tag == ":predicates") {
      if (sawPredicates)
        throw InputError("duplicate :predicates section", sect.pos, sect.origin);
      sawPredicates = true;
      for (std::size_t j = 1; j < sect.size(); ++j) {
        const Sexpr& decl = sect.at(j);
        if (!decl.is_list() || decl.size() == 0 || !decl.items[0].is_atom())
          throw InputError("predicate declarations look like (PRED ?v*)", decl.pos, decl.origin);
        const std::string& name = decl.head();
        detail::parse_var_list(
            [&decl] {
              Sexpr rest = Sexpr::list_node();
              rest.pos = decl.pos;
              rest.origin = decl.origin;
              rest.items.assign(decl.items.begin() + 1, decl.items.end());
              return rest;
            }(),
            "predicate parameter list");
        if (!d.symbols.predicates.emplace(name, static_cast<int>(decl.size()) - 1).second)
          throw InputError("duplicate predicate " + name, decl.pos, decl.origin);
      }
    } else if (tag == ":action") {
      if (!sawPredicates)
        throw InputError(":predicates must come before actions", sect.pos, sect.origin);
      if (sect.size() != 8 || !sect.at(1).is_atom())
        throw InputError(
            "expected (:action NAME :parameters (...) :precondition f :effect eff)", sect.pos,
            sect.origin);
      Action a;
      a.name = sect.at(1).atom;
      if (!sect.at(2).is_atom(":parameters") || !sect.at(4).is_atom(":precondition") ||
          !sect.at(6).is_atom(":effect"))
        throw InputError("action sections are :parameters, :precondition, :effect in that order",
                         sect.pos, sect.origin);
      a.params = detail::parse_var_list(sect.at(3), "action parameter list");
      std::set<std::string> bound(a.params.begin(), a.params.end());
      a.precondition = parse_formula(sect.at(5), d.symbols, bound);
      detail::parse_effect_literals(sect.at(7), d.symbols, bound, a.effects);
      for (const auto& lit : a.effects)
        for (const auto& other : a.effects)
          if (lit.add != other.add && lit.pred == other.pred &&
              lit.args.size() == other.args.size()) {
            bool same = true;
            for (std::size_t k = 0; k < lit.args.size(); ++k)
              if (!term_equal(lit.args[k], other.args[k])) same = false;
            if (same)
              throw InputError("action " + a.name + " both adds and deletes " + lit.pred,
                               sect.pos, sect.origin);
          }
      if (!d.symbols.actions.emplace(a.name, static_cast<int>(a.params.size())).second)
        throw InputError("duplicate action " + a.name, sect.pos, sect.origin);
      d.actionIndex.emplace(a.name, d.actions.size());
      d.actions.push_back(std::move(a));
    } else if (tag == ":init") {
      if (sawInit) throw InputError("duplicate :init section", sect.pos, sect.origin);
      if (!sawPredicates)
        throw InputError(":predicates must come before :init", sect.pos, sect.origin);
      if (sect.size() != 2)
        throw InputError(":init takes exactly one formula", sect.pos, sect.origin);
      sawInit = true;
      d.init = parse_formula(sect.at(1), d.symbols, {});
      detail::require_closed(d.init, sect, ":init formula");
    } else if (tag == ":goal") {
      if (sawGoal) throw InputError("duplicate :goal section", sect.pos, sect.origin);
      if (!sawPredicates)
        throw InputError(":predicates must come before :goal", sect.pos, sect.origin);
      if (sect.size() != 2)
        throw InputError(":goal takes exactly one formula", sect.pos, sect.origin);
      sawGoal = true;
      d.goal = parse_formula(sect.at(1), d.symbols, {});
      detail::require_closed(d.goal, sect, ":goal formula");
    } else {
      throw InputError("unknown domain section " + tag, sect.pos, sect.origin);
    }
  }
  if (!sawPredicates) throw InputError("domain has no :predicates section", e.pos, e.origin);
  if (!sawInit) throw InputError("domain has no :init section", e.pos, e.origin);
  if (!sawGoal) throw InputError("domain has no :goal section", e.pos, e.origin);
  return d;
}

// Parses a constraints file: (constraints f*).  Each formula must be closed;
// together they form the state-constraint background theory assumed to hold
// in every reachable situation.
inline std::vector<FormulaPtr> parse_constraints(const Sexpr& e, SymbolTable& symbols) {
  if (!e.is_list() || e.size() == 0 || e.head() != "constraints")
    throw InputError("expected (constraints f*)", e.pos, e.origin);
  std::vector<FormulaPtr> out;
  for (std::size_t i = 1; i < e.size(); ++i) {
    FormulaPtr phi = parse_formula(e.at(i), symbols, {});
    detail::require_closed(phi, e.at(i), "state constraint");
    out.push_back(phi);
  }
  return out;
}

}  // namespace soundabs

#endif  // SOUNDABS_BAT_HPP
