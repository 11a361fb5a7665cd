#ifndef SOUNDABS_FORMULA_IO_HPP
#define SOUNDABS_FORMULA_IO_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "soundabs/logic.hpp"
#include "soundabs/sexpr.hpp"

namespace soundabs {

// Vocabulary shared by the input files of one verification problem.
// Constants are collected on the fly; predicates and actions are declared by
// the domain file and checked at every use site.
struct SymbolTable {
  std::map<std::string, int> predicates;  // name -> arity
  std::map<std::string, int> actions;     // name -> arity
  std::set<std::string> constants;

  bool is_predicate(const std::string& n) const { return predicates.count(n) != 0; }
  bool is_action(const std::string& n) const { return actions.count(n) != 0; }
};

namespace detail {

inline bool is_variable_token(const std::string& s) { return !s.empty() && s[0] == '?'; }

inline std::vector<std::string> parse_var_list(const Sexpr& e, const char* what) {
  if (!e.is_list())
    throw InputError(std::string(what) + " must be a parenthesized variable list", e.pos, e.origin);
  std::vector<std::string> vars;
  std::set<std::string> seen;
  for (const auto& item : e.items) {
    if (!item.is_atom() || !is_variable_token(item.atom))
      throw InputError(std::string(what) + " entries must be ?variables", item.pos, item.origin);
    if (!seen.insert(item.atom).second)
      throw InputError("duplicate variable " + item.atom, item.pos, item.origin);
    vars.push_back(item.atom);
  }
  return vars;
}

}  // namespace detail

// Parses an object term.  Every variable must be bound by an enclosing
// quantifier or parameter list; bare names are constants and are registered
// in the symbol table.
inline TermPtr parse_term(const Sexpr& e, SymbolTable& symbols,
                          const std::set<std::string>& bound) {
  if (!e.is_atom())
    throw InputError("expected a term (variable or constant)", e.pos, e.origin);
  if (detail::is_variable_token(e.atom)) {
    if (!bound.count(e.atom))
      throw InputError("unbound variable " + e.atom, e.pos, e.origin);
    return t::var(e.atom);
  }
  if (symbols.is_predicate(e.atom) || symbols.is_action(e.atom))
    throw InputError(e.atom + " names a predicate or action, not an object", e.pos, e.origin);
  symbols.constants.insert(e.atom);
  return t::cnst(e.atom);
}

// Parses a formula of the task language:
//   f ::= true | false | (PRED t*) | (= t t) | (not f) | (and f*) | (or f*)
//       | (imply f f) | (iff f f) | (forall (?v+) f) | (exists (?v+) f)
//       | (tc (?u ?v) f t t) | (= (count (?v+) f) 0) | (> (count (?v+) f) 0)
inline FormulaPtr parse_formula(const Sexpr& e, SymbolTable& symbols,
                                std::set<std::string> bound) {
  if (e.is_atom()) {
    if (e.atom == "true") return f::tru();
    if (e.atom == "false") return f::fls();
    throw InputError("expected a formula, got atom " + e.atom, e.pos, e.origin);
  }
  if (e.items.empty()) throw InputError("empty list is not a formula", e.pos, e.origin);
  const std::string& head = e.head();

  auto expect_size = [&e, &head](std::size_t n) {
    if (e.size() != n)
      throw InputError(head + " takes " + std::to_string(n - 1) + " argument(s)", e.pos, e.origin);
  };

  if (head == "not") {
    expect_size(2);
    return f::not_(parse_formula(e.at(1), symbols, bound));
  }
  if (head == "and" || head == "or") {
    std::vector<FormulaPtr> kids;
    for (std::size_t i = 1; i < e.size(); ++i)
      kids.push_back(parse_formula(e.at(i), symbols, bound));
    if (kids.empty()) return head == "and" ? f::tru() : f::fls();
    if (kids.size() == 1) return kids[0];
    return head == "and" ? f::and_(std::move(kids)) : f::or_(std::move(kids));
  }
  if (head == "imply") {
    expect_size(3);
    return f::imply(parse_formula(e.at(1), symbols, bound),
                    parse_formula(e.at(2), symbols, bound));
  }
  if (head == "iff") {
    expect_size(3);
    return f::iff(parse_formula(e.at(1), symbols, bound), parse_formula(e.at(2), symbols, bound));
  }
  if (head == "forall" || head == "exists") {
    expect_size(3);
    auto vars = detail::parse_var_list(e.at(1), "quantifier variable list");
    if (vars.empty())
      throw InputError("quantifier needs at least one variable", e.at(1).pos, e.origin);
    for (const auto& v : vars) bound.insert(v);
    FormulaPtr body = parse_formula(e.at(2), symbols, bound);
    return head == "forall" ? f::forall(std::move(vars), body) : f::exists(std::move(vars), body);
  }
  if (head == "tc") {
    expect_size(5);
    auto vars = detail::parse_var_list(e.at(1), "tc variable pair");
    if (vars.size() != 2)
      throw InputError("tc needs exactly two edge variables", e.at(1).pos, e.origin);
    std::set<std::string> inner = bound;
    inner.insert(vars[0]);
    inner.insert(vars[1]);
    FormulaPtr body = parse_formula(e.at(2), symbols, inner);
    TermPtr t1 = parse_term(e.at(3), symbols, bound);
    TermPtr t2 = parse_term(e.at(4), symbols, bound);
    return f::tc(vars[0], vars[1], body, t1, t2);
  }
  if (head == "=" || head == ">") {
    expect_size(3);
    const Sexpr& lhs = e.at(1);
    const Sexpr& rhs = e.at(2);
    if (lhs.is_list() && lhs.size() > 0 && lhs.head() == "count") {
      if (lhs.size() != 3)
        throw InputError("count takes a variable list and a body", lhs.pos, lhs.origin);
      auto vars = detail::parse_var_list(lhs.at(1), "count variable list");
      if (vars.empty())
        throw InputError("count needs at least one variable", lhs.at(1).pos, lhs.origin);
      std::set<std::string> inner = bound;
      for (const auto& v : vars) inner.insert(v);
      FormulaPtr body = parse_formula(lhs.at(2), symbols, inner);
      if (!rhs.is_atom() || rhs.atom != "0")
        throw InputError("count terms may only be compared with 0", rhs.pos, rhs.origin);
      return f::count_cmp(head == "=" ? NumOp::EqZero : NumOp::GtZero, std::move(vars), body);
    }
    if (head == ">")
      throw InputError("> only applies to count terms", e.pos, e.origin);
    return f::eq(parse_term(lhs, symbols, bound), parse_term(rhs, symbols, bound));
  }

  // Predicate application.
  auto it = symbols.predicates.find(head);
  if (it == symbols.predicates.end())
    throw InputError("unknown predicate or connective " + head, e.pos, e.origin);
  if (static_cast<int>(e.size()) - 1 != it->second)
    throw InputError(head + " expects " + std::to_string(it->second) + " argument(s), got " +
                         std::to_string(e.size() - 1),
                     e.pos, e.origin);
  std::vector<TermPtr> args;
  for (std::size_t i = 1; i < e.size(); ++i) args.push_back(parse_term(e.at(i), symbols, bound));
  return f::atom(head, std::move(args));
}

// ---------------------------------------------------------------------------
// Printing back to the surface syntax
// ---------------------------------------------------------------------------

inline Sexpr term_to_sexpr(const TermPtr& tm) {
  switch (tm->kind) {
    case Term::Kind::Var:
    case Term::Kind::Const:
      return Sexpr::atom_node(tm->name);
    case Term::Kind::App: {
      Sexpr out = Sexpr::list_node();
      out.items.push_back(Sexpr::atom_node(tm->name));
      for (const auto& a : tm->args) out.items.push_back(term_to_sexpr(a));
      return out;
    }
  }
  return Sexpr::atom_node("?");
}

inline Sexpr formula_to_sexpr(const FormulaPtr& phi) {
  auto list = [](std::initializer_list<Sexpr> items) {
    Sexpr out = Sexpr::list_node();
    out.items.assign(items);
    return out;
  };
  auto var_list = [](const std::vector<std::string>& vars) {
    Sexpr out = Sexpr::list_node();
    for (const auto& v : vars) out.items.push_back(Sexpr::atom_node(v));
    return out;
  };
  switch (phi->kind) {
    case Formula::Kind::True:
      return Sexpr::atom_node("true");
    case Formula::Kind::False:
      return Sexpr::atom_node("false");
    case Formula::Kind::Atom: {
      if (phi->act) throw LogicError("cannot print an atom with a pending action");
      Sexpr out = Sexpr::list_node();
      out.items.push_back(Sexpr::atom_node(phi->pred));
      for (const auto& a : phi->args) out.items.push_back(term_to_sexpr(a));
      return out;
    }
    case Formula::Kind::Eq:
      return list({Sexpr::atom_node("="), term_to_sexpr(phi->args[0]),
                   term_to_sexpr(phi->args[1])});
    case Formula::Kind::Poss:
      throw LogicError("cannot print an executability atom");
    case Formula::Kind::Frozen:
      throw LogicError("cannot print a pre-state marker");
    case Formula::Kind::Not:
      return list({Sexpr::atom_node("not"), formula_to_sexpr(phi->kids[0])});
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      Sexpr out = Sexpr::list_node();
      out.items.push_back(Sexpr::atom_node(phi->kind == Formula::Kind::And ? "and" : "or"));
      for (const auto& k : phi->kids) out.items.push_back(formula_to_sexpr(k));
      return out;
    }
    case Formula::Kind::Imply:
      return list({Sexpr::atom_node("imply"), formula_to_sexpr(phi->kids[0]),
                   formula_to_sexpr(phi->kids[1])});
    case Formula::Kind::Iff:
      return list({Sexpr::atom_node("iff"), formula_to_sexpr(phi->kids[0]),
                   formula_to_sexpr(phi->kids[1])});
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
      return list({Sexpr::atom_node(phi->kind == Formula::Kind::Forall ? "forall" : "exists"),
                   var_list(phi->vars), formula_to_sexpr(phi->kids[0])});
    case Formula::Kind::Tc: {
      if (phi->act) throw LogicError("cannot print a tc atom with a pending action");
      return list({Sexpr::atom_node("tc"), var_list(phi->vars), formula_to_sexpr(phi->kids[0]),
                   term_to_sexpr(phi->args[0]), term_to_sexpr(phi->args[1])});
    }
    case Formula::Kind::NumCmp: {
      if (phi->kids.empty())
        throw LogicError("cannot print numeric feature " + phi->numvar +
                         " without its counting definition");
      Sexpr count = list({Sexpr::atom_node("count"), var_list(phi->vars),
                          formula_to_sexpr(phi->kids[0])});
      return list({Sexpr::atom_node(phi->numop == NumOp::EqZero ? "=" : ">"), count,
                   Sexpr::atom_node("0")});
    }
  }
  return Sexpr::atom_node("?");
}

inline std::string format_formula(const FormulaPtr& phi) {
  return write_sexpr(formula_to_sexpr(phi));
}

}  // namespace soundabs

#endif  // SOUNDABS_FORMULA_IO_HPP
