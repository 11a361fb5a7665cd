#ifndef SOUNDABS_GOLOG_HPP
#define SOUNDABS_GOLOG_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "soundabs/bat.hpp"
#include "soundabs/formula_io.hpp"
#include "soundabs/logic.hpp"

namespace soundabs {

// ---------------------------------------------------------------------------
// Iteration-free programs
// ---------------------------------------------------------------------------

struct Program;
using ProgramPtr = std::shared_ptr<const Program>;

// Program connectives: primitive action, test, sequence, nondeterministic
// choice, and nondeterministic pick of object parameters.  Iteration is
// excluded by construction (the parser rejects any star-like form).
struct Program {
  enum class Kind { Act, Test, Seq, Choice, Pick };
  explicit Program(Kind k) : kind(k) {}
  Kind kind;
  std::string action;            // Act
  std::vector<TermPtr> args;     // Act
  FormulaPtr test;               // Test
  std::vector<ProgramPtr> kids;  // Seq (any), Choice (2), Pick (1)
  std::vector<std::string> vars; // Pick
};

namespace p {
inline ProgramPtr make(Program&& node) { return std::make_shared<Program>(std::move(node)); }
inline ProgramPtr act(std::string name, std::vector<TermPtr> args) {
  Program n{Program::Kind::Act};
  n.action = std::move(name);
  n.args = std::move(args);
  return make(std::move(n));
}
inline ProgramPtr test(FormulaPtr phi) {
  Program n{Program::Kind::Test};
  n.test = std::move(phi);
  return make(std::move(n));
}
inline ProgramPtr seq(std::vector<ProgramPtr> kids) {
  Program n{Program::Kind::Seq};
  n.kids = std::move(kids);
  return make(std::move(n));
}
inline ProgramPtr choice(ProgramPtr a, ProgramPtr b) {
  Program n{Program::Kind::Choice};
  n.kids = {std::move(a), std::move(b)};
  return make(std::move(n));
}
inline ProgramPtr pick(std::vector<std::string> vars, ProgramPtr body) {
  Program n{Program::Kind::Pick};
  n.vars = std::move(vars);
  n.kids = {std::move(body)};
  return make(std::move(n));
}
}  // namespace p

// Variables free in a program (action arguments and test formulas, minus
// pick-bound ones).
inline void free_vars(const ProgramPtr& prog, std::set<std::string>& out) {
  switch (prog->kind) {
    case Program::Kind::Act:
      for (const auto& a : prog->args) free_vars(a, out);
      return;
    case Program::Kind::Test:
      free_vars(prog->test, out);
      return;
    case Program::Kind::Seq:
    case Program::Kind::Choice:
      for (const auto& k : prog->kids) free_vars(k, out);
      return;
    case Program::Kind::Pick: {
      std::set<std::string> inner;
      free_vars(prog->kids[0], inner);
      for (const auto& v : prog->vars) inner.erase(v);
      out.insert(inner.begin(), inner.end());
      return;
    }
  }
}

// Capture-avoiding substitution into a program.
inline ProgramPtr substitute(const ProgramPtr& prog, const Subst& sub) {
  if (sub.empty()) return prog;
  switch (prog->kind) {
    case Program::Kind::Act: {
      std::vector<TermPtr> args;
      args.reserve(prog->args.size());
      for (const auto& a : prog->args) args.push_back(substitute(a, sub));
      return p::act(prog->action, std::move(args));
    }
    case Program::Kind::Test:
      return p::test(substitute(prog->test, sub));
    case Program::Kind::Seq:
    case Program::Kind::Choice: {
      std::vector<ProgramPtr> kids;
      kids.reserve(prog->kids.size());
      for (const auto& k : prog->kids) kids.push_back(substitute(k, sub));
      return prog->kind == Program::Kind::Seq ? p::seq(std::move(kids))
                                              : p::choice(kids[0], kids[1]);
    }
    case Program::Kind::Pick: {
      Subst narrowed;
      std::set<std::string> incoming;
      std::set<std::string> bound(prog->vars.begin(), prog->vars.end());
      for (const auto& [k, v] : sub) {
        if (bound.count(k)) continue;
        narrowed.emplace(k, v);
        std::set<std::string> fv;
        free_vars(v, fv);
        incoming.insert(fv.begin(), fv.end());
      }
      if (narrowed.empty()) return prog;
      std::vector<std::string> vars = prog->vars;
      ProgramPtr body = prog->kids[0];
      std::set<std::string> avoid = incoming;
      {
        std::set<std::string> fv;
        free_vars(body, fv);
        avoid.insert(fv.begin(), fv.end());
      }
      Subst renames;
      for (auto& v : vars) {
        if (incoming.count(v)) {
          std::string nv = fresh_name(v, avoid);
          avoid.insert(nv);
          renames.emplace(v, t::var(nv));
          v = nv;
        }
      }
      if (!renames.empty()) body = substitute(body, renames);
      return p::pick(std::move(vars), substitute(body, narrowed));
    }
  }
  return prog;
}

// ---------------------------------------------------------------------------
// Program parsing
// ---------------------------------------------------------------------------

// program ::= (act NAME term*) | (test f) | (seq program*)
//           | (choice program program) | (pick (?v+) program)
inline ProgramPtr parse_program(const Sexpr& e, SymbolTable& symbols,
                                std::set<std::string> bound) {
  if (!e.is_list() || e.size() == 0)
    throw InputError("expected a program", e.pos, e.origin);
  const std::string& head = e.head();
  if (head == "act") {
    if (e.size() < 2 || !e.at(1).is_atom())
      throw InputError("expected (act NAME term*)", e.pos, e.origin);
    const std::string& name = e.at(1).atom;
    auto it = symbols.actions.find(name);
    if (it == symbols.actions.end())
      throw InputError("unknown action " + name, e.at(1).pos, e.origin);
    if (static_cast<int>(e.size()) - 2 != it->second)
      throw InputError(name + " expects " + std::to_string(it->second) + " argument(s), got " +
                           std::to_string(e.size() - 2),
                       e.pos, e.origin);
    std::vector<TermPtr> args;
    for (std::size_t i = 2; i < e.size(); ++i) args.push_back(parse_term(e.at(i), symbols, bound));
    return p::act(name, std::move(args));
  }
  if (head == "test") {
    if (e.size() != 2) throw InputError("test takes one formula", e.pos, e.origin);
    return p::test(parse_formula(e.at(1), symbols, bound));
  }
  if (head == "seq") {
    std::vector<ProgramPtr> kids;
    for (std::size_t i = 1; i < e.size(); ++i)
      kids.push_back(parse_program(e.at(i), symbols, bound));
    if (kids.empty()) return p::test(f::tru());
    if (kids.size() == 1) return kids[0];
    return p::seq(std::move(kids));
  }
  if (head == "choice") {
    if (e.size() != 3) throw InputError("choice takes two programs", e.pos, e.origin);
    return p::choice(parse_program(e.at(1), symbols, bound),
                     parse_program(e.at(2), symbols, bound));
  }
  if (head == "pick") {
    if (e.size() != 3) throw InputError("pick takes a variable list and a program", e.pos,
                                        e.origin);
    auto vars = detail::parse_var_list(e.at(1), "pick variable list");
    if (vars.empty())
      throw InputError("pick needs at least one variable", e.at(1).pos, e.origin);
    for (const auto& v : vars) bound.insert(v);
    return p::pick(std::move(vars), parse_program(e.at(2), symbols, bound));
  }
  throw InputError("unknown program form " + head +
                       " (no iteration construct is supported)",
                   e.pos, e.origin);
}

// ---------------------------------------------------------------------------
// Refinement mapping
// ---------------------------------------------------------------------------

// Translates the abstraction's vocabulary to the concrete one: each boolean
// feature to a closed formula, each numeric variable to a counting term, each
// abstract action to a parameterized program.
struct RefinementMapping {
  std::map<std::string, FormulaPtr> prop_map;   // boolean feature -> formula
  std::map<std::string, FormulaPtr> num_map;    // numeric variable -> NumCmp-ready count body
  struct ActionEntry {
    std::vector<std::string> params;
    ProgramPtr program;
  };
  std::map<std::string, ActionEntry> action_map;
};

// Grammar:
//   (map (:fluent NAME f)* (:num NAME (count (?v+) f))* (:action NAME (?v*) program)*)
// Numeric entries are stored as counting comparisons with a placeholder
// operator; map_formula clones them with the operator demanded by the HL
// literal.
inline RefinementMapping parse_mapping(const Sexpr& e, SymbolTable& symbols) {
  if (!e.is_list() || e.size() == 0 || e.head() != "map")
    throw InputError("expected (map ...)", e.pos, e.origin);
  RefinementMapping m;
  for (std::size_t i = 1; i < e.size(); ++i) {
    const Sexpr& sect = e.at(i);
    if (!sect.is_list() || sect.size() == 0)
      throw InputError("expected a mapping entry", sect.pos, sect.origin);
    const std::string& tag = sect.head();
    if (tag == ":fluent") {
      if (sect.size() != 3 || !sect.at(1).is_atom())
        throw InputError("expected (:fluent NAME formula)", sect.pos, sect.origin);
      FormulaPtr phi = parse_formula(sect.at(2), symbols, {});
      detail::require_closed(phi, sect, "boolean feature definition");
      if (!m.prop_map.emplace(sect.at(1).atom, phi).second)
        throw InputError("duplicate mapping for boolean feature " + sect.at(1).atom, sect.pos,
                         sect.origin);
    } else if (tag == ":num") {
      if (sect.size() != 3 || !sect.at(1).is_atom())
        throw InputError("expected (:num NAME (count (?v+) formula))", sect.pos, sect.origin);
      const Sexpr& cnt = sect.at(2);
      if (!cnt.is_list() || cnt.size() != 3 || cnt.head() != "count")
        throw InputError("numeric features map to (count (?v+) formula)", cnt.pos, cnt.origin);
      auto vars = detail::parse_var_list(cnt.at(1), "count variable list");
      if (vars.empty())
        throw InputError("count needs at least one variable", cnt.at(1).pos, cnt.origin);
      std::set<std::string> bound(vars.begin(), vars.end());
      FormulaPtr body = parse_formula(cnt.at(2), symbols, bound);
      {
        auto fv = free_vars(body);
        for (const auto& v : vars) fv.erase(v);
        if (!fv.empty())
          throw InputError("counting body has free variable " + *fv.begin(), cnt.pos, cnt.origin);
      }
      FormulaPtr count = f::count_cmp(NumOp::EqZero, std::move(vars), body);
      if (!m.num_map.emplace(sect.at(1).atom, count).second)
        throw InputError("duplicate mapping for numeric variable " + sect.at(1).atom, sect.pos,
                         sect.origin);
    } else if (tag == ":action") {
      if (sect.size() != 4 || !sect.at(1).is_atom())
        throw InputError("expected (:action NAME (?v*) program)", sect.pos, sect.origin);
      RefinementMapping::ActionEntry entry;
      entry.params = detail::parse_var_list(sect.at(2), "action parameter list");
      std::set<std::string> bound(entry.params.begin(), entry.params.end());
      entry.program = parse_program(sect.at(3), symbols, bound);
      {
        std::set<std::string> fv;
        free_vars(entry.program, fv);
        for (const auto& v : entry.params) fv.erase(v);
        if (!fv.empty())
          throw InputError("program has free variable " + *fv.begin(), sect.pos, sect.origin);
      }
      if (!m.action_map.emplace(sect.at(1).atom, std::move(entry)).second)
        throw InputError("duplicate mapping for action " + sect.at(1).atom, sect.pos,
                         sect.origin);
    } else {
      throw InputError("unknown mapping entry " + tag, sect.pos, sect.origin);
    }
  }
  return m;
}

// Replaces abstract symbols by their concrete definitions.  Boolean feature
// atoms become their formulas; numeric comparisons keep their operator but
// acquire the counting term.
inline FormulaPtr map_formula(const RefinementMapping& m, const FormulaPtr& phi) {
  switch (phi->kind) {
    case Formula::Kind::Atom: {
      if (!phi->args.empty())
        throw LogicError("abstract boolean features are parameterless: " + phi->pred);
      auto it = m.prop_map.find(phi->pred);
      if (it == m.prop_map.end())
        throw LogicError("boolean feature " + phi->pred + " has no mapping entry");
      return it->second;
    }
    case Formula::Kind::NumCmp: {
      if (!phi->kids.empty()) {
        auto mapped = map_formula(m, phi->kids[0]);
        return f::count_cmp(phi->numop, phi->vars, mapped);
      }
      auto it = m.num_map.find(phi->numvar);
      if (it == m.num_map.end())
        throw LogicError("numeric variable " + phi->numvar + " has no mapping entry");
      return f::count_cmp(phi->numop, it->second->vars, it->second->kids[0]);
    }
    case Formula::Kind::True:
    case Formula::Kind::False:
      return phi;
    case Formula::Kind::Not:
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imply:
    case Formula::Kind::Iff: {
      Formula n{phi->kind};
      n.kids.reserve(phi->kids.size());
      for (const auto& k : phi->kids) n.kids.push_back(map_formula(m, k));
      return f::make(std::move(n));
    }
    default:
      throw LogicError("formula uses a construct outside the abstract language");
  }
}

// Instantiates the program refining abstract action A with actual arguments.
inline ProgramPtr map_action(const RefinementMapping& m, const std::string& name,
                             const std::vector<TermPtr>& args = {}) {
  auto it = m.action_map.find(name);
  if (it == m.action_map.end())
    throw LogicError("abstract action " + name + " has no mapping entry");
  const auto& entry = it->second;
  if (entry.params.size() != args.size())
    throw LogicError("abstract action " + name + " expects " +
                     std::to_string(entry.params.size()) + " argument(s)");
  Subst sub;
  for (std::size_t i = 0; i < args.size(); ++i) sub.emplace(entry.params[i], args[i]);
  return substitute(it->second.program, sub);
}

}  // namespace soundabs

#endif  // SOUNDABS_GOLOG_HPP
