#ifndef SOUNDABS_ORACLE_HPP
#define SOUNDABS_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "soundabs/formula_io.hpp"
#include "soundabs/logic.hpp"

namespace soundabs {

// ---------------------------------------------------------------------------
// Finite first-order structures
// ---------------------------------------------------------------------------

// A finite interpretation over one object sort.  Constants not listed in
// `constant_interp` denote the same-named object, which must be in the
// universe.  Relations absent from `relations` are empty.
struct Structure {
  std::vector<std::string> universe;
  std::map<std::string, std::string> constant_interp;
  std::map<std::string, std::set<std::vector<std::string>>> relations;

  bool holds(const std::string& pred, const std::vector<std::string>& tuple) const {
    auto it = relations.find(pred);
    return it != relations.end() && it->second.count(tuple) != 0;
  }
};

using Env = std::map<std::string, std::string>;

// How transitive-closure atoms are evaluated.  Two independent algorithms are
// provided so tests can cross-check them; both compute the reflexive
// transitive closure of the edge relation defined by the tc body.
enum class TcEval { Saturation, Search };

namespace detail {

inline std::string eval_term_in(const Structure& s, const TermPtr& tm, const Env& env) {
  switch (tm->kind) {
    case Term::Kind::Var: {
      auto it = env.find(tm->name);
      if (it == env.end()) throw LogicError("unassigned variable " + tm->name + " in evaluation");
      return it->second;
    }
    case Term::Kind::Const: {
      auto it = s.constant_interp.find(tm->name);
      if (it != s.constant_interp.end()) return it->second;
      for (const auto& o : s.universe)
        if (o == tm->name) return o;
      throw LogicError("constant " + tm->name + " does not denote an object of the structure");
    }
    case Term::Kind::App:
      throw LogicError("action term " + tm->name + " cannot be evaluated as an object");
  }
  throw LogicError("bad term");
}

}  // namespace detail

inline bool evaluate(const Structure& s, const FormulaPtr& phi, Env env,
                     TcEval tcEval = TcEval::Saturation);

namespace detail {

// Edge test for a tc body: true iff body holds with the designated pair bound
// to (a, b).
inline bool tc_edge(const Structure& s, const FormulaPtr& tc, const Env& env,
                    const std::string& a, const std::string& b, TcEval tcEval) {
  Env inner = env;
  inner[tc->vars[0]] = a;
  inner[tc->vars[1]] = b;
  return evaluate(s, tc->kids[0], std::move(inner), tcEval);
}

// Reflexive transitive closure by saturation: materialize the edge relation,
// then add compositions until a fixpoint is reached.
inline bool tc_saturation(const Structure& s, const FormulaPtr& tc, const Env& env,
                          const std::string& from, const std::string& to) {
  const std::size_t n = s.universe.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[s.universe[i]] = i;
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    reach[i][i] = true;
    for (std::size_t j = 0; j < n; ++j)
      if (tc_edge(s, tc, env, s.universe[i], s.universe[j], TcEval::Saturation))
        reach[i][j] = true;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (reach[i][k])
          for (std::size_t j = 0; j < n; ++j)
            if (reach[k][j] && !reach[i][j]) {
              reach[i][j] = true;
              changed = true;
            }
  }
  return reach[index.at(from)][index.at(to)];
}

// Reflexive transitive closure by depth-first search, querying edges on
// demand.  Deliberately a different algorithm from tc_saturation.
inline bool tc_search(const Structure& s, const FormulaPtr& tc, const Env& env,
                      const std::string& from, const std::string& to) {
  if (from == to) return true;
  std::set<std::string> visited{from};
  std::vector<std::string> stack{from};
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    for (const auto& next : s.universe) {
      if (visited.count(next)) continue;
      if (!tc_edge(s, tc, env, cur, next, TcEval::Search)) continue;
      if (next == to) return true;
      visited.insert(next);
      stack.push_back(next);
    }
  }
  return false;
}

}  // namespace detail

// Evaluates a closed-under-env task formula on a finite structure.  The
// formula must be free of verifier-internal nodes (pending actions,
// executability atoms, pre-state markers, unmapped numeric features).
inline bool evaluate(const Structure& s, const FormulaPtr& phi, Env env, TcEval tcEval) {
  switch (phi->kind) {
    case Formula::Kind::True:
      return true;
    case Formula::Kind::False:
      return false;
    case Formula::Kind::Atom: {
      if (phi->act) throw LogicError("cannot evaluate an atom with a pending action");
      std::vector<std::string> tuple;
      tuple.reserve(phi->args.size());
      for (const auto& a : phi->args) tuple.push_back(detail::eval_term_in(s, a, env));
      return s.holds(phi->pred, tuple);
    }
    case Formula::Kind::Eq:
      return detail::eval_term_in(s, phi->args[0], env) ==
             detail::eval_term_in(s, phi->args[1], env);
    case Formula::Kind::Poss:
      throw LogicError("cannot evaluate an executability atom on a structure");
    case Formula::Kind::Frozen:
      throw LogicError("cannot evaluate a pre-state marker on a structure");
    case Formula::Kind::Not:
      return !evaluate(s, phi->kids[0], env, tcEval);
    case Formula::Kind::And:
      for (const auto& k : phi->kids)
        if (!evaluate(s, k, env, tcEval)) return false;
      return true;
    case Formula::Kind::Or:
      for (const auto& k : phi->kids)
        if (evaluate(s, k, env, tcEval)) return true;
      return false;
    case Formula::Kind::Imply:
      return !evaluate(s, phi->kids[0], env, tcEval) || evaluate(s, phi->kids[1], env, tcEval);
    case Formula::Kind::Iff:
      return evaluate(s, phi->kids[0], env, tcEval) == evaluate(s, phi->kids[1], env, tcEval);
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      const bool existential = phi->kind == Formula::Kind::Exists;
      std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == phi->vars.size()) return evaluate(s, phi->kids[0], env, tcEval);
        for (const auto& o : s.universe) {
          env[phi->vars[i]] = o;
          bool v = go(i + 1);
          if (v == existential) {
            env.erase(phi->vars[i]);
            return existential;
          }
        }
        env.erase(phi->vars[i]);
        return !existential;
      };
      return go(0);
    }
    case Formula::Kind::Tc: {
      if (phi->act) throw LogicError("cannot evaluate a tc atom with a pending action");
      std::string from = detail::eval_term_in(s, phi->args[0], env);
      std::string to = detail::eval_term_in(s, phi->args[1], env);
      return tcEval == TcEval::Saturation ? detail::tc_saturation(s, phi, env, from, to)
                                          : detail::tc_search(s, phi, env, from, to);
    }
    case Formula::Kind::NumCmp: {
      if (phi->kids.empty())
        throw LogicError("cannot evaluate numeric feature " + phi->numvar +
                         " without its counting definition");
      std::int64_t count = 0;
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == phi->vars.size()) {
          if (evaluate(s, phi->kids[0], env, tcEval)) ++count;
          return;
        }
        for (const auto& o : s.universe) {
          env[phi->vars[i]] = o;
          go(i + 1);
        }
        env.erase(phi->vars[i]);
      };
      go(0);
      return phi->numop == NumOp::EqZero ? count == 0 : count > 0;
    }
  }
  throw LogicError("bad formula");
}

inline bool evaluate(const Structure& s, const FormulaPtr& phi, TcEval tcEval = TcEval::Saturation) {
  return evaluate(s, phi, Env{}, tcEval);
}

// Exact value of a counting term on a structure (used by tests that compare
// feature values across transitions).
inline std::int64_t count_value(const Structure& s, const FormulaPtr& numcmp) {
  if (numcmp->kind != Formula::Kind::NumCmp || numcmp->kids.empty())
    throw LogicError("count_value expects a counting comparison");
  std::int64_t count = 0;
  Env env;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == numcmp->vars.size()) {
      if (evaluate(s, numcmp->kids[0], env)) ++count;
      return;
    }
    for (const auto& o : s.universe) {
      env[numcmp->vars[i]] = o;
      go(i + 1);
    }
    env.erase(numcmp->vars[i]);
  };
  go(0);
  return count;
}

// ---------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------

// Grammar:
//   (instance NAME (:objects OBJ+) (:init (PRED OBJ*)*))
// Every listed fact must use a predicate declared by the domain with the
// right arity; unlisted facts are false.
inline Structure parse_instance(const Sexpr& e, const SymbolTable& symbols) {
  if (!e.is_list() || e.size() < 2 || e.head() != "instance" || !e.at(1).is_atom())
    throw InputError("expected (instance NAME ...)", e.pos, e.origin);
  Structure s;
  bool sawObjects = false;
  for (std::size_t i = 2; i < e.size(); ++i) {
    const Sexpr& sect = e.at(i);
    if (!sect.is_list() || sect.size() == 0)
      throw InputError("expected an (:objects ...) or (:init ...) section", sect.pos, sect.origin);
    const std::string& tag = sect.head();
    if (tag == ":objects") {
      if (sawObjects)
        throw InputError("duplicate :objects section", sect.pos, sect.origin);
      sawObjects = true;
      std::set<std::string> seen;
      for (std::size_t j = 1; j < sect.size(); ++j) {
        const Sexpr& o = sect.at(j);
        if (!o.is_atom() || detail::is_variable_token(o.atom))
          throw InputError("object names must be plain atoms", o.pos, o.origin);
        if (!seen.insert(o.atom).second)
          throw InputError("duplicate object " + o.atom, o.pos, o.origin);
        s.universe.push_back(o.atom);
      }
      if (s.universe.empty())
        throw InputError(":objects must list at least one object", sect.pos, sect.origin);
    } else if (tag == ":init") {
      for (std::size_t j = 1; j < sect.size(); ++j) {
        const Sexpr& fact = sect.at(j);
        if (!fact.is_list() || fact.size() == 0 || !fact.items[0].is_atom())
          throw InputError("facts must look like (PRED OBJ*)", fact.pos, fact.origin);
        const std::string& pred = fact.head();
        auto it = symbols.predicates.find(pred);
        if (it == symbols.predicates.end())
          throw InputError("unknown predicate " + pred, fact.pos, fact.origin);
        if (static_cast<int>(fact.size()) - 1 != it->second)
          throw InputError(pred + " expects " + std::to_string(it->second) + " argument(s)",
                           fact.pos, fact.origin);
        std::vector<std::string> tuple;
        for (std::size_t k = 1; k < fact.size(); ++k) {
          const Sexpr& o = fact.at(k);
          if (!o.is_atom() || detail::is_variable_token(o.atom))
            throw InputError("fact arguments must be object names", o.pos, o.origin);
          tuple.push_back(o.atom);
        }
        s.relations[pred].insert(std::move(tuple));
      }
    } else {
      throw InputError("unknown instance section " + tag, sect.pos, sect.origin);
    }
  }
  if (!sawObjects) throw InputError("instance has no :objects section", e.pos, e.origin);
  std::set<std::string> objs(s.universe.begin(), s.universe.end());
  for (const auto& [pred, tuples] : s.relations)
    for (const auto& tuple : tuples)
      for (const auto& o : tuple)
        if (!objs.count(o))
          throw InputError("fact of " + pred + " mentions undeclared object " + o, e.pos,
                           e.origin);
  return s;
}

// ---------------------------------------------------------------------------
// Countermodel search
// ---------------------------------------------------------------------------

// Enumerates small structures (universe sizes 1..maxSize) over the given
// vocabulary, looking for one that falsifies `sentence` while satisfying
// every formula in `background`.  Transitive closure is evaluated exactly, so
// a hit here is a genuine countermodel even when the SMT encoding of closure
// is only an approximation.  Returns nothing if the budget runs out first.
struct CountermodelOptions {
  int maxSize = 3;
  std::uint64_t maxStructures = 300000;
};

inline std::optional<Structure> find_countermodel(
    const FormulaPtr& sentence, const std::vector<FormulaPtr>& background,
    const std::map<std::string, int>& predicates, const std::set<std::string>& constants,
    const CountermodelOptions& opts = {}) {
  std::uint64_t examined = 0;
  for (int n = 1; n <= opts.maxSize; ++n) {
    Structure base;
    for (int i = 0; i < n; ++i) base.universe.push_back("u" + std::to_string(i + 1));

    // All tuples per predicate, in a fixed order.
    struct Slot {
      std::string pred;
      std::vector<std::string> tuple;
    };
    std::vector<Slot> slots;
    for (const auto& [pred, arity] : predicates) {
      std::vector<std::vector<std::string>> tuples{{}};
      for (int a = 0; a < arity; ++a) {
        std::vector<std::vector<std::string>> next;
        for (const auto& partial : tuples)
          for (const auto& o : base.universe) {
            auto ext = partial;
            ext.push_back(o);
            next.push_back(std::move(ext));
          }
        tuples = std::move(next);
      }
      for (auto& tup : tuples) slots.push_back({pred, std::move(tup)});
    }
    if (slots.size() > 62) continue;  // relation space too large to enumerate

    std::vector<std::string> constNames(constants.begin(), constants.end());
    std::vector<int> constAssign(constNames.size(), 0);

    auto tryRelations = [&](Structure& s) -> std::optional<Structure> {
      const std::uint64_t combos = std::uint64_t(1) << slots.size();
      for (std::uint64_t bits = 0; bits < combos; ++bits) {
        if (++examined > opts.maxStructures) return std::nullopt;
        s.relations.clear();
        for (std::size_t i = 0; i < slots.size(); ++i)
          if (bits & (std::uint64_t(1) << i)) s.relations[slots[i].pred].insert(slots[i].tuple);
        bool ok = true;
        for (const auto& bg : background)
          if (!evaluate(s, bg)) {
            ok = false;
            break;
          }
        if (ok && !evaluate(s, sentence)) return s;
      }
      return std::nullopt;
    };

    // Enumerate constant interpretations, then relations.
    std::function<std::optional<Structure>(std::size_t)> goConst =
        [&](std::size_t ci) -> std::optional<Structure> {
      if (examined > opts.maxStructures) return std::nullopt;
      if (ci == constNames.size()) {
        Structure s = base;
        for (std::size_t i = 0; i < constNames.size(); ++i)
          s.constant_interp[constNames[i]] = base.universe[constAssign[i]];
        return tryRelations(s);
      }
      for (int v = 0; v < n; ++v) {
        constAssign[ci] = v;
        if (auto hit = goConst(ci + 1)) return hit;
        if (examined > opts.maxStructures) return std::nullopt;
      }
      return std::nullopt;
    };
    if (auto hit = goConst(0)) return hit;
    if (examined > opts.maxStructures) return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace soundabs

#endif  // SOUNDABS_ORACLE_HPP
