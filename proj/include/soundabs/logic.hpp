#ifndef SOUNDABS_LOGIC_HPP
#define SOUNDABS_LOGIC_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "soundabs/sexpr.hpp"

namespace soundabs {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

struct Term;
using TermPtr = std::shared_ptr<const Term>;

// First-order terms over a single object sort.  Function applications only
// occur as action terms (e.g. unstack(x, y)); object-level symbols are
// variables (spelled ?x in the surface syntax) and constants.
struct Term {
  enum class Kind { Var, Const, App };
  Kind kind;
  std::string name;
  std::vector<TermPtr> args;  // App only
};

namespace t {
inline TermPtr var(std::string name) {
  return std::make_shared<Term>(Term{Term::Kind::Var, std::move(name), {}});
}
inline TermPtr cnst(std::string name) {
  return std::make_shared<Term>(Term{Term::Kind::Const, std::move(name), {}});
}
inline TermPtr app(std::string fn, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{Term::Kind::App, std::move(fn), std::move(args)});
}
}  // namespace t

inline bool term_equal(const TermPtr& a, const TermPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->args.size() != b->args.size())
    return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term_equal(a->args[i], b->args[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class NumOp { EqZero, GtZero };

// Immutable formula trees.  Two internal-only node kinds never appear in
// parsed input or emitted tasks: Poss (an executability atom consumed by
// regression) and Frozen (shields a subformula from pending-action tagging so
// two-state conditions can talk about the pre-execution state).  Fluent atoms
// and transitive-closure atoms may carry a pending action term (`pending`),
// meaning the atom is evaluated after that action; regression resolves the
// annotation against the successor-state axioms.
struct Formula {
  enum class Kind {
    True, False,
    Atom,     // pred(args), optionally pending
    Eq,       // args[0] = args[1]
    Poss,     // act is executable
    Not, And, Or, Imply, Iff,   // kids
    Forall, Exists,             // vars, kids[0]
    Tc,       // vars = {u, v}; kids[0] = edge body; args = {t1, t2}; optionally pending
    NumCmp,   // numop over a counting term (vars, kids[0]) or a named numeric feature (numvar)
    Frozen    // kids[0], evaluated in the pre-execution state
  };
  explicit Formula(Kind k) : kind(k) {}
  Kind kind;
  std::string pred;
  std::vector<TermPtr> args;
  TermPtr act;    // Poss action, or pending action on Atom/Tc
  std::vector<FormulaPtr> kids;
  std::vector<std::string> vars;
  NumOp numop = NumOp::EqZero;
  std::string numvar;
};

class LogicError : public std::runtime_error {
 public:
  explicit LogicError(const std::string& msg) : std::runtime_error(msg) {}
};

namespace f {

inline FormulaPtr make(Formula&& node) {
  return std::make_shared<Formula>(std::move(node));
}
inline FormulaPtr tru() {
  static FormulaPtr v = make(Formula{Formula::Kind::True});
  return v;
}
inline FormulaPtr fls() {
  static FormulaPtr v = make(Formula{Formula::Kind::False});
  return v;
}
inline FormulaPtr atom(std::string pred, std::vector<TermPtr> args, TermPtr pending = nullptr) {
  Formula n{Formula::Kind::Atom};
  n.pred = std::move(pred);
  n.args = std::move(args);
  n.act = std::move(pending);
  return make(std::move(n));
}
inline FormulaPtr eq(TermPtr a, TermPtr b) {
  Formula n{Formula::Kind::Eq};
  n.args = {std::move(a), std::move(b)};
  return make(std::move(n));
}
inline FormulaPtr poss(TermPtr act) {
  Formula n{Formula::Kind::Poss};
  n.act = std::move(act);
  return make(std::move(n));
}
inline FormulaPtr not_(FormulaPtr a) {
  Formula n{Formula::Kind::Not};
  n.kids = {std::move(a)};
  return make(std::move(n));
}
inline FormulaPtr neq(TermPtr a, TermPtr b) { return not_(eq(std::move(a), std::move(b))); }
inline FormulaPtr and_(std::vector<FormulaPtr> kids) {
  Formula n{Formula::Kind::And};
  n.kids = std::move(kids);
  return make(std::move(n));
}
inline FormulaPtr or_(std::vector<FormulaPtr> kids) {
  Formula n{Formula::Kind::Or};
  n.kids = std::move(kids);
  return make(std::move(n));
}
inline FormulaPtr imply(FormulaPtr a, FormulaPtr b) {
  Formula n{Formula::Kind::Imply};
  n.kids = {std::move(a), std::move(b)};
  return make(std::move(n));
}
inline FormulaPtr iff(FormulaPtr a, FormulaPtr b) {
  Formula n{Formula::Kind::Iff};
  n.kids = {std::move(a), std::move(b)};
  return make(std::move(n));
}
inline FormulaPtr forall(std::vector<std::string> vars, FormulaPtr body) {
  Formula n{Formula::Kind::Forall};
  n.vars = std::move(vars);
  n.kids = {std::move(body)};
  return make(std::move(n));
}
inline FormulaPtr exists(std::vector<std::string> vars, FormulaPtr body) {
  Formula n{Formula::Kind::Exists};
  n.vars = std::move(vars);
  n.kids = {std::move(body)};
  return make(std::move(n));
}
inline FormulaPtr tc(std::string u, std::string v, FormulaPtr body, TermPtr t1, TermPtr t2,
                     TermPtr pending = nullptr) {
  Formula n{Formula::Kind::Tc};
  n.vars = {std::move(u), std::move(v)};
  n.kids = {std::move(body)};
  n.args = {std::move(t1), std::move(t2)};
  n.act = std::move(pending);
  return make(std::move(n));
}
inline FormulaPtr count_cmp(NumOp op, std::vector<std::string> vars, FormulaPtr body) {
  Formula n{Formula::Kind::NumCmp};
  n.numop = op;
  n.vars = std::move(vars);
  n.kids = {std::move(body)};
  return make(std::move(n));
}
inline FormulaPtr numvar_cmp(NumOp op, std::string numvar) {
  Formula n{Formula::Kind::NumCmp};
  n.numop = op;
  n.numvar = std::move(numvar);
  return make(std::move(n));
}
inline FormulaPtr frozen(FormulaPtr a) {
  Formula n{Formula::Kind::Frozen};
  n.kids = {std::move(a)};
  return make(std::move(n));
}

}  // namespace f

inline bool formula_equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->pred != b->pred || a->vars != b->vars ||
      a->numop != b->numop || a->numvar != b->numvar ||
      a->args.size() != b->args.size() || a->kids.size() != b->kids.size())
    return false;
  if ((a->act == nullptr) != (b->act == nullptr)) return false;
  if (a->act && !term_equal(a->act, b->act)) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!term_equal(a->args[i], b->args[i])) return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!formula_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

inline void free_vars(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == Term::Kind::Var) out.insert(t->name);
  for (const auto& a : t->args) free_vars(a, out);
}

inline void free_vars(const FormulaPtr& phi, std::set<std::string>& out) {
  switch (phi->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
      for (const auto& a : phi->args) free_vars(a, out);
      if (phi->act) free_vars(phi->act, out);
      return;
    case Formula::Kind::Poss:
      free_vars(phi->act, out);
      return;
    case Formula::Kind::Not:
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imply:
    case Formula::Kind::Iff:
    case Formula::Kind::Frozen:
      for (const auto& k : phi->kids) free_vars(k, out);
      return;
    case Formula::Kind::Forall:
    case Formula::Kind::Exists:
    case Formula::Kind::NumCmp: {
      if (phi->kids.empty()) return;  // numeric-feature reference
      std::set<std::string> inner;
      free_vars(phi->kids[0], inner);
      for (const auto& v : phi->vars) inner.erase(v);
      out.insert(inner.begin(), inner.end());
      return;
    }
    case Formula::Kind::Tc: {
      std::set<std::string> inner;
      free_vars(phi->kids[0], inner);
      for (const auto& v : phi->vars) inner.erase(v);
      out.insert(inner.begin(), inner.end());
      for (const auto& a : phi->args) free_vars(a, out);
      if (phi->act) free_vars(phi->act, out);
      return;
    }
  }
}

inline std::set<std::string> free_vars(const FormulaPtr& phi) {
  std::set<std::string> out;
  free_vars(phi, out);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution (capture avoiding)
// ---------------------------------------------------------------------------

using Subst = std::map<std::string, TermPtr>;

inline TermPtr substitute(const TermPtr& term, const Subst& sub) {
  switch (term->kind) {
    case Term::Kind::Var: {
      auto it = sub.find(term->name);
      return it == sub.end() ? term : it->second;
    }
    case Term::Kind::Const:
      return term;
    case Term::Kind::App: {
      std::vector<TermPtr> args;
      args.reserve(term->args.size());
      for (const auto& a : term->args) args.push_back(substitute(a, sub));
      return t::app(term->name, std::move(args));
    }
  }
  return term;
}

inline std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  if (!used.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + "_" + std::to_string(i);
    if (!used.count(cand)) return cand;
  }
}

inline FormulaPtr substitute(const FormulaPtr& phi, const Subst& sub);

// Shared handling for the binder cases: narrows the substitution to the
// non-shadowed variables and renames bound variables that would capture a
// substituted term.
inline void rebind(const std::vector<std::string>& vars, const FormulaPtr& body, const Subst& sub,
                   std::vector<std::string>& newVars, FormulaPtr& newBody) {
  Subst narrowed;
  std::set<std::string> incoming;  // variables free in substituted terms
  std::set<std::string> bound(vars.begin(), vars.end());
  for (const auto& [k, v] : sub) {
    if (bound.count(k)) continue;
    narrowed.emplace(k, v);
    std::set<std::string> fv;
    free_vars(v, fv);
    incoming.insert(fv.begin(), fv.end());
  }
  newVars = vars;
  if (narrowed.empty()) {
    newBody = body;
    return;
  }
  std::set<std::string> avoid = incoming;
  {
    std::set<std::string> fv;
    free_vars(body, fv);
    avoid.insert(fv.begin(), fv.end());
  }
  Subst renames;
  for (auto& v : newVars) {
    if (incoming.count(v)) {
      std::string nv = fresh_name(v, avoid);
      avoid.insert(nv);
      renames.emplace(v, t::var(nv));
      v = nv;
    }
  }
  FormulaPtr renamedBody = renames.empty() ? body : substitute(body, renames);
  newBody = substitute(renamedBody, narrowed);
}

inline FormulaPtr substitute(const FormulaPtr& phi, const Subst& sub) {
  if (sub.empty()) return phi;
  switch (phi->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return phi;
    case Formula::Kind::Atom: {
      std::vector<TermPtr> args;
      args.reserve(phi->args.size());
      for (const auto& a : phi->args) args.push_back(substitute(a, sub));
      return f::atom(phi->pred, std::move(args), phi->act ? substitute(phi->act, sub) : nullptr);
    }
    case Formula::Kind::Eq:
      return f::eq(substitute(phi->args[0], sub), substitute(phi->args[1], sub));
    case Formula::Kind::Poss:
      return f::poss(substitute(phi->act, sub));
    case Formula::Kind::Not:
      return f::not_(substitute(phi->kids[0], sub));
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imply:
    case Formula::Kind::Iff:
    case Formula::Kind::Frozen: {
      Formula n{phi->kind};
      n.kids.reserve(phi->kids.size());
      for (const auto& k : phi->kids) n.kids.push_back(substitute(k, sub));
      return f::make(std::move(n));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::vector<std::string> vars;
      FormulaPtr body;
      rebind(phi->vars, phi->kids[0], sub, vars, body);
      return phi->kind == Formula::Kind::Forall ? f::forall(std::move(vars), body)
                                                : f::exists(std::move(vars), body);
    }
    case Formula::Kind::Tc: {
      std::vector<std::string> vars;
      FormulaPtr body;
      rebind(phi->vars, phi->kids[0], sub, vars, body);
      return f::tc(vars[0], vars[1], body, substitute(phi->args[0], sub),
                   substitute(phi->args[1], sub), phi->act ? substitute(phi->act, sub) : nullptr);
    }
    case Formula::Kind::NumCmp: {
      if (phi->kids.empty()) return phi;
      std::vector<std::string> vars;
      FormulaPtr body;
      rebind(phi->vars, phi->kids[0], sub, vars, body);
      return f::count_cmp(phi->numop, std::move(vars), body);
    }
  }
  return phi;
}

// ---------------------------------------------------------------------------
// Pending-action tagging
// ---------------------------------------------------------------------------

namespace detail {

// Renames any of `vars` that occur in `avoid` to fresh names, rewriting
// `body` accordingly.
inline void rename_binders_apart(std::vector<std::string>& vars, FormulaPtr& body,
                                 const std::set<std::string>& avoid) {
  Subst renames;
  std::set<std::string> used = avoid;
  {
    std::set<std::string> fv;
    free_vars(body, fv);
    used.insert(fv.begin(), fv.end());
  }
  for (auto& v : vars) {
    if (avoid.count(v)) {
      std::string nv = fresh_name(v, used);
      used.insert(nv);
      renames.emplace(v, t::var(nv));
      v = nv;
    }
  }
  if (!renames.empty()) body = substitute(body, renames);
}

inline FormulaPtr apply_pending_impl(const FormulaPtr& phi, const TermPtr& act,
                                     const std::set<std::string>& actFv) {
  switch (phi->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Eq:
    case Formula::Kind::Frozen:
      return phi;
    case Formula::Kind::Atom:
      if (phi->act) throw LogicError("atom already carries a pending action");
      return f::atom(phi->pred, phi->args, act);
    case Formula::Kind::Tc: {
      if (phi->act) throw LogicError("tc atom already carries a pending action");
      return f::tc(phi->vars[0], phi->vars[1], phi->kids[0], phi->args[0], phi->args[1], act);
    }
    case Formula::Kind::Poss:
      throw LogicError("executability atom cannot be advanced past an action");
    case Formula::Kind::Not:
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Imply:
    case Formula::Kind::Iff: {
      Formula n{phi->kind};
      n.kids.reserve(phi->kids.size());
      for (const auto& k : phi->kids) n.kids.push_back(apply_pending_impl(k, act, actFv));
      return f::make(std::move(n));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      Formula n{phi->kind};
      n.vars = phi->vars;
      FormulaPtr body = phi->kids[0];
      rename_binders_apart(n.vars, body, actFv);
      n.kids = {apply_pending_impl(body, act, actFv)};
      return f::make(std::move(n));
    }
    case Formula::Kind::NumCmp: {
      if (phi->kids.empty())
        throw LogicError("numeric feature " + phi->numvar + " must be mapped before regression");
      std::vector<std::string> vars = phi->vars;
      FormulaPtr body = phi->kids[0];
      rename_binders_apart(vars, body, actFv);
      return f::count_cmp(phi->numop, std::move(vars), apply_pending_impl(body, act, actFv));
    }
  }
  return phi;
}

}  // namespace detail

// Marks every fluent atom (and transitive-closure atom) in `phi` as evaluated
// after action `act`.  Frozen subformulas keep referring to the current state
// and are left untouched.  Quantified variables that collide with variables
// of `act` are renamed apart so the annotation cannot be captured.
inline FormulaPtr apply_pending(const FormulaPtr& phi, const TermPtr& act) {
  std::set<std::string> actFv;
  free_vars(act, actFv);
  return detail::apply_pending_impl(phi, act, actFv);
}

// ---------------------------------------------------------------------------
// Simplification
// ---------------------------------------------------------------------------

// Bottom-up boolean simplification plus unique-names reasoning on action
// terms: equalities between applications of different action functions are
// false, equalities between applications of the same function reduce to
// argument equalities.  A negated action equality is rendered as a
// disjunction of argument disequalities.
inline FormulaPtr simplify(const FormulaPtr& phi) {
  auto is_true = [](const FormulaPtr& g) { return g->kind == Formula::Kind::True; };
  auto is_false = [](const FormulaPtr& g) { return g->kind == Formula::Kind::False; };

  auto action_eq = [](const FormulaPtr& g) {
    return g->kind == Formula::Kind::Eq && g->args[0]->kind == Term::Kind::App &&
           g->args[1]->kind == Term::Kind::App;
  };

  switch (phi->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
    case Formula::Kind::Poss:
      return phi;
    case Formula::Kind::Eq: {
      if (action_eq(phi)) {
        const auto& a = phi->args[0];
        const auto& b = phi->args[1];
        if (a->name != b->name || a->args.size() != b->args.size()) return f::fls();
        std::vector<FormulaPtr> eqs;
        for (std::size_t i = 0; i < a->args.size(); ++i)
          eqs.push_back(f::eq(a->args[i], b->args[i]));
        if (eqs.empty()) return f::tru();
        if (eqs.size() == 1) return eqs[0];
        return f::and_(std::move(eqs));
      }
      if (term_equal(phi->args[0], phi->args[1])) return f::tru();
      return phi;
    }
    case Formula::Kind::Not: {
      // Special-case a negated action equality so the pairwise expansion
      // comes out as a disjunction of disequalities.
      if (action_eq(phi->kids[0])) {
        const auto& a = phi->kids[0]->args[0];
        const auto& b = phi->kids[0]->args[1];
        if (a->name != b->name || a->args.size() != b->args.size()) return f::tru();
        std::vector<FormulaPtr> neqs;
        for (std::size_t i = 0; i < a->args.size(); ++i)
          neqs.push_back(f::neq(a->args[i], b->args[i]));
        if (neqs.empty()) return f::fls();
        if (neqs.size() == 1) return neqs[0];
        return f::or_(std::move(neqs));
      }
      FormulaPtr k = simplify(phi->kids[0]);
      if (is_true(k)) return f::fls();
      if (is_false(k)) return f::tru();
      if (k->kind == Formula::Kind::Not) return k->kids[0];
      return f::not_(k);
    }
    case Formula::Kind::And: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : phi->kids) {
        FormulaPtr s = simplify(k);
        if (is_false(s)) return f::fls();
        if (!is_true(s)) kids.push_back(s);
      }
      if (kids.empty()) return f::tru();
      if (kids.size() == 1) return kids[0];
      return f::and_(std::move(kids));
    }
    case Formula::Kind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : phi->kids) {
        FormulaPtr s = simplify(k);
        if (is_true(s)) return f::tru();
        if (!is_false(s)) kids.push_back(s);
      }
      if (kids.empty()) return f::fls();
      if (kids.size() == 1) return kids[0];
      return f::or_(std::move(kids));
    }
    case Formula::Kind::Imply: {
      FormulaPtr a = simplify(phi->kids[0]);
      FormulaPtr b = simplify(phi->kids[1]);
      if (is_false(a) || is_true(b)) return f::tru();
      if (is_true(a)) return b;
      if (is_false(b)) return simplify(f::not_(a));
      return f::imply(a, b);
    }
    case Formula::Kind::Iff: {
      FormulaPtr a = simplify(phi->kids[0]);
      FormulaPtr b = simplify(phi->kids[1]);
      if (is_true(a)) return b;
      if (is_true(b)) return a;
      if (is_false(a)) return simplify(f::not_(b));
      if (is_false(b)) return simplify(f::not_(a));
      return f::iff(a, b);
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      FormulaPtr body = simplify(phi->kids[0]);
      if (is_true(body) || is_false(body)) return body;
      Formula n{phi->kind};
      n.vars = phi->vars;
      n.kids = {body};
      return f::make(std::move(n));
    }
    case Formula::Kind::Tc:
      return f::tc(phi->vars[0], phi->vars[1], simplify(phi->kids[0]), phi->args[0], phi->args[1],
                   phi->act);
    case Formula::Kind::NumCmp:
      if (phi->kids.empty()) return phi;
      return f::count_cmp(phi->numop, phi->vars, simplify(phi->kids[0]));
    case Formula::Kind::Frozen: {
      FormulaPtr body = simplify(phi->kids[0]);
      if (is_true(body) || is_false(body)) return body;
      return f::frozen(body);
    }
  }
  return phi;
}

// Removes Frozen markers once regression has brought every atom back to the
// same (initial) state.
inline FormulaPtr strip_frozen(const FormulaPtr& phi) {
  switch (phi->kind) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
    case Formula::Kind::Poss:
      return phi;
    case Formula::Kind::Frozen:
      return strip_frozen(phi->kids[0]);
    default: {
      Formula n{phi->kind};
      n.pred = phi->pred;
      n.args = phi->args;
      n.act = phi->act;
      n.vars = phi->vars;
      n.numop = phi->numop;
      n.numvar = phi->numvar;
      n.kids.reserve(phi->kids.size());
      for (const auto& k : phi->kids) n.kids.push_back(strip_frozen(k));
      return f::make(std::move(n));
    }
  }
}

// True if the formula still contains internal-only machinery (pending
// annotations, executability atoms, Frozen markers, unmapped numeric
// features).  Final verification tasks must be clean.
inline bool has_internal_nodes(const FormulaPtr& phi) {
  switch (phi->kind) {
    case Formula::Kind::Poss:
    case Formula::Kind::Frozen:
      return true;
    case Formula::Kind::Atom:
    case Formula::Kind::Tc:
      if (phi->act) return true;
      break;
    case Formula::Kind::NumCmp:
      if (phi->kids.empty()) return true;
      break;
    default:
      break;
  }
  for (const auto& k : phi->kids)
    if (has_internal_nodes(k)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Counting elimination
// ---------------------------------------------------------------------------

// Rewrites count comparisons into pure quantification:
//   #x.phi = 0   ->   not exists x. phi
//   #x.phi > 0   ->   exists x. phi
inline FormulaPtr eliminate_counting(const FormulaPtr& phi) {
  switch (phi->kind) {
    case Formula::Kind::NumCmp: {
      if (phi->kids.empty())
        throw LogicError("numeric feature " + phi->numvar +
                         " has no counting definition in this context");
      FormulaPtr body = eliminate_counting(phi->kids[0]);
      FormulaPtr ex = f::exists(phi->vars, body);
      return phi->numop == NumOp::GtZero ? ex : f::not_(ex);
    }
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
    case Formula::Kind::Eq:
    case Formula::Kind::Poss:
      return phi;
    default: {
      Formula n{phi->kind};
      n.pred = phi->pred;
      n.args = phi->args;
      n.act = phi->act;
      n.vars = phi->vars;
      n.numop = phi->numop;
      n.numvar = phi->numvar;
      n.kids.reserve(phi->kids.size());
      for (const auto& k : phi->kids) n.kids.push_back(eliminate_counting(k));
      return f::make(std::move(n));
    }
  }
}

// ---------------------------------------------------------------------------
// Normalized printing (used for equivalence-up-to-normalization comparisons)
// ---------------------------------------------------------------------------

namespace detail {

// Prints a formula to a canonical string: bound variables are replaced by
// binder-stack indices, And/Or/Iff argument lists are sorted, and equality
// operands are ordered.  Two formulas are "equal up to normalization" iff
// their canonical strings coincide.
inline std::string norm_term(const TermPtr& tm, const std::map<std::string, std::string>& env) {
  switch (tm->kind) {
    case Term::Kind::Var: {
      auto it = env.find(tm->name);
      return it != env.end() ? it->second : "free:" + tm->name;
    }
    case Term::Kind::Const:
      return tm->name;
    case Term::Kind::App: {
      std::string out = "(" + tm->name;
      for (const auto& a : tm->args) out += " " + norm_term(a, env);
      return out + ")";
    }
  }
  return "?";
}

inline std::string norm_print(const FormulaPtr& phi, std::map<std::string, std::string> env) {
  auto bind = [&env](const std::vector<std::string>& vars) {
    for (const auto& v : vars) env[v] = "%" + std::to_string(env.size());
  };
  switch (phi->kind) {
    case Formula::Kind::True:
      return std::string("true");
    case Formula::Kind::False:
      return std::string("false");
    case Formula::Kind::Atom: {
      std::string out = "(" + phi->pred;
      for (const auto& a : phi->args) out += " " + norm_term(a, env);
      out += ")";
      if (phi->act) out += "@" + norm_term(phi->act, env);
      return out;
    }
    case Formula::Kind::Eq: {
      std::string a = norm_term(phi->args[0], env), b = norm_term(phi->args[1], env);
      if (b < a) std::swap(a, b);
      return "(= " + a + " " + b + ")";
    }
    case Formula::Kind::Poss:
      return "(poss " + norm_term(phi->act, env) + ")";
    case Formula::Kind::Not:
      return "(not " + norm_print(phi->kids[0], env) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Iff: {
      std::vector<std::string> parts;
      for (const auto& k : phi->kids) parts.push_back(norm_print(k, env));
      std::sort(parts.begin(), parts.end());
      std::string out = phi->kind == Formula::Kind::And  ? "(and"
                        : phi->kind == Formula::Kind::Or ? "(or"
                                                         : "(iff";
      for (const auto& p : parts) out += " " + p;
      return out + ")";
    }
    case Formula::Kind::Imply:
      return "(imply " + norm_print(phi->kids[0], env) + " " + norm_print(phi->kids[1], env) + ")";
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      bind(phi->vars);
      std::string head = phi->kind == Formula::Kind::Forall ? "(forall " : "(exists ";
      return head + std::to_string(phi->vars.size()) + " " + norm_print(phi->kids[0], env) + ")";
    }
    case Formula::Kind::Tc: {
      std::string a1 = norm_term(phi->args[0], env), a2 = norm_term(phi->args[1], env);
      bind(phi->vars);
      std::string out = "(tc " + norm_print(phi->kids[0], env) + " " + a1 + " " + a2 + ")";
      if (phi->act) out += "@" + norm_term(phi->act, env);
      return out;
    }
    case Formula::Kind::NumCmp: {
      std::string op = phi->numop == NumOp::EqZero ? "=0" : ">0";
      if (phi->kids.empty()) return "(numcmp " + op + " " + phi->numvar + ")";
      bind(phi->vars);
      return "(numcmp " + op + " count " + std::to_string(phi->vars.size()) + " " +
             norm_print(phi->kids[0], env) + ")";
    }
    case Formula::Kind::Frozen:
      return "(frozen " + norm_print(phi->kids[0], env) + ")";
  }
  return "?";
}

}  // namespace detail

inline std::string normal_form_string(const FormulaPtr& phi) {
  return detail::norm_print(phi, {});
}

// Structural equality modulo bound-variable names, equality orientation, and
// the order of And/Or/Iff arguments.
inline bool equal_up_to_normalization(const FormulaPtr& a, const FormulaPtr& b) {
  return normal_form_string(a) == normal_form_string(b);
}

}  // namespace soundabs

#endif  // SOUNDABS_LOGIC_HPP
