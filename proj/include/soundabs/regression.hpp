#ifndef SOUNDABS_REGRESSION_HPP
#define SOUNDABS_REGRESSION_HPP

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "soundabs/bat.hpp"
#include "soundabs/golog.hpp"
#include "soundabs/logic.hpp"

namespace soundabs {

// Regression engine over one action theory.  Carries a memo table so that
// programs whose subterms are shared (Choice under Seq) do not re-regress the
// same (formula, program) pair.
class RegressionContext {
 public:
  explicit RegressionContext(const Domain& theory) : theory_(theory) {}

  // Resolves every pending-action annotation and executability atom in phi
  // against the theory's effect axioms and preconditions, then simplifies.
  // The result talks only about the pre-action state.
  FormulaPtr regress_step(const FormulaPtr& phi) { return simplify(step(phi)); }

  // Condition for SOME execution of delta to reach a state satisfying phi.
  FormulaPtr regress_exist(const FormulaPtr& phi, const ProgramPtr& delta) {
    MemoKey key{phi, delta};
    auto it = memoExist_.find(key);
    if (it != memoExist_.end()) return it->second;
    FormulaPtr out;
    switch (delta->kind) {
      case Program::Kind::Act:
        out = regress_step(f::and_(
            {f::poss(t::app(delta->action, delta->args)),
             apply_pending(phi, t::app(delta->action, delta->args))}));
        break;
      case Program::Kind::Test:
        out = simplify(f::and_({delta->test, phi}));
        break;
      case Program::Kind::Seq: {
        FormulaPtr acc = phi;
        for (auto it2 = delta->kids.rbegin(); it2 != delta->kids.rend(); ++it2)
          acc = regress_exist(acc, *it2);
        out = acc;
        break;
      }
      case Program::Kind::Choice:
        out = simplify(f::or_(
            {regress_exist(phi, delta->kids[0]), regress_exist(phi, delta->kids[1])}));
        break;
      case Program::Kind::Pick:
        out = quantified(phi, delta, /*existential=*/true);
        break;
    }
    memoExist_.emplace(key, out);
    return out;
  }

  // Condition for ALL executions of delta to end in states satisfying phi
  // (vacuously true on branches that cannot execute).
  FormulaPtr regress_univ(const FormulaPtr& phi, const ProgramPtr& delta) {
    MemoKey key{phi, delta};
    auto it = memoUniv_.find(key);
    if (it != memoUniv_.end()) return it->second;
    FormulaPtr out;
    switch (delta->kind) {
      case Program::Kind::Act:
        out = regress_step(f::imply(
            f::poss(t::app(delta->action, delta->args)),
            apply_pending(phi, t::app(delta->action, delta->args))));
        break;
      case Program::Kind::Test:
        out = simplify(f::imply(delta->test, phi));
        break;
      case Program::Kind::Seq: {
        FormulaPtr acc = phi;
        for (auto it2 = delta->kids.rbegin(); it2 != delta->kids.rend(); ++it2)
          acc = regress_univ(acc, *it2);
        out = acc;
        break;
      }
      case Program::Kind::Choice:
        out = simplify(
            f::and_({regress_univ(phi, delta->kids[0]), regress_univ(phi, delta->kids[1])}));
        break;
      case Program::Kind::Pick:
        out = quantified(phi, delta, /*existential=*/false);
        break;
    }
    memoUniv_.emplace(key, out);
    return out;
  }

  // Executability condition of a program: under what pre-state does some
  // execution of delta exist.
  FormulaPtr exec_condition(const ProgramPtr& delta) { return regress_exist(f::tru(), delta); }

 private:
  const Domain& theory_;

  // Memo keys must own their nodes: keying by raw pointers alone would let a
  // freed node's address be reused by a different formula or program, turning
  // the cache into a source of wrong answers.
  struct MemoKey {
    FormulaPtr phi;
    ProgramPtr prog;
    bool operator<(const MemoKey& o) const {
      if (phi.get() != o.phi.get()) return phi.get() < o.phi.get();
      return prog.get() < o.prog.get();
    }
  };
  std::map<MemoKey, FormulaPtr> memoExist_;
  std::map<MemoKey, FormulaPtr> memoUniv_;

  FormulaPtr quantified(const FormulaPtr& phi, const ProgramPtr& delta, bool existential) {
    std::vector<std::string> vars = delta->vars;
    ProgramPtr body = delta->kids[0];
    // Avoid capturing variables free in phi.
    std::set<std::string> avoid = free_vars(phi);
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
    FormulaPtr inner = existential ? regress_exist(phi, body) : regress_univ(phi, body);
    if (inner->kind == Formula::Kind::True || inner->kind == Formula::Kind::False) return inner;
    return existential ? f::exists(std::move(vars), inner) : f::forall(std::move(vars), inner);
  }

  // Rewrites one fluent atom evaluated after `act` into its pre-action
  // condition:
  //   gamma+ (the action adds the atom: argument tuples unify)
  //   or (atom held before and no delete effect matches: gamma- negated).
  FormulaPtr regress_atom(const FormulaPtr& atom) {
    const TermPtr& act = atom->act;
    if (act->kind != Term::Kind::App)
      throw LogicError("pending action must be an action application");
    const Action& a = theory_.action(act->name);
    if (a.params.size() != act->args.size())
      throw LogicError("action " + a.name + " arity mismatch in regression");
    Subst sub;
    for (std::size_t i = 0; i < a.params.size(); ++i) sub.emplace(a.params[i], act->args[i]);

    std::vector<FormulaPtr> gains;
    std::vector<FormulaPtr> keeps;  // one disjunction of disequalities per delete effect
    for (const auto& eff : a.effects) {
      if (eff.pred != atom->pred) continue;
      std::vector<FormulaPtr> eqs, neqs;
      for (std::size_t i = 0; i < eff.args.size(); ++i) {
        TermPtr t = substitute(eff.args[i], sub);
        eqs.push_back(f::eq(atom->args[i], t));
        neqs.push_back(f::neq(atom->args[i], t));
      }
      if (eff.add) {
        gains.push_back(eqs.empty() ? f::tru()
                        : eqs.size() == 1 ? eqs[0]
                                          : f::and_(std::move(eqs)));
      } else {
        keeps.push_back(neqs.empty() ? f::fls()
                        : neqs.size() == 1 ? neqs[0]
                                           : f::or_(std::move(neqs)));
      }
    }
    FormulaPtr held = f::atom(atom->pred, atom->args);
    FormulaPtr kept = keeps.empty() ? held
                      : keeps.size() == 1
                          ? f::and_({held, keeps[0]})
                          : [&] {
                              std::vector<FormulaPtr> kids{held};
                              kids.insert(kids.end(), keeps.begin(), keeps.end());
                              return f::and_(std::move(kids));
                            }();
    if (gains.empty()) return kept;
    std::vector<FormulaPtr> kids = std::move(gains);
    kids.push_back(kept);
    return f::or_(std::move(kids));
  }

  FormulaPtr step(const FormulaPtr& phi) {
    switch (phi->kind) {
      case Formula::Kind::True:
      case Formula::Kind::False:
      case Formula::Kind::Eq:
      case Formula::Kind::Frozen:  // pinned to the pre-program state; untouched
        return phi;
      case Formula::Kind::Atom: {
        if (!phi->act) return phi;
        if (!theory_.symbols.is_predicate(phi->pred))
          throw LogicError("unknown fluent " + phi->pred + " in regression");
        return regress_atom(phi);
      }
      case Formula::Kind::Poss: {
        const TermPtr& act = phi->act;
        if (act->kind != Term::Kind::App)
          throw LogicError("executability atom needs an action application");
        const Action& a = theory_.action(act->name);
        if (a.params.size() != act->args.size())
          throw LogicError("action " + a.name + " arity mismatch in executability atom");
        Subst sub;
        for (std::size_t i = 0; i < a.params.size(); ++i) sub.emplace(a.params[i], act->args[i]);
        return substitute(a.precondition, sub);
      }
      case Formula::Kind::Tc: {
        if (!phi->act) {
          return f::tc(phi->vars[0], phi->vars[1], step(phi->kids[0]), phi->args[0],
                       phi->args[1]);
        }
        // Push the pending action into the edge body, renaming the edge
        // variables apart from the action's arguments first.
        std::vector<std::string> vars = phi->vars;
        FormulaPtr body = phi->kids[0];
        std::set<std::string> actFv;
        free_vars(phi->act, actFv);
        detail::rename_binders_apart(vars, body, actFv);
        FormulaPtr regressed = step(apply_pending(body, phi->act));
        return f::tc(vars[0], vars[1], regressed, phi->args[0], phi->args[1]);
      }
      case Formula::Kind::NumCmp: {
        if (phi->kids.empty())
          throw LogicError("numeric feature " + phi->numvar + " reached regression unmapped");
        return f::count_cmp(phi->numop, phi->vars, step(phi->kids[0]));
      }
      default: {
        Formula n{phi->kind};
        n.vars = phi->vars;
        n.kids.reserve(phi->kids.size());
        for (const auto& k : phi->kids) n.kids.push_back(step(k));
        return f::make(std::move(n));
      }
    }
  }
};

}  // namespace soundabs

#endif  // SOUNDABS_REGRESSION_HPP
