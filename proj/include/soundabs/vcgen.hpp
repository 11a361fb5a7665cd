#ifndef SOUNDABS_VCGEN_HPP
#define SOUNDABS_VCGEN_HPP

#include <string>
#include <vector>

#include "soundabs/bat.hpp"
#include "soundabs/golog.hpp"
#include "soundabs/qnp.hpp"
#include "soundabs/regression.hpp"

namespace soundabs {

// One closed first-order proof obligation.  The five kinds together form a
// sufficient condition for the abstraction to be sound: the concrete initial
// state realizes the abstract one, each abstract action's precondition
// matches its program's executability, every execution of a program realizes
// the declared boolean and numeric effects, and the abstract goal forces the
// concrete one.
struct VerificationTask {
  enum class Kind { Init, Exec, BoolEffect, NumEffect, Goal };
  std::string id;
  Kind kind;
  FormulaPtr formula;      // closed, counting-free, no internal machinery
  std::string provenance;  // one-line description of the obligation
};

struct TaskSuite {
  std::vector<VerificationTask> tasks;
  std::vector<FormulaPtr> constraints;
};

namespace detail {

inline FormulaPtr conjoin(const std::vector<FormulaPtr>& fs) {
  if (fs.empty()) return f::tru();
  if (fs.size() == 1) return fs[0];
  return f::and_(fs);
}

inline void finish_task(VerificationTask& task) {
  task.formula = simplify(eliminate_counting(strip_frozen(task.formula)));
  if (!free_vars(task.formula).empty())
    throw LogicError("generated task " + task.id + " is not closed");
  if (has_internal_nodes(task.formula))
    throw LogicError("generated task " + task.id + " contains internal machinery");
}

}  // namespace detail

// Relates the value of a counting body before and after program execution.
// Atoms wrapped in Frozen denote the pre-execution state; plain atoms denote
// the post-execution state and are regressed through the program by the
// caller.  `body` must have exactly one counted variable for inc/dec.
//   inc:   some object gains the property, none loses it, at most one gains.
//   dec:   some object loses the property, none gains it, at most one loses.
//   frame: exactly the same objects satisfy it before and after.
inline FormulaPtr build_psi(const FormulaPtr& count, NumEffect direction) {
  if (count->kind != Formula::Kind::NumCmp || count->kids.empty())
    throw LogicError("numeric feature must map to a counting term");
  const FormulaPtr& body = count->kids[0];
  const std::vector<std::string>& vars = count->vars;
  if (direction == NumEffect::Frame)
    return f::forall(vars, f::iff(body, f::frozen(body)));
  if (vars.size() != 1)
    throw LogicError("increment/decrement tracking needs a single counted variable");
  const std::string& x = vars[0];
  std::set<std::string> avoid = free_vars(body);
  avoid.insert(x);
  std::string y = fresh_name(x + "_other", avoid);
  FormulaPtr bodyY = substitute(body, Subst{{x, t::var(y)}});

  FormulaPtr gainsX, gainsY, keeps;
  if (direction == NumEffect::Inc) {
    gainsX = f::and_({body, f::not_(f::frozen(body))});
    gainsY = f::and_({bodyY, f::not_(f::frozen(bodyY))});
    keeps = f::imply(f::frozen(body), body);
  } else {
    gainsX = f::and_({f::frozen(body), f::not_(body)});
    gainsY = f::and_({f::frozen(bodyY), f::not_(bodyY)});
    keeps = f::imply(body, f::frozen(body));
  }
  return f::and_({
      f::exists({x}, gainsX),
      f::forall({x}, keeps),
      f::forall({x, y}, f::imply(f::and_({gainsX, gainsY}), f::eq(t::var(x), t::var(y)))),
  });
}

// ---------------------------------------------------------------------------
// Task generators
// ---------------------------------------------------------------------------

inline VerificationTask gen_task_init(const Domain& bat, const QnpProblem& qnp,
                                      const RefinementMapping& m) {
  VerificationTask task;
  task.id = "task1:init";
  task.kind = VerificationTask::Kind::Init;
  task.provenance = "initial state: concrete init entails the mapped abstract init";
  task.formula = f::imply(bat.init, map_formula(m, literals_formula(qnp.init)));
  detail::finish_task(task);
  return task;
}

inline VerificationTask gen_task_exec(const Domain& bat, const std::vector<FormulaPtr>& sc,
                                      const QnpProblem& /*qnp*/, const RefinementMapping& m,
                                      const QnpAction& a) {
  VerificationTask task;
  task.id = "task2:" + a.name;
  task.kind = VerificationTask::Kind::Exec;
  task.provenance = "executability: refinement of " + a.name +
                    " can run exactly when the mapped precondition holds";
  RegressionContext ctx(bat);
  FormulaPtr pre = ctx.exec_condition(map_action(m, a.name));
  FormulaPtr mappedPre = map_formula(m, literals_formula(a.pre));
  task.formula = f::imply(detail::conjoin(sc), f::iff(pre, mappedPre));
  detail::finish_task(task);
  return task;
}

inline VerificationTask gen_task_booleff(const Domain& bat, const std::vector<FormulaPtr>& sc,
                                         const QnpProblem& /*qnp*/, const RefinementMapping& m,
                                         const QnpAction& a, const std::string& feature) {
  VerificationTask task;
  task.id = "task3:" + a.name + ":" + feature;
  task.kind = VerificationTask::Kind::BoolEffect;
  RegressionContext ctx(bat);
  ProgramPtr prog = map_action(m, a.name);
  FormulaPtr pre = ctx.exec_condition(prog);
  FormulaPtr mf = map_formula(m, f::atom(feature, {}));

  FormulaPtr consequent;
  switch (a.bool_effect(feature)) {
    case BoolEffect::SetTrue:
      task.provenance = "boolean effect: every execution of the refinement of " + a.name +
                        " makes " + feature + " true";
      consequent = ctx.regress_univ(mf, prog);
      break;
    case BoolEffect::SetFalse:
      task.provenance = "boolean effect: every execution of the refinement of " + a.name +
                        " makes " + feature + " false";
      consequent = ctx.regress_univ(f::not_(mf), prog);
      break;
    case BoolEffect::Frame:
      task.provenance = "boolean frame: every execution of the refinement of " + a.name +
                        " preserves " + feature;
      consequent = f::and_({f::imply(mf, ctx.regress_univ(mf, prog)),
                            f::imply(f::not_(mf), ctx.regress_univ(f::not_(mf), prog))});
      break;
  }
  std::vector<FormulaPtr> premises = sc;
  premises.push_back(pre);
  task.formula = f::imply(detail::conjoin(premises), consequent);
  detail::finish_task(task);
  return task;
}

inline VerificationTask gen_task_numeff(const Domain& bat, const std::vector<FormulaPtr>& sc,
                                        const QnpProblem& /*qnp*/, const RefinementMapping& m,
                                        const QnpAction& a, const std::string& numvar) {
  VerificationTask task;
  task.id = "task4:" + a.name + ":" + numvar;
  task.kind = VerificationTask::Kind::NumEffect;
  NumEffect effect = a.num_effect(numvar);
  switch (effect) {
    case NumEffect::Inc:
      task.provenance = "numeric effect: every execution of the refinement of " + a.name +
                        " increases " + numvar + " by exactly one";
      break;
    case NumEffect::Dec:
      task.provenance = "numeric effect: every execution of the refinement of " + a.name +
                        " decreases " + numvar + " by exactly one";
      break;
    case NumEffect::Frame:
      task.provenance = "numeric frame: every execution of the refinement of " + a.name +
                        " leaves " + numvar + " unchanged";
      break;
  }
  RegressionContext ctx(bat);
  ProgramPtr prog = map_action(m, a.name);
  FormulaPtr pre = ctx.exec_condition(prog);
  FormulaPtr count = map_formula(m, f::numvar_cmp(NumOp::EqZero, numvar));
  FormulaPtr psi = build_psi(count, effect);
  FormulaPtr consequent = ctx.regress_univ(psi, prog);
  std::vector<FormulaPtr> premises = sc;
  premises.push_back(pre);
  task.formula = f::imply(detail::conjoin(premises), consequent);
  detail::finish_task(task);
  return task;
}

inline VerificationTask gen_task_goal(const Domain& bat, const std::vector<FormulaPtr>& sc,
                                      const QnpProblem& qnp, const RefinementMapping& m) {
  VerificationTask task;
  task.id = "task5:goal";
  task.kind = VerificationTask::Kind::Goal;
  task.provenance = "goal: the mapped abstract goal forces the concrete goal";
  std::vector<FormulaPtr> premises = sc;
  premises.push_back(map_formula(m, literals_formula(qnp.goal)));
  task.formula = f::imply(detail::conjoin(premises), bat.goal);
  detail::finish_task(task);
  return task;
}

// Generates the complete suite: one init task, one executability task per
// abstract action, one effect task per boolean feature and action, one per
// numeric variable and action, and one goal task.
inline TaskSuite generate_tasks(const Domain& bat, const std::vector<FormulaPtr>& sc,
                                const QnpProblem& qnp, const RefinementMapping& m) {
  for (const auto& b : qnp.bools)
    if (!m.prop_map.count(b))
      throw InputError("boolean feature " + b + " has no mapping entry");
  for (const auto& n : qnp.nums)
    if (!m.num_map.count(n))
      throw InputError("numeric variable " + n + " has no mapping entry");
  for (const auto& a : qnp.actions)
    if (!m.action_map.count(a.name))
      throw InputError("abstract action " + a.name + " has no mapping entry");

  TaskSuite suite;
  suite.constraints = sc;
  suite.tasks.push_back(gen_task_init(bat, qnp, m));
  for (const auto& a : qnp.actions) suite.tasks.push_back(gen_task_exec(bat, sc, qnp, m, a));
  for (const auto& a : qnp.actions)
    for (const auto& feature : qnp.bools)
      suite.tasks.push_back(gen_task_booleff(bat, sc, qnp, m, a, feature));
  for (const auto& a : qnp.actions)
    for (const auto& numvar : qnp.nums)
      suite.tasks.push_back(gen_task_numeff(bat, sc, qnp, m, a, numvar));
  suite.tasks.push_back(gen_task_goal(bat, sc, qnp, m));

  const std::size_t expected = 2 + qnp.actions.size() * (1 + qnp.bools.size() + qnp.nums.size());
  if (suite.tasks.size() != expected)
    throw LogicError("task suite size mismatch (internal)");
  return suite;
}

}  // namespace soundabs

#endif  // SOUNDABS_VCGEN_HPP
