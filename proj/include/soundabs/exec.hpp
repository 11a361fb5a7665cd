#ifndef SOUNDABS_EXEC_HPP
#define SOUNDABS_EXEC_HPP

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "soundabs/bat.hpp"
#include "soundabs/golog.hpp"
#include "soundabs/oracle.hpp"

namespace soundabs {

// A state over a fixed universe: just the relation part of a Structure.
using StateRel = std::map<std::string, std::set<std::vector<std::string>>>;

inline Structure with_state(const Structure& base, StateRel rel) {
  Structure s = base;
  s.relations = std::move(rel);
  return s;
}

struct GroundAction {
  std::string name;
  std::vector<std::string> args;

  bool operator<(const GroundAction& o) const {
    return name != o.name ? name < o.name : args < o.args;
  }
};

// Executes one ground action: evaluates the precondition, then applies
// deletes followed by adds.  Returns nothing when inapplicable.
inline std::optional<StateRel> step(const Domain& d, const Structure& s,
                                    const GroundAction& ga) {
  const Action& a = d.action(ga.name);
  if (a.params.size() != ga.args.size())
    throw LogicError("ground action " + ga.name + " arity mismatch");
  Env env;
  for (std::size_t i = 0; i < a.params.size(); ++i) env[a.params[i]] = ga.args[i];
  if (!evaluate(s, a.precondition, env)) return std::nullopt;
  StateRel next = s.relations;
  for (const auto& eff : a.effects) {
    if (eff.add) continue;
    std::vector<std::string> tuple;
    for (const auto& t : eff.args) tuple.push_back(detail::eval_term_in(s, t, env));
    auto it = next.find(eff.pred);
    if (it != next.end()) it->second.erase(tuple);
  }
  for (const auto& eff : a.effects) {
    if (!eff.add) continue;
    std::vector<std::string> tuple;
    for (const auto& t : eff.args) tuple.push_back(detail::eval_term_in(s, t, env));
    next[eff.pred].insert(std::move(tuple));
  }
  return next;
}

// All ground instantiations of the domain's actions over the universe.
inline std::vector<GroundAction> ground_actions(const Domain& d, const Structure& s) {
  std::vector<GroundAction> out;
  for (const auto& a : d.actions) {
    std::vector<std::vector<std::string>> tuples{{}};
    for (std::size_t i = 0; i < a.params.size(); ++i) {
      std::vector<std::vector<std::string>> next;
      for (const auto& partial : tuples)
        for (const auto& o : s.universe) {
          auto ext = partial;
          ext.push_back(o);
          next.push_back(std::move(ext));
        }
      tuples = std::move(next);
    }
    for (auto& tup : tuples) out.push_back({a.name, std::move(tup)});
  }
  return out;
}

// Terminal states of every execution branch of an iteration-free program:
// Test filters, Seq chains, Choice unions, Pick enumerates the universe.
inline std::set<StateRel> executions(const Domain& d, const Structure& base,
                                     const StateRel& state, const ProgramPtr& prog, Env env) {
  switch (prog->kind) {
    case Program::Kind::Act: {
      Structure cur = with_state(base, state);
      GroundAction ga{prog->action, {}};
      for (const auto& t : prog->args) ga.args.push_back(detail::eval_term_in(cur, t, env));
      auto next = step(d, cur, ga);
      if (!next) return {};
      return {*next};
    }
    case Program::Kind::Test: {
      Structure cur = with_state(base, state);
      if (evaluate(cur, prog->test, env)) return {state};
      return {};
    }
    case Program::Kind::Seq: {
      std::set<StateRel> states{state};
      for (const auto& kid : prog->kids) {
        std::set<StateRel> next;
        for (const auto& st : states) {
          auto more = executions(d, base, st, kid, env);
          next.insert(more.begin(), more.end());
        }
        states = std::move(next);
        if (states.empty()) break;
      }
      return states;
    }
    case Program::Kind::Choice: {
      auto left = executions(d, base, state, prog->kids[0], env);
      auto right = executions(d, base, state, prog->kids[1], env);
      left.insert(right.begin(), right.end());
      return left;
    }
    case Program::Kind::Pick: {
      std::set<StateRel> out;
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == prog->vars.size()) {
          auto more = executions(d, base, state, prog->kids[0], env);
          out.insert(more.begin(), more.end());
          return;
        }
        for (const auto& o : base.universe) {
          env[prog->vars[i]] = o;
          go(i + 1);
        }
        env.erase(prog->vars[i]);
      };
      go(0);
      return out;
    }
  }
  return {};
}

inline std::set<StateRel> executions(const Domain& d, const Structure& start,
                                     const ProgramPtr& prog) {
  return executions(d, start, start.relations, prog, Env{});
}

// Breadth-first enumeration of states reachable from the instance's initial
// state within `maxDepth` transitions (default 3 times the universe size).
inline std::set<StateRel> reachable_states(const Domain& d, const Structure& start,
                                           int maxDepth = -1) {
  if (maxDepth < 0) maxDepth = 3 * static_cast<int>(start.universe.size());
  auto actions = ground_actions(d, start);
  std::set<StateRel> seen{start.relations};
  std::deque<std::pair<StateRel, int>> frontier{{start.relations, 0}};
  while (!frontier.empty()) {
    auto [state, depth] = frontier.front();
    frontier.pop_front();
    if (depth >= maxDepth) continue;
    Structure cur = with_state(start, state);
    for (const auto& ga : actions) {
      auto next = step(d, cur, ga);
      if (!next) continue;
      if (seen.insert(*next).second) frontier.emplace_back(*next, depth + 1);
    }
  }
  return seen;
}

// Result of a bounded validity check: either valid on every reachable state
// of every given instance, or a concrete witness of failure.
struct FiniteValidity {
  bool valid = true;
  std::string witness;  // human-readable description when !valid
};

inline std::string describe_state(const StateRel& rel) {
  std::string out = "{";
  bool first = true;
  for (const auto& [pred, tuples] : rel)
    for (const auto& tup : tuples) {
      if (!first) out += " ";
      first = false;
      out += "(" + pred;
      for (const auto& o : tup) out += " " + o;
      out += ")";
    }
  return out + "}";
}

inline FiniteValidity check_validity_finite(const FormulaPtr& phi, const Domain& d,
                                            const std::vector<Structure>& instances,
                                            int maxDepth = -1) {
  for (const auto& inst : instances) {
    for (const auto& state : reachable_states(d, inst, maxDepth)) {
      Structure cur = with_state(inst, state);
      if (!evaluate(cur, phi)) {
        std::string uni;
        for (const auto& o : inst.universe) uni += (uni.empty() ? "" : " ") + o;
        return {false, "universe [" + uni + "] state " + describe_state(state)};
      }
    }
  }
  return {true, ""};
}

// Loads an instance and verifies it satisfies the domain's initial-state
// description.
inline Structure load_instance(const Sexpr& e, const Domain& d) {
  Structure s = parse_instance(e, d.symbols);
  if (!evaluate(s, d.init))
    throw InputError("instance does not satisfy the domain's initial-state description", e.pos,
                     e.origin);
  return s;
}

}  // namespace soundabs

#endif  // SOUNDABS_EXEC_HPP
