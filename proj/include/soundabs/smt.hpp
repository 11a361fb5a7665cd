#ifndef SOUNDABS_SMT_HPP
#define SOUNDABS_SMT_HPP

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "soundabs/formula_io.hpp"
#include "soundabs/logic.hpp"
#include "soundabs/vcgen.hpp"

namespace soundabs {

// A transitive-closure atom family discovered in one task: all TC atoms whose
// edge formula is alpha-equivalent share one fresh binary predicate.  Every
// axiom emitted for it is true of the genuine reflexive transitive closure of
// the edge formula, so proofs under the axioms are sound; only refutations
// need re-validation.
struct TcObligation {
  std::string name;  // fresh predicate (tc1, tc2, ...)
  std::string u, v;  // designated edge variables
  FormulaPtr body;   // edge formula over (u, v); no other free variables
};

struct EncodeOptions {
  // Emit premise-guarded induction instances approximating minimality of the
  // closure predicates.  Disabling them keeps the encoding sound but makes
  // fewer tasks provable (tests use this to exercise the Unknown path).
  bool minimalityInstances = true;
};

// One solver query.  The task formula's conclusion is a conjunction; each
// conjunct becomes its own query (the task is valid iff every query is
// unsatisfiable, and any satisfiable query witnesses a countermodel of the
// whole task).  When the query mentions closure predicates, `rescue` holds a
// second script whose axiom kit drops the two path-decomposition axioms:
// still sound (every axiom is true of the genuine closure) and often easier
// for the solver when a positive reachability premise would otherwise feed
// the decompositions an unbounded chain of witnesses.
struct EncodedQuery {
  std::string script;
  std::string rescue;
  bool hasTc = false;
};

struct EncodedTask {
  std::vector<EncodedQuery> queries;
  bool hasTc = false;
  std::vector<TcObligation> obligations;
};

class SmtEncoder {
 public:
  SmtEncoder(const SymbolTable& symbols, EncodeOptions opts = {})
      : symbols_(symbols), opts_(opts) {}
  // The encoder only borrows the table; refuse temporaries outright.
  SmtEncoder(SymbolTable&&, EncodeOptions = {}) = delete;

  EncodedTask encode(const VerificationTask& task) {
    asserts_.clear();
    skolems_.clear();
    skCounter_ = 0;
    branches_.clear();

    split_negated(task.formula);

    EncodedTask out;
    std::set<std::string> seenBodies;
    for (const auto& br : branches_) {
      asserts_ = br.asserts;
      skolems_ = br.skolems;
      obligations_.clear();
      obligationKeys_.clear();
      for (const auto& a : asserts_) collect_tc(a);

      EncodedQuery q;
      q.hasTc = !obligations_.empty();
      q.script = render(task, /*leanKit=*/false);
      if (q.hasTc) q.rescue = render(task, /*leanKit=*/true);
      out.queries.push_back(std::move(q));

      if (!obligations_.empty()) out.hasTc = true;
      for (const auto& ob : obligations_) {
        auto key = part_key(ob.body, ob);
        if (seenBodies.insert(key).second) out.obligations.push_back(ob);
      }
    }
    return out;
  }

 private:
  const SymbolTable& symbols_;
  EncodeOptions opts_;
  std::vector<FormulaPtr> asserts_;
  std::vector<std::string> skolems_;
  std::vector<TcObligation> obligations_;
  std::map<std::string, std::size_t> obligationKeys_;
  int skCounter_ = 0;

  struct Branch {
    std::vector<FormulaPtr> asserts;
    std::vector<std::string> skolems;
  };
  std::vector<Branch> branches_;

  // ---- name handling ------------------------------------------------------

  static std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) {
      if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
          c == '_' || c == '-' || c == '.')
        out += c;
      else if (c != '?')
        out += '_';
    }
    if (out.empty() || (out[0] >= '0' && out[0] <= '9')) out = "v" + out;
    return out;
  }

  std::string fresh_skolem(const std::string& var) {
    std::string base = "sk_" + sanitize(var);
    std::string name = base;
    while (true) {
      bool clash = symbols_.constants.count(name) || symbols_.predicates.count(name);
      for (const auto& s : skolems_)
        if (s == name) clash = true;
      if (!clash) break;
      name = base + "_" + std::to_string(++skCounter_);
    }
    skolems_.push_back(name);
    return name;
  }

  // ---- negation splitting with outer skolemization ------------------------

  // The task is valid iff its negation is unsatisfiable.  Rather than assert
  // one big negation, split it: premises are asserted positively (with
  // outermost existentials skolemized to fresh constants), the conclusion
  // negatively (with outermost universals skolemized).  This grounds the
  // closure atoms that matter, which the instantiation heuristics need.
  //
  // Along that spine a negated conjunction forks the encoding: one query per
  // conjunct, sharing the premises accumulated so far.  Each query is strictly
  // easier than the combined negation and the task stays valid iff all of
  // them are unsatisfiable.
  void split_negated(const FormulaPtr& phi) {
    switch (phi->kind) {
      case Formula::Kind::True:
        return;  // negation is unsatisfiable outright: no query needed
      case Formula::Kind::And: {
        for (const auto& k : phi->kids) {
          auto savedAsserts = asserts_;
          auto savedSkolems = skolems_;
          int savedCounter = skCounter_;
          split_negated(k);
          asserts_ = std::move(savedAsserts);
          skolems_ = std::move(savedSkolems);
          skCounter_ = savedCounter;
        }
        return;
      }
      case Formula::Kind::Imply:
        assert_pos(phi->kids[0]);
        split_negated(phi->kids[1]);
        return;
      case Formula::Kind::Forall: {
        FormulaPtr body = phi->kids[0];
        skolemize_into(phi->vars, body);
        split_negated(body);
        return;
      }
      default:
        assert_neg(phi);
        branches_.push_back({asserts_, skolems_});
        return;
    }
  }

  void skolemize_into(const std::vector<std::string>& vars, FormulaPtr& body) {
    Subst sub;
    for (const auto& v : vars) sub.emplace(v, t::cnst(fresh_skolem(v)));
    body = substitute(body, sub);
  }

  void assert_pos(const FormulaPtr& phi) {
    switch (phi->kind) {
      case Formula::Kind::True:
        return;
      case Formula::Kind::And:
        for (const auto& k : phi->kids) assert_pos(k);
        return;
      case Formula::Kind::Exists: {
        FormulaPtr body = phi->kids[0];
        skolemize_into(phi->vars, body);
        assert_pos(body);
        return;
      }
      case Formula::Kind::Not:
        assert_neg(phi->kids[0]);
        return;
      default:
        asserts_.push_back(phi);
        return;
    }
  }

  void assert_neg(const FormulaPtr& phi) {
    switch (phi->kind) {
      case Formula::Kind::False:
        return;
      case Formula::Kind::Or:
        for (const auto& k : phi->kids) assert_neg(k);
        return;
      case Formula::Kind::Imply:
        assert_pos(phi->kids[0]);
        assert_neg(phi->kids[1]);
        return;
      case Formula::Kind::Forall: {
        FormulaPtr body = phi->kids[0];
        skolemize_into(phi->vars, body);
        assert_neg(body);
        return;
      }
      case Formula::Kind::Not:
        assert_pos(phi->kids[0]);
        return;
      default:
        asserts_.push_back(f::not_(phi));
        return;
    }
  }

  // ---- transitive-closure obligations --------------------------------------

  static std::string body_key(const FormulaPtr& tc) {
    std::map<std::string, std::string> env;
    env[tc->vars[0]] = "%0";
    env[tc->vars[1]] = "%1";
    return detail::norm_print(tc->kids[0], env);
  }

  void register_tc(const FormulaPtr& tc) {
    std::set<std::string> fv;
    free_vars(tc->kids[0], fv);
    fv.erase(tc->vars[0]);
    fv.erase(tc->vars[1]);
    if (!fv.empty())
      throw LogicError("closure body carries quantified parameter " + *fv.begin() +
                       "; this encoding needs parameter-free edge formulas");
    std::string key = body_key(tc);
    if (obligationKeys_.count(key)) return;
    TcObligation ob;
    ob.name = "tc" + std::to_string(obligations_.size() + 1);
    ob.u = tc->vars[0];
    ob.v = tc->vars[1];
    ob.body = tc->kids[0];
    obligationKeys_.emplace(key, obligations_.size());
    obligations_.push_back(std::move(ob));
  }

  void collect_tc(const FormulaPtr& phi) {
    if (phi->kind == Formula::Kind::Tc) register_tc(phi);
    for (const auto& k : phi->kids) collect_tc(k);
  }

  const TcObligation& obligation_for(const FormulaPtr& tc) const {
    auto it = obligationKeys_.find(body_key(tc));
    if (it == obligationKeys_.end()) throw LogicError("unregistered closure atom (internal)");
    return obligations_[it->second];
  }

  // ---- SMT-LIB printing ----------------------------------------------------

  using NameEnv = std::map<std::string, std::string>;

  std::string smt_term(const TermPtr& tm, const NameEnv& env) const {
    switch (tm->kind) {
      case Term::Kind::Var: {
        auto it = env.find(tm->name);
        if (it == env.end())
          throw LogicError("unbound variable " + tm->name + " during encoding (internal)");
        return it->second;
      }
      case Term::Kind::Const:
        return sanitize(tm->name);
      case Term::Kind::App:
        throw LogicError("action term reached the encoder (internal)");
    }
    return "?";
  }

  std::string bind_var(const std::string& var, NameEnv& env, std::set<std::string>& used) const {
    std::string base = sanitize(var);
    std::string name = base;
    int i = 0;
    while (used.count(name) || symbols_.constants.count(name)) name = base + "_" + std::to_string(++i);
    used.insert(name);
    env[var] = name;
    return name;
  }

  std::string smt_formula(const FormulaPtr& phi, NameEnv env, std::set<std::string> used) const {
    switch (phi->kind) {
      case Formula::Kind::True:
        return "true";
      case Formula::Kind::False:
        return "false";
      case Formula::Kind::Atom: {
        if (phi->act) throw LogicError("pending action reached the encoder (internal)");
        if (phi->args.empty()) return sanitize(phi->pred);
        std::string out = "(" + sanitize(phi->pred);
        for (const auto& a : phi->args) out += " " + smt_term(a, env);
        return out + ")";
      }
      case Formula::Kind::Eq:
        return "(= " + smt_term(phi->args[0], env) + " " + smt_term(phi->args[1], env) + ")";
      case Formula::Kind::Not:
        return "(not " + smt_formula(phi->kids[0], env, used) + ")";
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::string out = phi->kind == Formula::Kind::And ? "(and" : "(or";
        for (const auto& k : phi->kids) out += " " + smt_formula(k, env, used);
        return out + ")";
      }
      case Formula::Kind::Imply:
        return "(=> " + smt_formula(phi->kids[0], env, used) + " " +
               smt_formula(phi->kids[1], env, used) + ")";
      case Formula::Kind::Iff:
        return "(= " + smt_formula(phi->kids[0], env, used) + " " +
               smt_formula(phi->kids[1], env, used) + ")";
      case Formula::Kind::Forall:
      case Formula::Kind::Exists: {
        std::string binder;
        for (const auto& v : phi->vars) {
          std::string n = bind_var(v, env, used);
          binder += "(" + n + " Obj)";
        }
        return std::string(phi->kind == Formula::Kind::Forall ? "(forall (" : "(exists (") +
               binder + ") " + smt_formula(phi->kids[0], env, used) + ")";
      }
      case Formula::Kind::Tc: {
        if (phi->act) throw LogicError("pending closure atom reached the encoder (internal)");
        const TcObligation& ob = obligation_for(phi);
        return "(" + ob.name + " " + smt_term(phi->args[0], env) + " " +
               smt_term(phi->args[1], env) + ")";
      }
      case Formula::Kind::NumCmp:
        throw LogicError("counting atom reached the encoder (internal)");
      case Formula::Kind::Poss:
      case Formula::Kind::Frozen:
        throw LogicError("internal node reached the encoder (internal)");
    }
    return "?";
  }

  // Prints an obligation's edge formula with the designated pair bound to the
  // given SMT variable names.
  std::string edge_formula(const TcObligation& ob, const std::string& x,
                           const std::string& y) const {
    NameEnv env{{ob.u, x}, {ob.v, y}};
    std::set<std::string> used{x, y};
    return smt_formula(ob.body, std::move(env), std::move(used));
  }

  // ---- axiom kits ----------------------------------------------------------

  // Axioms every reflexive transitive closure satisfies: reflexivity, closure
  // under edge extension on both sides, inclusion of single edges, and both
  // one-step decompositions of a nonempty path.  The lean kit drops the two
  // decomposition axioms: a positive reachability premise makes them spawn an
  // unbounded chain of intermediate-point witnesses, which can starve the
  // search even when a short refutation exists without them.
  void base_kit(std::string& s, const TcObligation& ob, bool leanKit) const {
    const std::string& P = ob.name;
    s += "; closure axioms for " + P + "\n";
    s += "(assert (forall ((x Obj)) (" + P + " x x)))\n";
    s += "(assert (forall ((x Obj) (y Obj) (z Obj)) (=> (and (" + P + " x y) " +
         edge_formula(ob, "y", "z") + ") (" + P + " x z))))\n";
    s += "(assert (forall ((x Obj) (y Obj) (z Obj)) (=> (and " + edge_formula(ob, "x", "y") +
         " (" + P + " y z)) (" + P + " x z))))\n";
    s += "(assert (forall ((x Obj) (y Obj)) (=> " + edge_formula(ob, "x", "y") + " (" + P +
         " x y))))\n";
    if (leanKit) return;
    s += "(assert (forall ((a Obj) (b Obj)) (=> (" + P +
         " a b) (or (= a b) (exists ((w Obj)) (and " + edge_formula(ob, "w", "b") + " (" + P +
         " a w)))))))\n";
    s += "(assert (forall ((a Obj) (b Obj)) (=> (" + P +
         " a b) (or (= a b) (exists ((w Obj)) (and " + edge_formula(ob, "a", "w") + " (" + P +
         " w b)))))))\n";
  }

  // ---- relating two obligations --------------------------------------------

  // Syntactic comparison of edge formulas, used to spot "same relation minus
  // some edges" (conjunctive strengthening) and "same relation plus some
  // edges" (disjunctive weakening) pairs.
  static std::vector<FormulaPtr> parts_of(const FormulaPtr& body, Formula::Kind op) {
    if (body->kind == op) return body->kids;
    return {body};
  }

  static std::string part_key(const FormulaPtr& part, const TcObligation& ob) {
    std::map<std::string, std::string> env;
    env[ob.u] = "%0";
    env[ob.v] = "%1";
    return detail::norm_print(part, env);
  }

  // parts(a) strictly contained in parts(b)?  Returns the leftover parts of b.
  static bool part_subset(const TcObligation& a, const TcObligation& b, Formula::Kind op,
                          std::vector<FormulaPtr>& leftover) {
    std::vector<FormulaPtr> pa = parts_of(a.body, op), pb = parts_of(b.body, op);
    if (pa.size() >= pb.size()) return false;
    std::map<std::string, int> have;
    for (const auto& p : pa) have[part_key(p, a)]++;
    leftover.clear();
    for (const auto& p : pb) {
      auto key = part_key(p, b);
      auto it = have.find(key);
      if (it != have.end() && it->second > 0)
        --it->second;
      else
        leftover.push_back(p);
    }
    for (const auto& [k, n] : have)
      if (n != 0) return false;
    return true;
  }

  static void constants_in(const TermPtr& tm, std::vector<std::string>& out) {
    if (tm->kind == Term::Kind::Const) out.push_back(tm->name);
    for (const auto& a : tm->args) constants_in(a, out);
  }

  static void constants_in(const FormulaPtr& phi, std::vector<std::string>& out) {
    for (const auto& a : phi->args) constants_in(a, out);
    if (phi->act) constants_in(phi->act, out);
    for (const auto& k : phi->kids) constants_in(k, out);
  }

  // Matches (= var s) in either orientation against a designated variable.
  static void match_eq_endpoint(const FormulaPtr& eq, const std::string& var, TermPtr& slot) {
    if (eq->kind != Formula::Kind::Eq) return;
    const TermPtr& l = eq->args[0];
    const TermPtr& r = eq->args[1];
    if (l->kind == Term::Kind::Var && l->name == var && r->kind != Term::Kind::Var)
      slot = r;
    else if (r->kind == Term::Kind::Var && r->name == var && l->kind != Term::Kind::Var)
      slot = l;
  }

  // Recognizes an added-edge disjunct (and (= u s) (= v t)); returns the edge.
  static bool added_edge(const FormulaPtr& part, const TcObligation& ob, TermPtr& s, TermPtr& t) {
    if (part->kind != Formula::Kind::And || part->kids.size() != 2) return false;
    TermPtr forU, forV;
    for (const auto& k : part->kids) {
      if (k->kind != Formula::Kind::Eq) return false;
      match_eq_endpoint(k, ob.u, forU);
      match_eq_endpoint(k, ob.v, forV);
    }
    if (!forU || !forV) return false;
    s = forU;
    t = forV;
    return true;
  }

  // Recognizes a removed-edge conjunct (or (not (= u s)) (not (= v t))); returns the edge.
  static bool removed_edge(const FormulaPtr& part, const TcObligation& ob, TermPtr& s,
                           TermPtr& t) {
    if (part->kind != Formula::Kind::Or || part->kids.size() != 2) return false;
    TermPtr forU, forV;
    for (const auto& k : part->kids) {
      if (k->kind != Formula::Kind::Not || k->kids[0]->kind != Formula::Kind::Eq) return false;
      match_eq_endpoint(k->kids[0], ob.u, forU);
      match_eq_endpoint(k->kids[0], ob.v, forV);
    }
    if (!forU || !forV) return false;
    s = forU;
    t = forV;
    return true;
  }

  // Mixed relation between edge formulas: big = (or added-edges... (and
  // small-parts removed-edge-guards...)).  Harvests the distinguishing
  // constants and both edge lists; returns false if big lacks that shape.
  static bool swap_decompose(const TcObligation& big, const TcObligation& small,
                             std::vector<std::string>& anchors,
                             std::vector<std::pair<TermPtr, TermPtr>>& edges) {
    std::vector<FormulaPtr> addParts, coreParts;
    for (const auto& p : parts_of(big.body, Formula::Kind::Or)) {
      TermPtr es, et;
      if (added_edge(p, big, es, et))
        addParts.push_back(p);
      else
        coreParts.push_back(p);
    }
    if (addParts.empty() || coreParts.size() != 1) return false;
    TcObligation core{big.name, big.u, big.v, coreParts[0]};
    std::vector<FormulaPtr> leftover;
    if (!part_subset(small, core, Formula::Kind::And, leftover)) return false;
    for (const auto& p : addParts) {
      constants_in(p, anchors);
      TermPtr es, et;
      added_edge(p, big, es, et);
      edges.emplace_back(es, et);
    }
    for (const auto& extra : leftover) {
      constants_in(extra, anchors);
      TermPtr es, et;
      if (removed_edge(extra, big, es, et)) edges.emplace_back(es, et);
    }
    return true;
  }

  // Emits one premise-guarded induction instance: if candidate psi is
  // reflexive and closed under chi-steps, it contains the closure of chi.
  // True of the genuine closure for every psi, so always sound to assert.
  void minimality_instance(std::string& s, const TcObligation& ob,
                           const std::string& psiXX, const std::string& psiXY,
                           const std::string& psiXZ, const std::string& psiAB) const {
    s += "(assert (=> (and (forall ((x Obj)) " + psiXX + ")";
    s += " (forall ((x Obj) (y Obj) (z Obj)) (=> (and " + psiXY + " " +
         edge_formula(ob, "y", "z") + ") " + psiXZ + ")))";
    s += " (forall ((a Obj) (b Obj)) (=> (" + ob.name + " a b) " + psiAB + "))))\n";
  }

  // Cross-predicate reasoning: monotonicity between comparable closures and
  // induction instances whose candidates mention the sibling predicate,
  // anchored at the constants that distinguish the two edge formulas.
  void relate_pair(std::string& s, const TcObligation& big, const TcObligation& small) const {
    // "small" denotes a subset relation of "big"; targets bound big from above.
    std::vector<std::string> anchors;
    std::vector<std::pair<TermPtr, TermPtr>> edges;

    std::vector<FormulaPtr> leftover;
    if (part_subset(big, small, Formula::Kind::And, leftover)) {
      // small's edges = big's edges minus those violating the extra conjuncts
      s += "; " + small.name + " is a subrelation of " + big.name + "\n";
      s += "(assert (forall ((a Obj) (b Obj)) (=> (" + small.name + " a b) (" + big.name +
           " a b))))\n";
      for (const auto& extra : leftover) {
        constants_in(extra, anchors);
        TermPtr es, et;
        if (removed_edge(extra, small, es, et)) edges.emplace_back(es, et);
      }
    } else if (part_subset(small, big, Formula::Kind::Or, leftover)) {
      // big's edges = small's edges plus some added ones
      s += "; " + small.name + " is a subrelation of " + big.name + "\n";
      s += "(assert (forall ((a Obj) (b Obj)) (=> (" + small.name + " a b) (" + big.name +
           " a b))))\n";
      for (const auto& extra : leftover) {
        constants_in(extra, anchors);
        TermPtr es, et;
        if (added_edge(extra, big, es, et)) edges.emplace_back(es, et);
      }
    } else if (swap_decompose(big, small, anchors, edges)) {
      // big's edges = small's edges minus some removed ones plus some added
      // ones; no inclusion holds either way, but the edge set still supports
      // premise-guarded induction candidates over the sibling.
      s += "; " + big.name + " rewires " + small.name + " at finitely many edges\n";
    } else {
      return;  // unrelated bodies: no sound instance suggested
    }
    std::sort(anchors.begin(), anchors.end());
    anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());

    if (!opts_.minimalityInstances) return;
    const std::string Q = small.name;
    s += "; induction instances bounding " + big.name + " via " + Q + "\n";
    auto q = [&Q](const char* a, const char* b) {
      return "(" + Q + " " + a + " " + b + ")";
    };
    // plain sibling candidate
    minimality_instance(s, big, q("x", "x"), q("x", "y"), q("x", "z"), q("a", "b"));
    // anchored candidates: sibling weakened at one endpoint
    for (const auto& c : anchors) {
      std::string cc = sanitize(c);
      minimality_instance(s, big, "(or (= x " + cc + ") " + q("x", "x") + ")",
                          "(or (= x " + cc + ") " + q("x", "y") + ")",
                          "(or (= x " + cc + ") " + q("x", "z") + ")",
                          "(or (= a " + cc + ") " + q("a", "b") + ")");
      minimality_instance(s, big, "(or (= x " + cc + ") " + q("x", "x") + ")",
                          "(or (= y " + cc + ") " + q("x", "y") + ")",
                          "(or (= z " + cc + ") " + q("x", "z") + ")",
                          "(or (= b " + cc + ") " + q("a", "b") + ")");
    }
    // added-edge candidate: a path in big either avoids the new edge or
    // crosses it once
    NameEnv envEmpty;
    for (const auto& [es, et] : edges) {
      std::string ss = smt_term(es, envEmpty), tt = smt_term(et, envEmpty);
      auto comp = [&](const char* a, const char* b) {
        return "(or " + std::string("(") + Q + " " + a + " " + b + ") (and (" + Q + " " + a +
               " " + ss + ") (" + Q + " " + tt + " " + b + ")))";
      };
      minimality_instance(s, big, comp("x", "x"), comp("x", "y"), comp("x", "z"),
                          comp("a", "b"));
    }
  }

  // ---- full script ---------------------------------------------------------

  std::string render(const VerificationTask& task, bool leanKit) const {
    std::string s;
    s += "; task " + task.id + "\n";
    s += "; " + task.provenance + "\n";
    s += "; validity check: the assertions negate the task; unsat means valid\n";
    if (leanKit) s += "; lean closure kit: path-decomposition axioms omitted\n";
    s += "(declare-sort Obj 0)\n";
    for (const auto& c : symbols_.constants) s += "(declare-const " + sanitize(c) + " Obj)\n";
    if (symbols_.constants.size() > 1) {
      s += "(assert (distinct";
      for (const auto& c : symbols_.constants) s += " " + sanitize(c);
      s += "))\n";
    }
    for (const auto& sk : skolems_) s += "(declare-const " + sk + " Obj)\n";
    for (const auto& [pred, arity] : symbols_.predicates) {
      s += "(declare-fun " + sanitize(pred) + " (";
      for (int i = 0; i < arity; ++i) s += i ? " Obj" : "Obj";
      s += ") Bool)\n";
    }
    for (const auto& ob : obligations_)
      s += "(declare-fun " + ob.name + " (Obj Obj) Bool)\n";
    for (const auto& ob : obligations_) base_kit(s, ob, leanKit);
    for (std::size_t i = 0; i < obligations_.size(); ++i)
      for (std::size_t j = 0; j < obligations_.size(); ++j)
        if (i != j) relate_pair(s, obligations_[i], obligations_[j]);
    s += "; negated task\n";
    for (const auto& a : asserts_)
      s += "(assert " + smt_formula(a, {}, {}) + ")\n";
    s += "(check-sat)\n";
    s += "(get-model)\n";
    return s;
  }
};

}  // namespace soundabs

#endif  // SOUNDABS_SMT_HPP
