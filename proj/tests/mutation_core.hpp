// Mutation battery shared by the mutation-test suite and the acceptance
// binary.  Each mutation is a small textual edit to one corpus file that is
// meant to break soundness.  For every mutation we establish ground truth
// with the finite oracle (does some generated task fail on a reachable state
// of a small instance?) and then run the full verifier; a mutation the oracle
// refutes must never come back as proven sound.
#ifndef SOUNDABS_TESTS_MUTATION_CORE_HPP
#define SOUNDABS_TESTS_MUTATION_CORE_HPP

#include <map>
#include <string>
#include <vector>

#include "soundabs/verify.hpp"

#include "test_util.hpp"

namespace soundabs::testmut {

struct Mutation {
  std::string name;
  std::string corpus;  // directory under domains/
  std::string file;    // "domain", "qnp", "map", or "constraints"
  std::string from;    // text to replace; empty means replace the whole file
  std::string to;
  bool expectRefutable = true;  // ground-truth expectation, itself asserted
};

struct MutationRecord {
  std::string name;
  bool applied = false;     // the from-text was found and replaced
  bool refutable = false;   // finite oracle found a falsified task
  std::string violatedTask; // one witness task id
  std::string witness;      // oracle's description of the falsifying state
  Overall verdict = Overall::Unknown;
  std::string error;        // nonempty when the pipeline itself failed
  long long oracleMillis = 0;
  long long verifyMillis = 0;
};

struct MutationStats {
  std::vector<MutationRecord> records;
  std::size_t refutableCount = 0;
  // Refutable mutations that the verifier nevertheless proved sound: the one
  // outcome that must never happen.
  std::vector<std::string> unsoundAccepted;
  std::vector<std::string> errors;
};

inline std::vector<Mutation> mutation_battery() {
  std::vector<Mutation> all;

  auto add = [&](std::string name, std::string corpus, std::string file, std::string from,
                 std::string to, bool refutable = true) {
    all.push_back({std::move(name), std::move(corpus), std::move(file), std::move(from),
                   std::move(to), refutable});
  };

  // --- block-clearing domain -----------------------------------------------
  add("pickabove-ignores-hand", "cleara", "qnp",
      ":pre ((not H) (> n 0))", ":pre ((> n 0))");
  add("pickabove-claims-n-unchanged", "cleara", "qnp",
      ":eff (H (dec n))", ":eff (H)");
  add("pickabove-claims-hand-unchanged", "cleara", "qnp",
      ":eff (H (dec n))", ":eff ((dec n))");
  add("pickabove-claims-n-increases", "cleara", "qnp",
      ":eff (H (dec n))", ":eff (H (inc n))");
  add("putaside-precondition-negated", "cleara", "qnp",
      ":pre (H)", ":pre ((not H))");
  add("putaside-claims-hand-stays-busy", "cleara", "qnp",
      ":eff ((not H))", ":eff (H)");
  add("goal-inverted", "cleara", "qnp",
      "(:goal (= n 0))", "(:goal (> n 0))");
  add("abstract-init-contradicts-concrete", "cleara", "qnp",
      "(:init (> n 0) (not H))", "(:init (= n 0) (not H))");
  add("hand-feature-tracks-clear-blocks", "cleara", "map",
      "(:fluent H (exists (?x) (holding ?x)))",
      "(:fluent H (exists (?x) (clear ?x)))");
  add("hand-feature-needs-all-blocks-held", "cleara", "map",
      "(exists (?x) (holding ?x))", "(forall (?x) (holding ?x))");
  add("counter-counts-table-blocks", "cleara", "map",
      "(:num n (count (?x) (exists (?z) (and (on ?x ?z) (tc (?u ?v) (on ?u ?v) ?z A)))))",
      "(:num n (count (?x) (ontable ?x)))");
  add("pickabove-program-puts-down", "cleara", "map",
      "(act unstack ?x ?y)", "(act mt ?x)");
  add("pickabove-program-ignores-target", "cleara", "map", "",
      "(map\n"
      "  (:fluent H (exists (?x) (holding ?x)))\n"
      "  (:num n (count (?x) (exists (?z) (and (on ?x ?z) (tc (?u ?v) (on ?u ?v) ?z A)))))\n"
      "  (:action pickabove ()\n"
      "    (pick (?x ?y) (seq (test (clear ?x)) (act unstack ?x ?y))))\n"
      "  (:action putaside ()\n"
      "    (pick (?x) (seq (test (holding ?x)) (act mt ?x)))))\n");
  add("unstack-keeps-block-in-place", "cleara", "domain",
      ":effect (and (holding ?x) (clear ?y) (not (on ?x ?y)))",
      ":effect (and (holding ?x) (clear ?y))");
  add("unstack-ignores-busy-hand", "cleara", "domain",
      ":precondition (and (clear ?x) (on ?x ?y) (forall (?z) (not (holding ?z))))",
      ":precondition (and (clear ?x) (on ?x ?y))");
  add("put-down-never-applicable", "cleara", "domain",
      ":precondition (holding ?x)", ":precondition (and (holding ?x) (ontable ?x))");
  // Control: relaxing the concrete initial state keeps the abstraction sound.
  add("concrete-init-relaxed", "cleara", "domain",
      "(ontable A)", "(clear A)", /*refutable=*/false);

  // --- list-walk domain -----------------------------------------------------
  add("advance-leaves-old-mark", "getlast", "domain",
      ":effect (and (cur ?y) (not (cur ?x))))", ":effect (cur ?y))");
  add("advance-walks-backwards", "getlast", "domain",
      ":precondition (and (cur ?x) (next ?x ?y))", ":precondition (and (cur ?x) (next ?y ?x))");
  add("forward-claims-d-increases", "getlast", "qnp",
      ":eff ((dec d))", ":eff ((inc d))");
  add("distance-measured-from-predecessor", "getlast", "map",
      "(next ?z ?w)", "(next ?w ?z)");
  add("walk-goal-inverted", "getlast", "qnp",
      "(:goal (= d 0))", "(:goal (> d 0))");

  // --- list-find domain -----------------------------------------------------
  add("forward-requires-arrival", "finda", "qnp",
      ":pre ((> d 0))", ":pre ((= d 0))");
  add("advance-marks-source-again", "finda", "domain",
      ":effect (and (cur ?y) (not (cur ?x))))", ":effect (and (cur ?x) (not (cur ?x))))");

  // --- grid-corner domain ---------------------------------------------------
  add("column-counter-reads-row-marker", "corner", "map",
      "(atx ?z)", "(aty ?z)");
  add("left-claims-both-counters-drop", "corner", "qnp",
      ":eff ((dec nx))", ":eff ((dec nx) (dec ny))");
  add("corner-goal-forgets-row", "corner", "qnp",
      "(:goal (= nx 0) (= ny 0))", "(:goal (= nx 0))");

  return all;
}

// Applies one mutation and runs the oracle + verifier pipeline.
inline MutationRecord run_mutation(const Mutation& mut, const VerifyOptions& baseOpts) {
  namespace tu = soundabs::testutil;
  MutationRecord rec;
  rec.name = mut.name;

  std::string dir = tu::source_root() + "/domains/" + mut.corpus + "/";
  std::map<std::string, std::string> texts;
  for (const char* f : {"domain", "qnp", "map", "constraints"})
    texts[f] = tu::read_file(dir + f + ".sexp");

  std::string& target = texts.at(mut.file);
  if (mut.from.empty()) {
    target = mut.to;
    rec.applied = true;
  } else {
    auto pos = target.find(mut.from);
    if (pos == std::string::npos) {
      rec.error = "mutation text not found in " + mut.file + ".sexp";
      return rec;
    }
    target.replace(pos, mut.from.size(), mut.to);
    rec.applied = true;
  }

  try {
    Domain d = parse_domain(read_one_sexpr(texts["domain"], mut.name + "/domain"));
    std::vector<FormulaPtr> cons =
        parse_constraints(read_one_sexpr(texts["constraints"], mut.name + "/constraints"),
                          d.symbols);
    QnpProblem qnp = parse_qnp(read_one_sexpr(texts["qnp"], mut.name + "/qnp"));
    RefinementMapping m =
        parse_mapping(read_one_sexpr(texts["map"], mut.name + "/map"), d.symbols);

    // Ground truth: evaluate every generated task on every reachable state of
    // the bundled and generated small instances.
    auto t0 = std::chrono::steady_clock::now();
    TaskSuite suite = generate_tasks(d, cons, qnp, m);
    std::vector<Structure> instances;
    for (const auto& inst : tu::instance_files(mut.corpus))
      instances.push_back(load_instance(
          tu::read_sexpr_file(dir + "instances/" + inst + ".sexp"), d));
    for (auto& inst : tu::oracle_instances(mut.corpus)) instances.push_back(inst);
    for (const auto& task : suite.tasks) {
      FiniteValidity fv = check_validity_finite(task.formula, d, instances);
      if (!fv.valid) {
        rec.refutable = true;
        rec.violatedTask = task.id;
        rec.witness = fv.witness;
        break;
      }
    }
    rec.oracleMillis = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();

    VerifyOptions opts = baseOpts;
    opts.probeSolver = false;  // one probe per battery is enough; see callers
    VerifyReport rep = run_verification(d, cons, qnp, m, opts);
    rec.verdict = rep.overall;
    rec.verifyMillis = rep.wallMillis;
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

inline MutationStats run_battery(const VerifyOptions& baseOpts) {
  MutationStats stats;
  for (const auto& mut : mutation_battery()) {
    MutationRecord rec = run_mutation(mut, baseOpts);
    if (!rec.error.empty() || !rec.applied)
      stats.errors.push_back(rec.name + ": " + (rec.error.empty() ? "not applied" : rec.error));
    if (rec.refutable != mut.expectRefutable)
      stats.errors.push_back(rec.name + ": expected refutable=" +
                             (mut.expectRefutable ? "yes" : "no") + " but oracle says " +
                             (rec.refutable ? "yes" : "no"));
    if (rec.refutable) {
      ++stats.refutableCount;
      if (rec.verdict == Overall::True) stats.unsoundAccepted.push_back(rec.name);
    }
    stats.records.push_back(std::move(rec));
  }
  return stats;
}

}  // namespace soundabs::testmut

#endif  // SOUNDABS_TESTS_MUTATION_CORE_HPP
