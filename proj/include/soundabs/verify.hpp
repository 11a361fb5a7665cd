#ifndef SOUNDABS_VERIFY_HPP
#define SOUNDABS_VERIFY_HPP

#include <atomic>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "soundabs/oracle.hpp"
#include "soundabs/smt.hpp"
#include "soundabs/solver.hpp"
#include "soundabs/vcgen.hpp"

namespace soundabs {

enum class TaskVerdict { Valid, Refuted, Unknown };
enum class Overall { True, False, Unknown };

inline const char* to_string(TaskVerdict v) {
  switch (v) {
    case TaskVerdict::Valid: return "Valid";
    case TaskVerdict::Refuted: return "Refuted";
    case TaskVerdict::Unknown: return "Unknown";
  }
  return "?";
}

inline const char* to_string(Overall o) {
  switch (o) {
    case Overall::True: return "True";
    case Overall::False: return "False";
    case Overall::Unknown: return "Unknown";
  }
  return "?";
}

inline const char* kind_name(VerificationTask::Kind k) {
  switch (k) {
    case VerificationTask::Kind::Init: return "init";
    case VerificationTask::Kind::Exec: return "exec";
    case VerificationTask::Kind::BoolEffect: return "bool-effect";
    case VerificationTask::Kind::NumEffect: return "num-effect";
    case VerificationTask::Kind::Goal: return "goal";
  }
  return "?";
}

struct TaskReport {
  std::string id;
  std::string kind;
  std::string provenance;
  TaskVerdict verdict = TaskVerdict::Unknown;
  std::string solverStatus;  // unsat/sat/unknown/timeout/error/not-run
  long long wallMillis = 0;
  bool usesClosure = false;
  std::string note;
};

struct VerifyOptions {
  std::string solverCmd = "z3 -in";
  int timeoutSecs = 10;
  int jobs = 1;
  std::string emitSmtDir;    // when nonempty, write one .smt2 script per task
  std::string emitTasksDir;  // when nonempty, write one .sexp formula per task
  bool minimalityInstances = true;
  CountermodelOptions countermodel;
  bool probeSolver = true;
};

struct VerifyReport {
  std::string domainName;
  std::string qnpName;
  int actionCount = 0;
  int boolCount = 0;
  int numCount = 0;
  Overall overall = Overall::Unknown;
  long long wallMillis = 0;
  std::string solverCmd;
  int timeoutSecs = 0;
  std::vector<TaskReport> tasks;
};

namespace detail {

inline std::string file_safe(const std::string& id) {
  std::string out;
  for (char c : id) out += (c == ':' || c == '/' || c == ' ') ? '_' : c;
  return out;
}

// A satisfying assignment for the negated task only refutes the task if it
// respects genuine closure semantics, which the emitted axioms merely
// approximate.  Re-validate by searching for a small finite structure that
// falsifies the task under exact evaluation.
inline bool confirm_refutation(const VerificationTask& task, const SymbolTable& symbols,
                               const CountermodelOptions& opts, std::string& note) {
  auto cm = find_countermodel(task.formula, {}, symbols.predicates, symbols.constants, opts);
  if (cm) {
    note = "refutation confirmed on a finite structure with " +
           std::to_string(cm->universe.size()) + " objects";
    return true;
  }
  note = "solver assignment may not respect closure semantics and no finite "
         "counterstructure was found";
  return false;
}

}  // namespace detail

// Generates the full task suite, discharges every task through the external
// solver, classifies each outcome soundly, and aggregates.
inline VerifyReport run_verification(const Domain& dsc, const std::vector<FormulaPtr>& constraints,
                                     const QnpProblem& qnp, const RefinementMapping& mapping,
                                     const VerifyOptions& opts = {}) {
  auto started = std::chrono::steady_clock::now();

  TaskSuite suite = generate_tasks(dsc, constraints, qnp, mapping);

  VerifyReport report;
  report.domainName = dsc.name;
  report.qnpName = qnp.name;
  report.actionCount = static_cast<int>(qnp.actions.size());
  report.boolCount = static_cast<int>(qnp.bools.size());
  report.numCount = static_cast<int>(qnp.nums.size());
  report.solverCmd = opts.solverCmd;
  report.timeoutSecs = opts.timeoutSecs;
  report.tasks.resize(suite.tasks.size());

  if (opts.probeSolver) {
    SolverResult probe = run_solver(opts.solverCmd, "(check-sat)\n",
                                    opts.timeoutSecs < 30 ? 30 : opts.timeoutSecs);
    if (probe.status != SolverStatus::Sat)
      throw InputError("solver probe failed for command `" + opts.solverCmd +
                       "`: " + (probe.detail.empty() ? probe.output : probe.detail));
  }

  // Encode everything up front (deterministically), then solve in parallel.
  SmtEncoder encoder(dsc.symbols, EncodeOptions{opts.minimalityInstances});
  std::vector<EncodedTask> encoded(suite.tasks.size());
  std::vector<std::string> encodeErrors(suite.tasks.size());
  for (std::size_t i = 0; i < suite.tasks.size(); ++i) {
    const auto& task = suite.tasks[i];
    TaskReport& tr = report.tasks[i];
    tr.id = task.id;
    tr.kind = kind_name(task.kind);
    tr.provenance = task.provenance;
    try {
      encoded[i] = encoder.encode(task);
      tr.usesClosure = encoded[i].hasTc;
    } catch (const LogicError& e) {
      encodeErrors[i] = e.what();
    }
    if (!opts.emitTasksDir.empty()) {
      std::filesystem::create_directories(opts.emitTasksDir);
      std::ofstream out(std::filesystem::path(opts.emitTasksDir) /
                        (detail::file_safe(task.id) + ".sexp"));
      out << ";; task: " << task.id << "\n;; " << task.provenance << "\n"
          << format_formula(task.formula) << "\n";
    }
    if (!opts.emitSmtDir.empty() && encodeErrors[i].empty()) {
      std::filesystem::create_directories(opts.emitSmtDir);
      const auto& queries = encoded[i].queries;
      for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        std::string stem = detail::file_safe(task.id);
        if (queries.size() > 1) stem += "_q" + std::to_string(qi + 1);
        std::ofstream out(std::filesystem::path(opts.emitSmtDir) / (stem + ".smt2"));
        out << queries[qi].script;
        if (!queries[qi].rescue.empty()) {
          std::ofstream lean(std::filesystem::path(opts.emitSmtDir) / (stem + "_lean.smt2"));
          lean << queries[qi].rescue;
        }
      }
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= suite.tasks.size()) break;
      const auto& task = suite.tasks[i];
      TaskReport& tr = report.tasks[i];
      if (!encodeErrors[i].empty()) {
        tr.verdict = TaskVerdict::Unknown;
        tr.solverStatus = "not-run";
        tr.note = "encoding unavailable: " + encodeErrors[i];
        continue;
      }
      // One solver call per query; the task is valid iff every query is
      // unsatisfiable, and any satisfiable query refutes the whole task.  A
      // closure-bearing query that times out gets a second attempt with the
      // lean axiom kit (equally sound, often easier to instantiate).
      const EncodedTask& enc = encoded[i];
      tr.verdict = TaskVerdict::Valid;
      tr.solverStatus = enc.queries.empty() ? "trivial" : "unsat";
      if (enc.queries.empty()) tr.note = "conclusion is trivially true";
      for (std::size_t qi = 0; qi < enc.queries.size(); ++qi) {
        const EncodedQuery& q = enc.queries[qi];
        SolverResult sr = run_solver(opts.solverCmd, q.script, opts.timeoutSecs);
        tr.wallMillis += sr.wallMillis;
        SolverStatus st = sr.status;
        std::string detail = sr.detail;
        if ((st == SolverStatus::Timeout || st == SolverStatus::Unknown) && !q.rescue.empty()) {
          SolverResult rescue = run_solver(opts.solverCmd, q.rescue, opts.timeoutSecs);
          tr.wallMillis += rescue.wallMillis;
          if (rescue.status == SolverStatus::Unsat) {
            st = SolverStatus::Unsat;
            detail.clear();
          }
        }
        if (st == SolverStatus::Unsat) continue;

        std::string at =
            enc.queries.size() > 1
                ? "query " + std::to_string(qi + 1) + "/" + std::to_string(enc.queries.size()) + ": "
                : "";
        tr.solverStatus = to_string(st);
        switch (st) {
          case SolverStatus::Sat:
            if (!q.hasTc) {
              tr.verdict = TaskVerdict::Refuted;
              tr.note = at + "negated task is satisfiable";
            } else {
              tr.verdict =
                  detail::confirm_refutation(task, dsc.symbols, opts.countermodel, tr.note)
                      ? TaskVerdict::Refuted
                      : TaskVerdict::Unknown;
              tr.note = at + tr.note;
            }
            break;
          case SolverStatus::Unknown:
            tr.verdict = TaskVerdict::Unknown;
            tr.note = at + "solver returned unknown";
            break;
          default:
            tr.verdict = TaskVerdict::Unknown;
            tr.note = at + detail;
            break;
        }
        break;
      }
    }
  };
  int jobs = opts.jobs < 1 ? 1 : opts.jobs;
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  bool anyRefuted = false, allValid = true;
  for (const auto& tr : report.tasks) {
    if (tr.verdict == TaskVerdict::Refuted) anyRefuted = true;
    if (tr.verdict != TaskVerdict::Valid) allValid = false;
  }
  report.overall = allValid ? Overall::True : anyRefuted ? Overall::False : Overall::Unknown;
  report.wallMillis = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  return report;
}

inline nlohmann::json report_to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["domain"] = r.domainName;
  j["qnp"] = r.qnpName;
  j["result"] = to_string(r.overall);
  j["actions"] = r.actionCount;
  j["bool_features"] = r.boolCount;
  j["num_features"] = r.numCount;
  j["task_count"] = r.tasks.size();
  j["wall_ms"] = r.wallMillis;
  j["solver_cmd"] = r.solverCmd;
  j["timeout_secs"] = r.timeoutSecs;
  j["tasks"] = nlohmann::json::array();
  for (const auto& t : r.tasks) {
    nlohmann::json tj;
    tj["id"] = t.id;
    tj["kind"] = t.kind;
    tj["provenance"] = t.provenance;
    tj["verdict"] = to_string(t.verdict);
    tj["solver_status"] = t.solverStatus;
    tj["wall_ms"] = t.wallMillis;
    tj["uses_closure"] = t.usesClosure;
    if (!t.note.empty()) tj["note"] = t.note;
    j["tasks"].push_back(tj);
  }
  return j;
}

inline std::string report_table(const VerifyReport& r) {
  std::string s;
  std::size_t w = 8;
  for (const auto& t : r.tasks) w = std::max(w, t.id.size());
  auto pad = [](std::string x, std::size_t n) {
    while (x.size() < n) x += ' ';
    return x;
  };
  s += pad("task", w + 2) + pad("verdict", 9) + pad("solver", 9) + "ms\n";
  for (const auto& t : r.tasks) {
    s += pad(t.id, w + 2) + pad(to_string(t.verdict), 9) + pad(t.solverStatus, 9) +
         std::to_string(t.wallMillis) + "\n";
    if (!t.note.empty()) s += "  note: " + t.note + "\n";
  }
  s += "\n";
  s += pad("#A", 5) + pad("#F", 5) + pad("#P", 5) + pad("tasks", 7) + pad("T(s)", 8) + "Result\n";
  char tbuf[32];
  std::snprintf(tbuf, sizeof tbuf, "%.1f", static_cast<double>(r.wallMillis) / 1000.0);
  s += pad(std::to_string(r.actionCount), 5) + pad(std::to_string(r.boolCount), 5) +
       pad(std::to_string(r.numCount), 5) + pad(std::to_string(r.tasks.size()), 7) +
       pad(tbuf, 8) + to_string(r.overall) + "\n";
  return s;
}

}  // namespace soundabs

#endif  // SOUNDABS_VERIFY_HPP
