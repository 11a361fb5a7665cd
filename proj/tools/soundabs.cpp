// soundabs - prove that a boolean/numeric abstraction of a first-order
// planning domain is sound, by reducing soundness to first-order verification
// tasks discharged with an external SMT solver.
//
// Exit codes:
//   verify:  0 abstraction proven sound, 1 some task refuted, 2 undetermined,
//            3 bad input or missing solver
//   oracle:  0 formula holds on the instance, 1 violated, 3 bad input
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "soundabs/bat.hpp"
#include "soundabs/exec.hpp"
#include "soundabs/golog.hpp"
#include "soundabs/qnp.hpp"
#include "soundabs/verify.hpp"

namespace {

soundabs::Sexpr read_sexpr_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw soundabs::InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return soundabs::read_one_sexpr(ss.str(), path);
}

int run_verify(const std::string& domainPath, const std::string& qnpPath,
               const std::string& mapPath, const std::string& constraintsPath,
               const soundabs::VerifyOptions& opts, const std::string& reportPath) {
  using namespace soundabs;
  Domain d = parse_domain(read_sexpr_file(domainPath));
  std::vector<FormulaPtr> cons = parse_constraints(read_sexpr_file(constraintsPath), d.symbols);
  QnpProblem q = parse_qnp(read_sexpr_file(qnpPath));
  RefinementMapping m = parse_mapping(read_sexpr_file(mapPath), d.symbols);

  VerifyReport rep = run_verification(d, cons, q, m, opts);
  std::cout << report_table(rep);
  if (!reportPath.empty()) {
    std::ofstream out(reportPath);
    if (!out) throw InputError("cannot write report to " + reportPath);
    out << report_to_json(rep).dump(2) << "\n";
  }
  switch (rep.overall) {
    case Overall::True: return 0;
    case Overall::False: return 1;
    case Overall::Unknown: return 2;
  }
  return 2;
}

int run_oracle(const std::string& domainPath, const std::string& instancePath,
               const std::string& taskPath) {
  using namespace soundabs;
  Domain d = parse_domain(read_sexpr_file(domainPath));
  Structure inst = load_instance(read_sexpr_file(instancePath), d);
  Sexpr taskExpr = read_sexpr_file(taskPath);
  std::set<std::string> bound;
  FormulaPtr phi = parse_formula(taskExpr, d.symbols, bound);

  FiniteValidity fv = check_validity_finite(phi, d, {inst});
  if (fv.valid) {
    std::cout << "holds: formula is true in every reachable state of " << instancePath << "\n";
    return 0;
  }
  std::cout << "violated: " << fv.witness << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"soundabs: verifier for boolean/numeric abstractions of first-order planning domains"};
  app.require_subcommand(1);

  std::string domainPath, qnpPath, mapPath, constraintsPath, reportPath;
  soundabs::VerifyOptions opts;
  if (const char* env = std::getenv("SOUNDABS_SOLVER")) opts.solverCmd = env;

  CLI::App* verify = app.add_subcommand(
      "verify", "generate all soundness tasks and discharge them with an SMT solver");
  verify->add_option("--domain", domainPath, "concrete planning domain (s-expression)")
      ->required();
  verify->add_option("--qnp", qnpPath, "abstract boolean/numeric problem")->required();
  verify->add_option("--map", mapPath, "refinement mapping from abstract to concrete")
      ->required();
  verify->add_option("--constraints", constraintsPath, "trusted state constraints")->required();
  verify->add_option("--solver-cmd", opts.solverCmd,
                     "SMT solver command reading SMT-LIB2 from stdin (env SOUNDABS_SOLVER)")
      ->capture_default_str();
  verify->add_option("--timeout-secs", opts.timeoutSecs, "per-task solver timeout")
      ->capture_default_str();
  verify->add_option("--jobs", opts.jobs, "solver processes to run in parallel")
      ->capture_default_str();
  verify->add_option("--emit-smt", opts.emitSmtDir, "write one .smt2 script per task here");
  verify->add_option("--emit-tasks", opts.emitTasksDir, "write one .sexp formula per task here");
  verify->add_option("--report", reportPath, "write a JSON report here");
  verify->add_flag_callback(
      "--no-closure-induction", [&] { opts.minimalityInstances = false; },
      "omit induction instances for closure predicates (sound; proves less)");

  std::string instancePath, taskPath;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "evaluate a task formula on every reachable state of a finite instance");
  oracle->add_option("--domain", domainPath, "concrete planning domain (s-expression)")
      ->required();
  oracle->add_option("--instance", instancePath, "finite instance (objects + ground facts)")
      ->required();
  oracle->add_option("--check", taskPath, "file holding one formula, e.g. an emitted task")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed())
      return run_verify(domainPath, qnpPath, mapPath, constraintsPath, opts, reportPath);
    return run_oracle(domainPath, instancePath, taskPath);
  } catch (const soundabs::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const soundabs::LogicError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
