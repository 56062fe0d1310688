#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "soundsearch/error.hpp"
#include "soundsearch/lawcheck.hpp"
#include "soundsearch/oracle.hpp"
#include "soundsearch/report.hpp"
#include "soundsearch/semantics.hpp"

namespace soundsearch::cli {

namespace {

struct RunConfig {
  std::string algebra;
  std::string pipeline;
  std::string formula;
  std::string formulaFile;
  std::string report;
  std::string demo;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::size_t maxDepth = EvalLimits{}.maxDepth;
  std::size_t maxStates = EvalLimits{}.maxStates;
  bool serial = false;
};

std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Algebra loadAlgebra(const std::string& source) {
  if (source == "int") return Algebra::integers();
  if (source == "herbrand") return Algebra::herbrand();
  return parseAlgebraSpec(readFile(source));
}

std::unique_ptr<Decider> deciderFor(const Algebra& alg) {
  if (alg.domainEnumerable()) return finiteDecider(alg);
  return syntacticDecider(alg);
}

CheckConfig checkConfig(const RunConfig& rc) {
  CheckConfig cfg;
  cfg.gen.seed = rc.seed;
  cfg.trials = rc.trials;
  cfg.execution = rc.serial ? Execution::Serial : Execution::Parallel;
  return cfg;
}

void maybeWriteReport(const RunConfig& rc, const std::vector<LawReport>& reports) {
  if (!rc.report.empty()) writeReport(rc.report, reports);
}

int runSolve(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  if (rc.formula.empty() == rc.formulaFile.empty()) {
    err << "solve: give exactly one of --formula and --formula-file\n";
    return kUsage;
  }
  const Algebra alg = loadAlgebra(rc.algebra);
  const Formula phi = parseFormula(rc.formula.empty() ? readFile(rc.formulaFile) : rc.formula, &alg);
  const InferOp op = parsePipeline(rc.pipeline, alg);
  const auto decider = deciderFor(alg);
  Evaluator ev(alg, op, *decider, EvalLimits{rc.maxDepth, rc.maxStates});
  const EvalOutcome outcome = ev.semEval(StateSet{State::pair({}, {})}, phi);
  if (outcome.truncated) err << "warning: evaluation truncated; answers are partial\n";
  const Answers ans = answers(outcome, *decider);
  for (const auto& a : ans.answers) out << State::pair(a.residual, a.subst).str() << '\n';
  if (ans.sawError) {
    err << "evaluation produced the error state\n";
    return kErrorState;
  }
  if (ans.answers.empty()) {
    out << "no\n";
    return kFailure;
  }
  return kOk;
}

int runCheckInfer(const RunConfig& rc, std::ostream& out, std::ostream&) {
  const CheckConfig cfg = checkConfig(rc);
  const auto reports = checkInfer(pipelineFactory(rc.pipeline), cfg);
  out << formatTable(reports);
  maybeWriteReport(rc, reports);
  return anyBlockingFailure(reports) ? kFailure : kOk;
}

bool certified(const InferOp& op) {
  return op.isLifted() && profileOf(op) == Profile::Finite;
}

int runSoundness(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  SoundnessConfig cfg;
  cfg.check = checkConfig(rc);
  cfg.limits = EvalLimits{rc.maxDepth, rc.maxStates};
  if (!rc.algebra.empty()) {
    Algebra alg = loadAlgebra(rc.algebra);
    if (!alg.domainEnumerable()) {
      err << "soundness: needs a finite algebra (or none, for random algebras)\n";
      return kUsage;
    }
    cfg.check.algebra = std::move(alg);
  }

  const InferOp probe = pipelineFactory(rc.pipeline)(randomAlgebra(cfg.check.gen));
  if (!certified(probe)) {
    err << "soundness: pipeline '" << rc.pipeline << "' is not certified for finite algebras\n";
    return kUsage;
  }
  CheckConfig quick = cfg.check;
  quick.trials = std::min<std::uint64_t>(quick.trials, 50);
  if (anyBlockingFailure(checkInfer(pipelineFactory(rc.pipeline), quick))) {
    err << "soundness: pipeline '" << rc.pipeline << "' fails certification; run check-infer\n";
    return kUsage;
  }

  std::vector<LawReport> reports{soundnessSuite(rc.pipeline, cfg), preservationSuite(rc.pipeline, cfg)};
  out << formatTable(reports);
  for (const auto& r : reports) {
    out << r.law << ": " << r.passes << " passed, " << r.skips << " skipped, " << r.failures()
        << " failed of " << r.trials << '\n';
    for (const auto& [k, v] : r.counters) out << "  " << k << ": " << v << '\n';
  }
  maybeWriteReport(rc, reports);
  return anyBlockingFailure(reports, cfg.maxSkipRate) ? kFailure : kOk;
}

State stateOf(const std::string& csp, const Algebra& alg) {
  return State::pair(Csp({parseFormula(csp, &alg)}), {});
}

// Applies each step to the whole current set and numbers every state.
void trace(std::ostream& out, StateSet s, const std::vector<InferOp>& steps) {
  std::size_t n = 0;
  for (const auto& st : s) out << "  csp" << n++ << " = " << st.str() << '\n';
  for (const auto& op : steps) {
    s = op.apply(s);
    out << op.name() << ":\n";
    for (const auto& st : s) out << "  csp" << n++ << " = " << st.str() << '\n';
  }
}

int runDemo(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  if (rc.demo == "quadratic-split") {
    const Algebra alg = Algebra::integers();
    out << "x * x = 1 over the integers\n";
    trace(out, StateSet{stateOf("x * x = 1", alg)},
          {quadraticInfer(alg), caseSplitInfer(), normalizeInfer(alg)});
    return kOk;
  }
  if (rc.demo == "unify") {
    const Algebra alg = Algebra::herbrand();
    out << "f(x) = f(y) over the term algebra\n";
    trace(out, StateSet{stateOf("f(x) = f(y)", alg)}, {unifyInfer(alg)});
    out << "the unifier is an alphabetic variant of {x -> z, y -> z}\n";
    return kOk;
  }
  if (rc.demo == "good-bad") {
    const Algebra alg = Algebra::integers();
    const InferOp op = domainSplitInfer(alg, Ranking::Value, Rational(3));
    const StateSet out1 = op.apply(StateSet{stateOf("in(x, {1, 2, 3, 4})", alg)});
    out << "in(x, {1, 2, 3, 4}) split by " << op.name() << '\n';
    const char* labels[] = {"D_good", "D_bad"};
    for (std::size_t i = 0; i < out1.size(); ++i)
      out << "  " << (i < 2 ? labels[i] : "extra") << " = " << out1[i].str() << '\n';
    return kOk;
  }
  err << "unknown demo '" << rc.demo << "' (expected quadratic-split, unify or good-bad)\n";
  return kUsage;
}

void addLimits(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--max-depth", rc.maxDepth, "Maximum clause nesting")->check(CLI::PositiveNumber);
  sub->add_option("--max-states", rc.maxStates, "Maximum intermediate state-set size")
      ->check(CLI::PositiveNumber);
}

void addTrials(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--seed", rc.seed, "Random seed");
  sub->add_option("--trials", rc.trials, "Trials per law");
  sub->add_option("--report", rc.report, "Write a JSON law report");
  sub->add_flag("--serial", rc.serial, "Run trials on one thread");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Constraint-state semantics and infer-operator law checks", "soundsearch"};
  app.require_subcommand(1);

  auto* solve = app.add_subcommand("solve", "Evaluate a formula from the empty state and print answers");
  solve->add_option("--algebra", rc.algebra, "int, herbrand, or an algebra spec file")->required();
  rc.pipeline = "normalize";
  solve->add_option("--pipeline", rc.pipeline, "Infer pipeline");
  solve->add_option("--formula", rc.formula, "Formula text");
  solve->add_option("--formula-file", rc.formulaFile, "File holding the formula");
  addLimits(solve, rc);

  auto* check = app.add_subcommand("check-infer", "Certify an infer pipeline against the search laws");
  check->add_option("--pipeline", rc.pipeline, "Infer pipeline")->required();
  addTrials(check, rc);

  auto* sound = app.add_subcommand("soundness", "Run the soundness and preservation suites");
  sound->add_option("--pipeline", rc.pipeline, "Infer pipeline");
  sound->add_option("--algebra", rc.algebra, "Finite algebra spec file (default: random algebras)");
  addTrials(sound, rc);
  addLimits(sound, rc);

  auto* demo = app.add_subcommand("demo", "Replay a worked example");
  demo->add_option("name", rc.demo, "quadratic-split, unify or good-bad")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*solve) return runSolve(rc, out, err);
    if (*check) {
      if (check->count("--trials") == 0) rc.trials = 100;
      return runCheckInfer(rc, out, err);
    }
    if (*sound) {
      if (sound->count("--pipeline") == 0) rc.pipeline = "normalize;split";
      if (sound->count("--trials") == 0) rc.trials = 1000;
      return runSoundness(rc, out, err);
    }
    return runDemo(rc, out, err);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const SymbolError& e) {
    err << "symbol error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
  } catch (const UnsupportedOperation& e) {
    err << "unsupported: " << e.what() << '\n';
  }
  return kUsage;
}

}  // namespace soundsearch::cli
