// Acceptance run: one PASS/FAIL line per criterion. Exit status is the number
// of failing criteria.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "soundsearch/lawcheck.hpp"
#include "support.hpp"

using namespace fixtures;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    detail += (detail.empty() ? "" : "; ") + what;
  }
};

struct Run {
  int code;
  std::string out;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = soundsearch::cli::run(args, out, err);
  return {code, out.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

const std::vector<std::string> kBuiltins{"id",
                                         "normalize",
                                         "split",
                                         "normalize;split",
                                         "fix(split,4)",
                                         "domsplit(rank=value,thr=2)",
                                         "domsplit(rank=neg)",
                                         "quadratic",
                                         "quadratic;split;normalize",
                                         "unify"};

// Built-ins that run on finite algebras.
const std::vector<std::string> kFinite{"id",           "normalize",          "split",
                                       "normalize;split", "fix(split,4)", "domsplit(rank=value,thr=2)",
                                       "domsplit(rank=neg)"};

CheckConfig config(std::uint64_t trials, std::uint64_t seed) {
  CheckConfig cfg;
  cfg.trials = trials;
  cfg.gen.seed = seed;
  return cfg;
}

std::string counts(const LawReport& r) {
  return r.op + " " + r.law + " " + std::to_string(r.passes) + "/" + std::to_string(r.trials) + " passed, " +
         std::to_string(r.skips) + " skipped";
}

Outcome quadraticExample() {
  Outcome v;
  const Run r = invoke({"solve", "--algebra", "int", "--pipeline", "quadratic;split;normalize", "--formula", "x*x = 1"});
  v.require(r.code == 0, "exit " + std::to_string(r.code));
  const auto ls = lines(r.out);
  v.require(ls == std::vector<std::string>{"<{} ; {x -> 1}>", "<{} ; {x -> -1}>"}, "answers: " + r.out);
  const Algebra z = Algebra::integers();
  for (long root : {1L, -1L})
    v.require(naive::holds(z, F("x * x = 1", z), {{V("x"), Value::integer(root)}}, {}), "root check");
  v.detail = v.pass ? "answers {x -> 1}, {x -> -1} with empty stores, left branch first" : v.detail;
  return v;
}

Outcome unificationExample() {
  Outcome v;
  const Run r = invoke({"solve", "--algebra", "herbrand", "--pipeline", "unify", "--formula", "f(x) = f(y)"});
  v.require(r.code == 0, "exit " + std::to_string(r.code));
  const auto ls = lines(r.out);
  v.require(ls.size() == 1, "expected one answer, got " + std::to_string(ls.size()));

  const Algebra h = Algebra::herbrand();
  const auto d = syntacticDecider(h);
  Evaluator ev(h, unifyInfer(h), *d);
  const Answers a = answers(ev.semEval(StateSet{empty()}, F("f(x) = f(y)", h)), *d);
  v.require(a.answers.size() == 1, "library answer count");
  if (a.answers.size() == 1) {
    Substitution expected;
    expected.bind(V("x"), TV("z"));
    expected.bind(V("y"), TV("z"));
    v.require(a.answers[0].residual.empty(), "residual store not empty");
    v.require(renameMatch(a.answers[0].subst, expected, {V("x"), V("y")}), "not a variant of {x -> z, y -> z}");
    v.require(ls.size() == 1 && ls[0] == State::pair({}, a.answers[0].subst).str(), "printed answer differs");
    if (v.pass) v.detail = ls[0] + " rename-matches {x -> z, y -> z}";
  }
  return v;
}

Outcome regroupContrast() {
  Outcome v;
  const Algebra z = Algebra::integers();
  const Oracle o(Universe::integerSlice(z, -5, 5), OracleBudget{5, 1 << 16});
  const StateSet pair{S({"x = 1"}, z), S({"x = -1"}, z)};
  const InferOp op = regroupFixture();
  const StateSet out = op.apply(pair);
  v.require(!setEquivalenceViolation(op, pair, o), "fixture fails set equivalence on the pair");
  const auto pw = pointwiseViolation(op, pair, o);
  v.require(pw.has_value(), "fixture passes pointwise equivalence on the pair");
  v.require(out.str() == "[<{x = 1 \\/ x = -1} ; {}>]", "regrouped state is " + out.str());

  const LawReport se = checkSetEquivalence([](const Algebra&) { return regroupFixture(); }, config(500, 31));
  const LawReport pt = checkPointwise([](const Algebra&) { return regroupFixture(); }, config(500, 31));
  v.require(se.holds(), "random set-equivalence: " + counts(se));
  v.require(!pt.holds(), "random pointwise unexpectedly holds");

  std::size_t checked = 0;
  for (const auto& spec : kBuiltins) {
    const auto f = pipelineFactory(spec);
    const LawReport a = checkPointwise(f, config(300, 32));
    const LawReport b = checkSetEquivalence(f, config(300, 32));
    v.require(a.holds(), counts(a));
    v.require(b.holds(), counts(b));
    ++checked;
  }
  if (v.pass)
    v.detail = "regroup-fixture: set-equivalence holds, pointwise fails with output " + out.str() + "; " +
               std::to_string(checked) + " built-ins pass both";
  return v;
}

Outcome proposition() {
  Outcome v;
  std::uint64_t trials = 0;
  for (const auto& spec : kFinite) {
    CheckConfig cfg = config(500, 41);
    cfg.gen.maxDomainSize = 3;
    cfg.gen.maxFormulaDepth = 3;
    const LawReport r = checkProposition1(pipelineFactory(spec), cfg);
    v.require(r.holds() && r.passes == r.trials, counts(r));
    trials += r.trials;
  }
  if (v.pass)
    v.detail = "verdicts agree on " + std::to_string(trials) + "/" + std::to_string(trials) + " trials over " +
               std::to_string(kFinite.size()) + " operators";
  return v;
}

Outcome soundness() {
  Outcome v;
  std::ostringstream detail;
  for (const char* spec : {"id", "normalize", "normalize;split", "split;normalize"}) {
    SoundnessConfig cfg;
    cfg.check = config(1000, 42);
    cfg.check.gen.maxStates = 3;
    cfg.formulaDepth = 4;
    const LawReport r = soundnessSuite(spec, cfg);
    v.require(r.holds(), counts(r));
    v.require(r.skipRate() <= cfg.maxSkipRate, "skip rate " + std::to_string(r.skipRate()) + " for " + spec);
    detail << spec << ": " << r.failures() << " violations, " << r.skips << " skips; ";
  }
  if (v.pass) v.detail = detail.str();
  return v;
}

Outcome preservation() {
  Outcome v;
  SoundnessConfig cfg;
  cfg.check = config(1000, 43);
  const LawReport r = preservationSuite("normalize;split", cfg);
  v.require(r.holds(), counts(r));
  const auto get = [&](const char* k) { return r.counters.count(k) ? r.counters.at(k) : 0; };
  const auto constructed = get("constructed disjunction case");
  const auto switched = get("state switch exercised");
  v.require(constructed >= 20, "only " + std::to_string(constructed) + " constructed cases");
  v.require(switched >= 20, "only " + std::to_string(switched) + " state switches");
  v.require(r.skipRate() <= cfg.maxSkipRate, "skip rate " + std::to_string(r.skipRate()));
  if (v.pass)
    v.detail = std::to_string(r.trials) + " trials, 0 violations, " + std::to_string(constructed) +
               " constructed disjunction cases, " + std::to_string(switched) + " state switches";
  return v;
}

Outcome dropLocalProperty() {
  Outcome v;
  const LawReport r = dropLocalSuite(config(500, 44));
  v.require(r.holds() && r.skips == 0, counts(r));
  if (v.pass) v.detail = std::to_string(r.trials) + " random states, 0 failures";
  return v;
}

Outcome conditions() {
  Outcome v;
  std::size_t heuristicFailures = 0, reports = 0;
  for (const auto& spec : kBuiltins) {
    const auto f = pipelineFactory(spec);
    const CheckConfig cfg = config(500, 45);
    for (const LawReport& r : {checkContinuity(f, cfg), checkAlphabetic(f, cfg), checkInconsistencyCond(f, cfg),
                               checkErrorCond(f, cfg)}) {
      ++reports;
      if (r.holds()) continue;
      if (r.heuristicOnly) {
        ++heuristicFailures;
        continue;
      }
      v.require(false, counts(r));
    }
  }
  if (v.pass)
    v.detail = std::to_string(reports) + " reports at 500 trials, " + std::to_string(heuristicFailures) +
               " heuristic-only failures";
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limitSeconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "quadratic example end-to-end", 1.0, quadraticExample},
      {2, "unification example", 1.0, unificationExample},
      {3, "set vs pointwise equivalence contrast", 0.0, regroupContrast},
      {4, "proposition: set and pointwise verdicts agree", 120.0, proposition},
      {5, "soundness suite", 600.0, soundness},
      {6, "preservation suite", 300.0, preservation},
      {7, "drop is existential closure", 0.0, dropLocalProperty},
      {8, "condition suite for built-in operators", 0.0, conditions},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.limitSeconds > 0 && secs >= c.limitSeconds) {
      v.pass = false;
      v.detail += " (took " + std::to_string(secs) + " s, limit " + std::to_string(c.limitSeconds) + " s)";
    }
    std::ostringstream time;
    time.precision(3);
    time << std::fixed << secs;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " [" << time.str()
              << " s] " << v.detail << std::endl;
    if (!v.pass) ++failures;
  }
  return failures;
}
