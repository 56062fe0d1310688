#include <doctest.h>

#include "soundsearch/lawcheck.hpp"
#include "soundsearch/report.hpp"
#include "support.hpp"

using namespace fixtures;

namespace {

OpFactory constant(const InferOp& op) {
  return [op](const Algebra&) { return op; };
}

CheckConfig small(std::uint64_t trials = 100, std::uint64_t seed = 1) {
  CheckConfig cfg;
  cfg.trials = trials;
  cfg.gen.seed = seed;
  return cfg;
}

// Keeps only the left branch of the first disjunction.
InferOp dropRight() {
  return liftPointwise("drop-right", [](const State& s) {
    Csp csp = s.csp();
    for (const auto& f : s.csp()) {
      if (f.kind() != Formula::Kind::Or) continue;
      csp.erase(f);
      csp.insert(f.left());
      return StateSet{State::pair(csp, s.subst())};
    }
    return StateSet{s};
  });
}

// Forgets the whole store.
InferOp forgetStore() {
  return liftPointwise("forget", [](const State& s) { return StateSet{State::pair({}, s.subst())}; });
}

const LawReport& find(const std::vector<LawReport>& rs, const std::string& law) {
  for (const auto& r : rs)
    if (r.law == law) return r;
  throw std::logic_error("no report for " + law);
}

}  // namespace

TEST_CASE("identity passes the whole certification suite") {
  const auto reports = checkInfer(constant(identityInfer()), small());
  CHECK_FALSE(anyBlockingFailure(reports));
  for (const auto& r : reports) {
    CAPTURE(r.law);
    CHECK(r.holds());
    CHECK(r.trials == 100);
    CHECK_FALSE(r.heuristicOnly);
  }
}

TEST_CASE("case split is pointwise equivalent on a disjunction") {
  const Algebra fin = swapAlgebra();
  const Oracle o(Universe::full(fin));
  const State s = S({"p(x) \\/ q(x)"}, fin);
  CHECK_FALSE(pointwiseViolation(caseSplitInfer(), StateSet{s}, o).has_value());
  CHECK(naive::equivalent(fin, bigVee(caseSplitInfer().apply(s)), stateFormula(s), naive::domainOf(fin)));
}

TEST_CASE("dropping a branch is caught") {
  const Algebra fin = swapAlgebra();
  const Oracle o(Universe::full(fin));
  const State s = S({"p(x) \\/ q(x)"}, fin);
  CHECK(pointwiseViolation(dropRight(), StateSet{s}, o).has_value());
  CHECK_FALSE(naive::equivalent(fin, bigVee(dropRight().apply(s)), stateFormula(s), naive::domainOf(fin)));
  const LawReport r = checkPointwise(constant(dropRight()), small(200));
  CHECK_FALSE(r.holds());
  REQUIRE_FALSE(r.counterexamples.empty());
  CHECK(r.counterexamples.size() <= LawReport::kMaxCounterexamples);
  CHECK(r.counterexamples[0].input.find("\\/") != std::string::npos);
}

TEST_CASE("regrouping keeps set equivalence and breaks pointwise equivalence") {
  const Algebra z = Algebra::integers();
  const Oracle o(Universe::integerSlice(z, -5, 5), OracleBudget{5, 1 << 16});
  const StateSet pair{S({"x = 1"}, z), S({"x = -1"}, z)};
  const InferOp op = regroupFixture();
  CHECK_FALSE(setEquivalenceViolation(op, pair, o).has_value());
  CHECK(pointwiseViolation(op, pair, o).has_value());
  CHECK(continuityViolation(op, pair).has_value());
  // Independent check: each input state is strictly stronger than the
  // merged output it maps to.
  const auto u = naive::intRange(-5, 5);
  const Formula merged = stateFormula(op.apply(pair)[0]);
  CHECK(naive::equivalent(z, merged, bigVee(pair), u));
  CHECK_FALSE(naive::equivalent(z, merged, stateFormula(pair[0]), u));
}

TEST_CASE("regrouping fails continuity and is excluded from the proposition") {
  const auto reports = checkInfer(constant(regroupFixture()), small());
  CHECK(find(reports, "set-equivalence").holds());
  CHECK_FALSE(find(reports, "pointwise-equivalence").holds());
  const LawReport& cont = find(reports, "continuity");
  CHECK_FALSE(cont.holds());
  CHECK(cont.counters.count("|S|=2") == 1);
  CHECK(find(reports, "equivalence-agreement").trials == 0);
  CHECK(anyBlockingFailure(reports));
}

TEST_CASE("lifted operators are continuous by construction") {
  for (const auto& op : {identityInfer(), caseSplitInfer(), dropRight()}) {
    CAPTURE(op.name());
    CHECK(checkContinuity(constant(op), small()).holds());
  }
}

TEST_CASE("proposition holds for lifted operators, including unsound ones") {
  CHECK(checkProposition1(constant(identityInfer()), small()).holds());
  CHECK(checkProposition1(pipelineFactory("normalize;split"), small(200)).holds());
  const LawReport broken = checkProposition1(constant(dropRight()), small(200));
  CHECK(broken.holds());
  CHECK(broken.counters.count("both verdicts false") == 1);
}

TEST_CASE("renaming a fresh variable commutes with unification") {
  const Algebra h = Algebra::herbrand();
  const Var u = Var::fresh(0), v = Var::fresh(1);
  const State s = State::pair(Csp{Formula::eq(TV("x"), Term::variable(u))}, {});
  const InferOp op = unifyInfer(h);
  CHECK(op.apply(renameEverywhere(s, u, v)) == renameEverywhere(op.apply(s), u, v));
}

TEST_CASE("hard-coding a fresh name breaks the alphabetic law") {
  const Var u0 = Var::fresh(0);
  const InferOp op = liftPointwise("pin-u0", [u0](const State& s) {
    Csp csp = s.csp();
    csp.insert(Formula::eq(Term::variable(u0), Term::variable(u0)));
    return StateSet{State::pair(csp, s.subst())};
  });
  CHECK_FALSE(checkAlphabetic(constant(op), small(200)).holds());
  CHECK(checkAlphabetic(constant(identityInfer()), small()).holds());
}

TEST_CASE("inconsistency condition") {
  const Algebra fin = swapAlgebra();
  CHECK(normalizeInfer(fin).apply(State::pair(Csp{Formula::bot()}, {})).empty());
  CHECK(checkInconsistencyCond(pipelineFactory("normalize"), small()).holds());
  const InferOp nothing = liftPointwise("nothing", [](const State&) { return StateSet{}; });
  CHECK_FALSE(checkInconsistencyCond(constant(nothing), small()).holds());
  const LawReport unify = checkInconsistencyCond(pipelineFactory("unify"), small());
  CHECK(unify.holds());
  CHECK(unify.heuristicOnly);
}

TEST_CASE("unification clashes are unsatisfiable on the bounded universe") {
  const Algebra h = Algebra::herbrand();
  const State s = S({"f(x) = g(y, y)"}, h);
  CHECK(unifyInfer(h).apply(s).empty());
  const Universe u = Universe::herbrandSlice(h, {"a", "b"}, {{"f", 1}, {"g", 2}}, 1);
  CHECK_FALSE(naive::satisfiable(h, stateFormula(s), u.values()));
}

TEST_CASE("error condition") {
  for (const char* spec : {"id", "normalize", "split", "normalize;split", "fix(split,4)"})
    CHECK(checkErrorCond(pipelineFactory(spec), small(10)).holds());
  const InferOp dropsError = InferOp::raw("drop-error", [](const StateSet& s) {
    InferResult r;
    for (const auto& st : s)
      if (!st.isError()) r.states.push(st);
    return r;
  });
  CHECK_FALSE(checkErrorCond(constant(dropsError), small(10)).holds());
  const InferOp addsState = InferOp::raw("adds-state", [](const StateSet& s) {
    InferResult r{s};
    if (s.containsError()) r.states.push(State::pair({}, {}));
    return r;
  });
  CHECK_FALSE(checkErrorCond(constant(addsState), small(10)).holds());
}

TEST_CASE("integer operators are flagged heuristic") {
  const auto reports = checkInfer(pipelineFactory("quadratic"), small(50));
  CHECK(find(reports, "pointwise-equivalence").heuristicOnly);
  CHECK_FALSE(find(reports, "continuity").heuristicOnly);
  CHECK_FALSE(find(reports, "pointwise-equivalence").notes.empty());
}

TEST_CASE("soundness suite catches an unsound operator") {
  SoundnessConfig cfg;
  cfg.check = small(300);
  CHECK(soundnessSuite("normalize;split", cfg).holds());
  const LawReport bad = soundnessSuite(constant(forgetStore()), cfg);
  CHECK_FALSE(bad.holds());
  CHECK_FALSE(preservationSuite(constant(forgetStore()), cfg).holds());
  CHECK_THROWS_AS(soundnessSuite("regroup-fixture", cfg), UsageError);
}

TEST_CASE("contradiction and tautology queries") {
  const Algebra fin = swapAlgebra();
  const auto d = finiteDecider(fin);
  const auto dom = naive::domainOf(fin);
  Evaluator ev(fin, normalizeInfer(fin), *d);
  const StateSet s{empty(), S({"q(y)"}, fin)};
  const Formula contra = F("p(x) /\\ ~p(x)", fin);
  const EvalOutcome o = ev.semEval(s, contra);
  CHECK(consPlus(o.result, *d).empty());
  for (const auto& st : s) CHECK(naive::entails(fin, stateFormula(st), Formula::negate(contra), dom));

  const Formula taut = F("exists x (x = x)", fin);
  const EvalOutcome t = ev.semEval(StateSet{empty()}, taut);
  CHECK_FALSE(t.result.empty());
  for (const auto& st : t.result) CHECK(naive::entails(fin, stateFormula(st), taut, dom));
}

TEST_CASE("preservation counts constructed switches") {
  SoundnessConfig cfg;
  cfg.check = small(300);
  const LawReport r = preservationSuite("normalize;split", cfg);
  CHECK(r.holds());
  CHECK(r.counters.at("constructed disjunction case") >= 10);
  CHECK(r.counters.count("state switch exercised") == 1);
}

TEST_CASE("drop suite") {
  const LawReport r = dropLocalSuite(small(200));
  CHECK(r.holds());
  CHECK(r.skips == 0);
}

TEST_CASE("reports are reproducible and independent of scheduling") {
  CheckConfig serial = small(150, 9);
  serial.execution = Execution::Serial;
  CheckConfig parallel = small(150, 9);
  parallel.execution = Execution::Parallel;
  const auto a = checkInfer(pipelineFactory("normalize;split"), serial);
  const auto b = checkInfer(pipelineFactory("normalize;split"), parallel);
  const auto c = checkInfer(pipelineFactory("normalize;split"), parallel);
  CHECK(toJson(a) == toJson(b));
  CHECK(toJson(b) == toJson(c));
  const auto bad = checkInfer(constant(regroupFixture()), serial);
  CheckConfig badParallel = serial;
  badParallel.execution = Execution::Parallel;
  CHECK(toJson(bad) == toJson(checkInfer(constant(regroupFixture()), badParallel)));
}

TEST_CASE("forEachTrial visits every index once") {
  std::vector<int> hits(1000, 0);
  forEachTrial(hits.size(), Execution::Parallel, [&](std::uint64_t i) { ++hits[i]; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

TEST_CASE("blocking policy") {
  LawReport failing;
  failing.law = "x";
  failing.trials = 10;
  failing.passes = 9;
  CHECK(anyBlockingFailure({failing}));
  failing.blocking = false;
  CHECK_FALSE(anyBlockingFailure({failing}));
  failing.blocking = true;
  failing.heuristicOnly = true;
  CHECK_FALSE(anyBlockingFailure({failing}));

  LawReport skippy;
  skippy.trials = 10;
  skippy.passes = 7;
  skippy.skips = 3;
  CHECK_FALSE(anyBlockingFailure({skippy}));
  CHECK(anyBlockingFailure({skippy}, 0.2));
}

TEST_CASE("random algebras") {
  GenParams p;
  p.seed = 17;
  CHECK(randomAlgebra(p) == randomAlgebra(p));
  p.maxDomainSize = 1;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    p.seed = seed;
    const Algebra a = randomAlgebra(p);
    CHECK(a.domainSize() == 1);
    CHECK(a.signature().functions.size() <= 2);
    CHECK(a.signature().predicates.size() >= 1);
    CHECK(a.signature().predicates.size() <= 2);
  }
  p.maxDomainSize = 5;
  CHECK_THROWS_AS(p.validate(), UsageError);
}

TEST_CASE("generator bounds") {
  GenParams p;
  p.maxCspSize = 2;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng = trialRng(seed, 10);
    const Algebra alg = randomAlgebra(p, rng);
    Generator g(p, alg, Profile::Finite, rng);
    CHECK(g.formula(0).isAtomic());
    const State s = g.state();
    CHECK(s.csp().size() <= 2);
    CHECK(s.subst().size() <= p.maxSubstSize);
    const StateSet ss = g.stateSet();
    CHECK(ss.size() >= 1);
    CHECK(ss.size() <= p.maxStates);
    CHECK_FALSE(ss.containsError());
  }
  GenParams none = p;
  none.maxSubstSize = 0;
  Rng rng = trialRng(0, 11);
  const Algebra alg = randomAlgebra(none, rng);
  Generator g(none, alg, Profile::Finite, rng);
  for (int i = 0; i < 20; ++i) CHECK(g.subst().empty());
}

TEST_CASE("shrinking keeps the failure and drops the rest") {
  const Algebra fin = parseAlgebraSpec("domain: a b c\npred p/1: a b\n");
  ShrinkCase c{fin, StateSet{S({"p(x)", "x = a"}, fin), S({"p(y) \\/ false"}, fin), S({"x = b"}, fin)}};
  const auto hasBot = [](const ShrinkCase& k) {
    for (const auto& s : k.states)
      for (const auto& f : s.csp())
        if (f.kind() == Formula::Kind::Bot) return true;
    return false;
  };
  const ShrinkCase out = shrink(c, hasBot);
  CHECK(hasBot(out));
  CHECK(out.states.size() == 1);
  CHECK(out.states[0].csp() == Csp{Formula::bot()});
  CHECK(out.algebra.domainSize() < 3);
}

TEST_CASE("report formats") {
  const auto reports = checkInfer(constant(regroupFixture()), small(20));
  const std::string table = formatTable(reports);
  CHECK(table.find("FAIL") != std::string::npos);
  CHECK(table.find("excluded") != std::string::npos);
  const auto j = toJson(reports);
  REQUIRE(j.is_array());
  CHECK(j[0]["law"] == "pointwise-equivalence");
  CHECK(j[0].contains("heuristicOnly"));
  CHECK(j[0]["counterexample"].is_object());
  CHECK(j[1]["counterexample"].is_null());
}
