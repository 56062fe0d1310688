#include "soundsearch/lawcheck.hpp"

#include <algorithm>

#include "soundsearch/error.hpp"

#ifdef SOUNDSEARCH_HAVE_OPENMP
#include <omp.h>
#endif

namespace soundsearch {

// ---------------------------------------------------------------------------
// Trial plumbing

void forEachTrial(std::uint64_t n, Execution exec, const std::function<void(std::uint64_t)>& body) {
#ifdef SOUNDSEARCH_HAVE_OPENMP
  if (exec == Execution::Parallel) {
    const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::int64_t i = 0; i < count; ++i) body(static_cast<std::uint64_t>(i));
    return;
  }
#endif
  (void)exec;
  for (std::uint64_t i = 0; i < n; ++i) body(i);
}

OpFactory pipelineFactory(std::string spec) {
  return [spec = std::move(spec)](const Algebra& alg) { return parsePipeline(spec, alg); };
}

Profile profileOf(const InferOp& op) {
  switch (op.algebra()) {
    case OpAlgebra::Integer:
      return Profile::Integer;
    case OpAlgebra::Herbrand:
      return Profile::Herbrand;
    case OpAlgebra::Any:
      break;
  }
  return Profile::Finite;
}

namespace {

Algebra probeAlgebra() {
  return Algebra::finite({"a", "b"}, {}, {{"p", PredicateTable{1, {true, false}}}});
}

// Builds the operator on a stand-in algebra of each kind until one is
// accepted, returning its name and profile.
std::pair<std::string, Profile> describe(const OpFactory& factory) {
  for (const Algebra& alg : {probeAlgebra(), Algebra::integers(), herbrandFixtureAlgebra()}) {
    try {
      InferOp op = factory(alg);
      return {op.name(), profileOf(op)};
    } catch (const UsageError&) {
    }
  }
  throw UsageError("operator cannot be built for any algebra kind");
}

Oracle oracleFor(const Algebra& alg, Profile profile, const CheckConfig& cfg) {
  const OracleBudget slice{5, 1u << 16};
  switch (profile) {
    case Profile::Finite:
      return Oracle(Universe::full(alg));
    case Profile::Integer:
      return Oracle(Universe::integerSlice(alg, cfg.integerLo, cfg.integerHi), slice);
    case Profile::Herbrand:
      return Oracle(Universe::herbrandSlice(alg, {"a", "b"}, {{"f", 1}, {"g", 2}}, cfg.herbrandDepth), slice);
  }
  throw UsageError("unknown profile");
}

enum class Outcome : std::uint8_t { Pass, Vacuous, Fail, Skip };

struct TrialResult {
  Outcome outcome = Outcome::Pass;
  Counterexample cex;
  std::optional<ShrinkCase> shrinkable;
  std::vector<std::string> counters;
};

TrialResult fail(std::string input, std::string output, std::string diagnosis) {
  TrialResult r;
  r.outcome = Outcome::Fail;
  r.cex = {std::move(input), std::move(output), std::move(diagnosis)};
  return r;
}

TrialResult skip(std::string why) {
  TrialResult r;
  r.outcome = Outcome::Skip;
  r.counters.push_back("skip: " + std::move(why));
  return r;
}

std::string oneLine(const std::string& text) {
  std::string out;
  for (char ch : text) {
    if (ch != '\n') out += ch;
    else out += "; ";
  }
  while (out.size() >= 2 && out.ends_with("; ")) out.resize(out.size() - 2);
  return out;
}

using TrialFn = std::function<TrialResult(std::uint64_t index, const InferOp&, World&, Generator&)>;

struct LawSpec {
  std::string law;
  bool heuristicWhenSliced = true;
  bool blocking = true;
};

LawReport runLaw(const LawSpec& spec, const OpFactory& factory, const CheckConfig& cfg, const TrialFn& trial,
                 const std::function<std::optional<std::string>(const ShrinkCase&, const InferOp&, const Oracle&)>* stillFails = nullptr) {
  cfg.gen.validate();
  const auto [name, derived] = describe(factory);
  const Profile profile = cfg.profile.value_or(derived);

  std::vector<TrialResult> results(cfg.trials);
  forEachTrial(cfg.trials, cfg.execution, [&](std::uint64_t i) {
    TrialResult& out = results[i];
    try {
      Rng rng = trialRng(cfg.gen.seed, i);
      World world = makeWorld(cfg, profile, rng);
      InferOp op = factory(world.algebra);
      Generator gen(cfg.gen, world.algebra, profile, rng);
      out = trial(i, op, world, gen);
      if (out.outcome == Outcome::Fail && out.shrinkable) out.shrinkable->algebra = world.algebra;
    } catch (const BudgetExceeded&) {
      out = skip("oracle budget");
    } catch (const EvalError&) {
      out = skip("evaluation error");
    } catch (const std::exception& e) {
      out = fail("", "", std::string("exception: ") + e.what());
    }
  });

  LawReport report;
  report.law = spec.law;
  report.op = name;
  report.trials = cfg.trials;
  report.heuristicOnly = spec.heuristicWhenSliced && profile != Profile::Finite;
  report.blocking = spec.blocking;
  for (auto& r : results) {
    for (const auto& c : r.counters) ++report.counters[c];
    switch (r.outcome) {
      case Outcome::Pass:
        ++report.passes;
        break;
      case Outcome::Vacuous:
        ++report.passes;
        ++report.vacuous;
        break;
      case Outcome::Skip:
        ++report.skips;
        break;
      case Outcome::Fail:
        if (report.counterexamples.size() < LawReport::kMaxCounterexamples) {
          if (stillFails && r.shrinkable) {
            const auto pred = [&](const ShrinkCase& c) {
              try {
                return (*stillFails)(c, factory(c.algebra), oracleFor(c.algebra, profile, cfg)).has_value();
              } catch (const std::exception&) {
                return false;
              }
            };
            const ShrinkCase small = shrink(*r.shrinkable, pred);
            InferOp op = factory(small.algebra);
            r.cex.input = small.states.str();
            r.cex.output = op.apply(small.states).str();
            try {
              if (auto d = (*stillFails)(small, op, oracleFor(small.algebra, profile, cfg))) r.cex.diagnosis = *d;
            } catch (const std::exception&) {
            }
            if (small.algebra.kind() == AlgebraKind::Finite)
              r.cex.diagnosis += " [algebra: " + oneLine(printAlgebraSpec(small.algebra)) + "]";
          }
          report.counterexamples.push_back(std::move(r.cex));
        }
        break;
    }
  }
  if (report.heuristicOnly)
    report.notes.push_back(profile == Profile::Integer ? "checked on the integer slice only"
                                                       : "checked on a bounded Herbrand universe only");
  return report;
}

}  // namespace

World makeWorld(const CheckConfig& cfg, Profile profile, Rng& rng) {
  switch (profile) {
    case Profile::Finite: {
      Algebra alg = cfg.algebra ? *cfg.algebra : randomAlgebra(cfg.gen, rng);
      return World{alg, oracleFor(alg, profile, cfg), profile};
    }
    case Profile::Integer: {
      Algebra alg = Algebra::integers();
      return World{alg, oracleFor(alg, profile, cfg), profile};
    }
    case Profile::Herbrand: {
      Algebra alg = herbrandFixtureAlgebra();
      return World{alg, oracleFor(alg, profile, cfg), profile};
    }
  }
  throw UsageError("unknown profile");
}

// ---------------------------------------------------------------------------
// Verdicts

namespace {

StateSet applyChecked(const InferOp& op, const StateSet& s) {
  StateSet out = op.apply(s);
  if (out.containsError() && !s.containsError()) throw EvalError("operator produced the error state");
  return out;
}

}  // namespace

std::optional<std::string> pointwiseViolation(const InferOp& op, const StateSet& s, const Oracle& oracle) {
  for (const auto& st : s) {
    const StateSet out = applyChecked(op, StateSet{st});
    if (!oracle.equivalent(bigVee(out), stateFormula(st)))
      return "state " + st.str() + " is not equivalent to its successors " + out.str();
  }
  const StateSet out = applyChecked(op, s);
  for (const auto& t : out) {
    const Formula ft = stateFormula(t);
    bool ancestor = false;
    for (const auto& st : s)
      if (oracle.entails(ft, stateFormula(st))) {
        ancestor = true;
        break;
      }
    if (!ancestor) return "output state " + t.str() + " entails no single input state";
  }
  for (const auto& st : s) {
    const Formula fs = stateFormula(st);
    std::vector<Formula> desc;
    for (const auto& t : out)
      if (oracle.entails(stateFormula(t), fs)) desc.push_back(stateFormula(t));
    if (!oracle.equivalent(Formula::disjunction(desc), fs))
      return "input state " + st.str() + " is not the disjunction of its descendants";
  }
  return std::nullopt;
}

std::optional<std::string> setEquivalenceViolation(const InferOp& op, const StateSet& s, const Oracle& oracle) {
  const StateSet out = applyChecked(op, s);
  if (!oracle.equivalent(bigVee(out), bigVee(s))) return "disjunction of the output differs from the input";
  return std::nullopt;
}

std::optional<std::string> continuityViolation(const InferOp& op, const StateSet& s) {
  const StateSet whole = op.apply(s);
  StateSet pieces;
  for (const auto& st : s) pieces.append(op.apply(StateSet{st}));
  if (!sameMembers(whole, pieces))
    return "apply(S) = " + whole.str() + " but the union of singleton applications is " + pieces.str();
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Condition suite

namespace {

using SetPredicate = std::function<std::optional<std::string>(const ShrinkCase&, const InferOp&, const Oracle&)>;

TrialResult setTrial(const StateSet& s, const InferOp& op, const std::optional<std::string>& violation) {
  if (!violation) return {};
  TrialResult r = fail(s.str(), op.apply(s).str(), *violation);
  r.shrinkable = ShrinkCase{Algebra::integers(), s};
  return r;
}

}  // namespace

LawReport checkPointwise(const OpFactory& factory, const CheckConfig& cfg) {
  const SetPredicate pred = [](const ShrinkCase& c, const InferOp& op, const Oracle& o) {
    return pointwiseViolation(op, c.states, o);
  };
  return runLaw(
      {"pointwise-equivalence"}, factory, cfg,
      [](std::uint64_t, const InferOp& op, World& w, Generator& g) {
        const StateSet s = g.stateSet();
        return setTrial(s, op, pointwiseViolation(op, s, w.oracle));
      },
      &pred);
}

LawReport checkSetEquivalence(const OpFactory& factory, const CheckConfig& cfg) {
  const SetPredicate pred = [](const ShrinkCase& c, const InferOp& op, const Oracle& o) {
    return setEquivalenceViolation(op, c.states, o);
  };
  return runLaw(
      {"set-equivalence"}, factory, cfg,
      [](std::uint64_t, const InferOp& op, World& w, Generator& g) {
        const StateSet s = g.stateSet();
        return setTrial(s, op, setEquivalenceViolation(op, s, w.oracle));
      },
      &pred);
}

LawReport checkContinuity(const OpFactory& factory, const CheckConfig& cfg) {
  const SetPredicate pred = [](const ShrinkCase& c, const InferOp& op, const Oracle&) {
    return continuityViolation(op, c.states);
  };
  LawReport r = runLaw(
      {"continuity", false}, factory, cfg,
      [](std::uint64_t, const InferOp& op, World&, Generator& g) {
        const StateSet s = g.stateSet();
        TrialResult t = setTrial(s, op, continuityViolation(op, s));
        t.counters.push_back("|S|=" + std::to_string(s.size()));
        return t;
      },
      &pred);
  return r;
}

LawReport checkProposition1(const OpFactory& factory, const CheckConfig& cfg) {
  return runLaw({"equivalence-agreement"}, factory, cfg, [](std::uint64_t, const InferOp& op, World& w, Generator& g) {
    const StateSet s = g.stateSet();
    if (continuityViolation(op, s)) return skip("continuity fails on this input");
    bool setEq = !setEquivalenceViolation(op, s, w.oracle);
    for (const auto& st : s) setEq = setEq && !setEquivalenceViolation(op, StateSet{st}, w.oracle);
    const auto pw = pointwiseViolation(op, s, w.oracle);
    TrialResult t;
    t.counters.push_back(setEq ? "both verdicts true" : "both verdicts false");
    if (setEq != !pw) {
      return fail(s.str(), op.apply(s).str(),
                  std::string("set equivalence says ") + (setEq ? "true" : "false") + ", pointwise says " +
                      (pw ? "false: " + *pw : "true"));
    }
    return t;
  });
}

namespace {

// A user variable of the state to turn into a fresh one, if any.
std::optional<Var> someUserVar(const State& s, Generator& g) {
  std::vector<Var> users;
  for (const auto& v : stateVars(s))
    if (!v.isFresh()) users.push_back(v);
  if (users.empty()) return std::nullopt;
  return users[g.below(users.size())];
}

TrialResult renameTrial(const InferOp& op, const State& s, const Var& u, const Var& v) {
  const StateSet lhs = op.apply(StateSet{renameEverywhere(s, u, v)});
  const StateSet out = op.apply(StateSet{s});
  for (const auto& t : out)
    if (stateVars(t).count(v))
      return fail(s.str(), out.str(), "output mentions the replacement variable " + v.str());
  const StateSet rhs = renameEverywhere(out, u, v);
  if (!sameMembers(lhs, rhs))
    return fail(s.str(), out.str(),
                "renaming " + u.str() + " to " + v.str() + " before gives " + lhs.str() + ", after gives " +
                    rhs.str());
  return {};
}

}  // namespace

LawReport checkAlphabetic(const OpFactory& factory, const CheckConfig& cfg) {
  LawReport r = runLaw(
      {"alphabetic", false}, factory, cfg, [](std::uint64_t, const InferOp& op, World&, Generator& g) {
        State s = g.state();
        for (int tries = 0; tries < 8 && !someUserVar(s, g); ++tries) s = g.state();
        const auto x = someUserVar(s, g);
        if (!x) return skip("no variable to rename");
        const Var u = Var::fresh(g.below(4));
        const Var v = Var::fresh(4 + g.below(4));
        return renameTrial(op, renameEverywhere(s, *x, u), u, v);
      });
  r.notes.push_back("tested as rename-commutation; the closure form is implied for deterministic operators");
  return r;
}

LawReport checkAlphabeticUser(const OpFactory& factory, const CheckConfig& cfg) {
  return runLaw({"alphabetic-user", false, false}, factory, cfg,
                [](std::uint64_t, const InferOp& op, World&, Generator& g) {
                  State s = g.state();
                  for (int tries = 0; tries < 8 && !someUserVar(s, g); ++tries) s = g.state();
                  const auto x = someUserVar(s, g);
                  if (!x) return skip("no variable to rename");
                  return renameTrial(op, s, *x, Var::user("v"));
                });
}

LawReport checkInconsistencyCond(const OpFactory& factory, const CheckConfig& cfg, InconsistencyMode mode) {
  const bool strict = mode == InconsistencyMode::Strict;
  return runLaw({strict ? "inconsistency" : "inconsistency-consplus", true, strict}, factory, cfg,
                [strict](std::uint64_t, const InferOp& op, World& w, Generator& g) {
                  const State s = g.state();
                  const StateSet out = op.apply(StateSet{s});
                  bool empty = out.empty();
                  if (!strict) {
                    OracleDecider d(w.oracle);
                    empty = consPlus(out, d).empty();
                  }
                  if (!empty) {
                    TrialResult t;
                    t.outcome = Outcome::Vacuous;
                    return t;
                  }
                  TrialResult t;
                  t.counters.push_back("empty output");
                  if (w.oracle.satisfiable(stateFormula(s)))
                    return fail(s.str(), out.str(), "operator gave no consistent state for a satisfiable state");
                  return t;
                });
}

LawReport checkErrorCond(const OpFactory& factory, const CheckConfig& cfg) {
  return runLaw({"error", false}, factory, cfg, [](std::uint64_t i, const InferOp& op, World&, Generator& g) {
    if (i == 0) {
      const StateSet out = op.apply(StateSet{State::error()});
      if (!(out == StateSet{State::error()}))
        return fail("[<error>]", out.str(), "the error state must map to exactly {error}");
      return TrialResult{};
    }
    StateSet s = g.stateSet();
    s.push(State::error());
    const StateSet out = op.apply(s);
    if (!out.containsError()) return fail(s.str(), out.str(), "the error state was dropped");
    return TrialResult{};
  });
}

std::vector<LawReport> checkInfer(const OpFactory& factory, const CheckConfig& cfg) {
  std::vector<LawReport> out;
  out.push_back(checkPointwise(factory, cfg));
  out.push_back(checkSetEquivalence(factory, cfg));
  out.push_back(checkContinuity(factory, cfg));
  if (out.back().holds()) {
    out.push_back(checkProposition1(factory, cfg));
  } else {
    LawReport gated;
    gated.law = "equivalence-agreement";
    gated.op = out.back().op;
    gated.notes.push_back("excluded: the operator is not continuous");
    out.push_back(gated);
  }
  out.push_back(checkAlphabetic(factory, cfg));
  out.push_back(checkAlphabeticUser(factory, cfg));
  out.push_back(checkInconsistencyCond(factory, cfg, InconsistencyMode::Strict));
  out.push_back(checkInconsistencyCond(factory, cfg, InconsistencyMode::ConsPlus));
  out.push_back(checkErrorCond(factory, cfg));
  return out;
}

bool anyBlockingFailure(const std::vector<LawReport>& reports, double maxSkipRate) {
  for (const auto& r : reports) {
    if (!r.blocking || r.heuristicOnly) continue;
    if (!r.holds() || r.skipRate() > maxSkipRate) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Soundness and preservation

namespace {

CheckConfig finiteOnly(const CheckConfig& cfg) {
  CheckConfig c = cfg;
  c.profile = Profile::Finite;
  return c;
}

void requireFinite(const OpFactory& factory) {
  const auto [name, profile] = describe(factory);
  if (profile != Profile::Finite || !factory(probeAlgebra()).isLifted())
    throw UsageError("soundness trials need a lifted operator certified on finite algebras, not " + name);
}

}  // namespace

LawReport soundnessSuite(const std::string& pipeline, const SoundnessConfig& cfg) {
  LawReport r = soundnessSuite(pipelineFactory(pipeline), cfg);
  r.op = pipeline;
  return r;
}

LawReport soundnessSuite(const OpFactory& factory, const SoundnessConfig& cfg) {
  requireFinite(factory);
  LawReport r = runLaw({"soundness"}, factory, finiteOnly(cfg.check),
                       [&cfg](std::uint64_t, const InferOp& op, World& w, Generator& g) {
                         const StateSet s = g.stateSet();
                         const Formula phi = g.formula(cfg.formulaDepth);
                         OracleDecider decider(w.oracle);
                         Evaluator ev(w.algebra, op, decider, cfg.limits);
                         const EvalOutcome o = ev.semEval(s, phi);
                         if (o.truncated) return skip("truncated");
                         if (o.result.containsError()) return skip("error state");
                         const std::string in = s.str() + " with " + phi.str();
                         for (const auto& t : o.result)
                           if (!w.oracle.entails(stateFormula(t), phi))
                             return fail(in, o.result.str(), "part (i): " + t.str() + " does not entail the formula");
                         TrialResult ok;
                         if (consPlus(o.result, decider).empty()) {
                           ok.counters.push_back("part (ii) premise holds");
                           for (const auto& st : s)
                             if (!w.oracle.entails(stateFormula(st), Formula::negate(phi)))
                               return fail(in, o.result.str(),
                                           "part (ii): " + st.str() + " does not entail the negation");
                         }
                         return ok;
                       });
  return r;
}

namespace {

// The first state (in order) consistent with extra, if any.
std::optional<std::size_t> firstWitness(const StateSet& r, const Formula& extra, const Oracle& o) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!r[i].isError() && o.satisfiable(Formula::conj(stateFormula(r[i]), extra))) return i;
  return std::nullopt;
}

}  // namespace

LawReport preservationSuite(const std::string& pipeline, const SoundnessConfig& cfg) {
  LawReport r = preservationSuite(pipelineFactory(pipeline), cfg);
  r.op = pipeline;
  return r;
}

LawReport preservationSuite(const OpFactory& factory, const SoundnessConfig& cfg) {
  requireFinite(factory);
  LawReport r = runLaw(
      {"preservation"}, factory, finiteOnly(cfg.check),
      [&cfg](std::uint64_t index, const InferOp& op, World& w, Generator& g) {
        const State s = g.state();
        const Formula sf = stateFormula(s);
        Formula phi1 = Formula::top();
        Formula phi2 = Formula::top();
        bool constructed = index % 10 == 0;
        if (constructed) {
          // Find A, B with s /\ A and s /\ ~A /\ B both satisfiable.
          constructed = false;
          for (int tries = 0; tries < 30 && !constructed; ++tries) {
            const Formula a = g.atom();
            const Formula b = g.atom();
            if (w.oracle.satisfiable(Formula::conj(sf, a)) &&
                w.oracle.satisfiable(Formula::conj(sf, Formula::conj(Formula::negate(a), b)))) {
              phi1 = Formula::negate(a);
              phi2 = Formula::disj(a, b);
              constructed = true;
            }
          }
        }
        if (!constructed) {
          phi1 = g.formula(2);
          phi2 = g.formula(3);
        }
        OracleDecider decider(w.oracle);
        Evaluator ev(w.algebra, op, decider, cfg.limits);
        const EvalOutcome o = ev.semEval(StateSet{s}, phi2);
        if (o.truncated) return skip("truncated");
        if (o.result.containsError()) return skip("error state");
        const std::string in = s.str() + " with " + phi1.str() + " and " + phi2.str();
        TrialResult ok;
        if (constructed) ok.counters.push_back("constructed disjunction case");
        if (w.oracle.entails(sf, phi1)) {
          ok.counters.push_back("validity premise holds");
          for (const auto& t : o.result)
            if (!w.oracle.entails(stateFormula(t), phi1))
              return fail(in, o.result.str(), "validity: " + t.str() + " lost the first formula");
        }
        const Formula both = Formula::conj(phi1, phi2);
        const bool premise = w.oracle.satisfiable(Formula::conj(sf, both)) &&
                             firstWitness(o.result, Formula::top(), w.oracle).has_value();
        if (premise) {
          ok.counters.push_back("consistency premise holds");
          const auto witness = firstWitness(o.result, both, w.oracle);
          if (!witness) return fail(in, o.result.str(), "consistency: no result state is consistent with both formulas");
          if (*witness != *firstWitness(o.result, Formula::top(), w.oracle))
            ok.counters.push_back("state switch exercised");
        }
        return ok;
      });
  return r;
}

LawReport dropLocalSuite(const CheckConfig& cfg) {
  const OpFactory factory = [](const Algebra&) { return identityInfer(); };
  LawReport r = runLaw({"drop-local"}, factory, finiteOnly(cfg), [](std::uint64_t, const InferOp&, World& w, Generator& g) {
    const Var u = Var::fresh(0);
    std::vector<Formula> cs;
    const std::size_t n = 1 + g.below(2);
    for (std::size_t i = 0; i < n; ++i) {
      Formula c = g.constraint();
      const auto fv = freeVars(c);
      if (!fv.empty() && g.chance(0.8)) {
        std::vector<Var> vs(fv.begin(), fv.end());
        c = substVar(c, vs[g.below(vs.size())], u);
      }
      cs.push_back(c);
    }
    if (std::none_of(cs.begin(), cs.end(), [&](const Formula& c) { return occurs(c, u); }))
      cs.push_back(Formula::eq(Term::variable(u), Term::literal(g.value())));
    Substitution theta = g.subst();
    if (g.chance(0.5)) theta.bind(u, g.chance(0.5) ? Term::literal(g.value()) : Term::variable(g.var()));
    const State s = State::pair(Csp(std::move(cs)), std::move(theta));
    const State d = dropLocal(u, s);
    if (!w.oracle.equivalent(stateFormula(d), Formula::exists(u, stateFormula(s))))
      return fail(s.str(), d.str(), "dropLocal result is not equivalent to the existential closure");
    return TrialResult{};
  });
  r.op = "dropLocal";
  return r;
}

// ---------------------------------------------------------------------------
// Shrinking

namespace {

std::vector<Formula> subformulas(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Not:
    case K::Exists:
      return {f.sub()};
    case K::And:
    case K::Or:
      return {f.left(), f.right()};
    default:
      return {};
  }
}

bool fits(const StateSet& states, const Algebra& alg) {
  try {
    for (const auto& st : states)
      if (!st.isError()) checkWellFormed(stateFormula(st), alg);
  } catch (const SymbolError&) {
    return false;
  }
  return true;
}

std::vector<ShrinkCase> candidates(const ShrinkCase& c) {
  std::vector<ShrinkCase> out;
  const auto& states = c.states.states();
  auto with = [&](std::size_t i, const std::optional<State>& replacement) {
    StateSet s;
    for (std::size_t j = 0; j < states.size(); ++j) {
      if (j != i) s.push(states[j]);
      else if (replacement) s.push(*replacement);
    }
    return ShrinkCase{c.algebra, std::move(s)};
  };
  if (states.size() > 1)
    for (std::size_t i = 0; i < states.size(); ++i) out.push_back(with(i, std::nullopt));
  for (std::size_t i = 0; i < states.size(); ++i) {
    const State& st = states[i];
    if (st.isError()) continue;
    for (const auto& f : st.csp()) {
      Csp smaller = st.csp();
      smaller.erase(f);
      out.push_back(with(i, State::pair(smaller, st.subst())));
      for (const auto& sub : subformulas(f)) {
        Csp replaced = smaller;
        replaced.insert(sub);
        out.push_back(with(i, State::pair(replaced, st.subst())));
      }
    }
    for (const auto& [x, t] : st.subst().bindings()) {
      Substitution theta = st.subst();
      theta.unbind(x);
      out.push_back(with(i, State::pair(st.csp(), theta)));
    }
  }
  if (c.algebra.kind() == AlgebraKind::Finite && c.algebra.domainSize() > 1) {
    for (std::uint32_t drop = 0; drop < c.algebra.domainSize(); ++drop) {
      std::vector<std::uint32_t> keep;
      for (std::uint32_t k = 0; k < c.algebra.domainSize(); ++k)
        if (k != drop) keep.push_back(k);
      if (auto sub = c.algebra.restrictTo(keep); sub && fits(c.states, *sub)) out.push_back(ShrinkCase{*sub, c.states});
    }
  }
  return out;
}

}  // namespace

ShrinkCase shrink(ShrinkCase c, const std::function<bool(const ShrinkCase&)>& fails, std::size_t maxSteps) {
  for (std::size_t step = 0; step < maxSteps; ++step) {
    bool progressed = false;
    for (auto& cand : candidates(c)) {
      if (fails(cand)) {
        c = std::move(cand);
        progressed = true;
        break;
      }
    }
    if (!progressed) break;
  }
  return c;
}

}  // namespace soundsearch
