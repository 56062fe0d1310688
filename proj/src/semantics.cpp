#include "soundsearch/semantics.hpp"

#include "soundsearch/error.hpp"

namespace soundsearch {

Evaluator::Evaluator(Algebra alg, InferOp infer, const Decider& decider, EvalLimits limits,
                     FreshSupply supply)
    : alg_(std::move(alg)), infer_(std::move(infer)), decider_(decider), limits_(limits), supply_(supply) {
  if (limits_.maxDepth == 0 || limits_.maxStates == 0) throw UsageError("evaluation limits must be positive");
}

EvalOutcome Evaluator::semEval(const StateSet& s, const Formula& f) {
  reserveFresh(s, f);
  const EvalStats before = stats_;
  const bool truncatedBefore = truncated_;
  truncated_ = false;
  EvalOutcome out;
  out.result = evalSet(s, f, 0);
  out.truncated = truncated_;
  out.stats.inferCalls = stats_.inferCalls - before.inferCalls;
  out.stats.splits = stats_.splits - before.splits;
  out.stats.oracleCalls = stats_.oracleCalls - before.oracleCalls;
  truncated_ = truncated_ || truncatedBefore;
  return out;
}

StateSet Evaluator::semEvalState(const State& s, const Formula& f) {
  reserveFresh(StateSet{s}, f);
  return eval(s, f, 0);
}

void Evaluator::reserveFresh(const StateSet& s, const Formula& f) {
  std::uint64_t next = supply_.peek();
  auto bump = [&](const Var& v) {
    if (v.isFresh() && v.index() >= next) next = v.index() + 1;
  };
  for (const auto& v : allVars(f)) bump(v);
  for (const auto& st : s)
    for (const auto& v : stateVars(st)) bump(v);
  if (next != supply_.peek()) supply_ = FreshSupply(next);
}

StateSet Evaluator::infer(const State& s) {
  ++stats_.inferCalls;
  InferResult r;
  try {
    r = infer_.run(StateSet{s});
  } catch (const EvalError&) {
    r.states = StateSet{State::error()};
  }
  if (!r.converged) truncated_ = true;
  if (r.states.size() > 1) ++stats_.splits;
  cap(r.states);
  return std::move(r.states);
}

StateSet Evaluator::consPlusCounted(const StateSet& s) {
  for (const auto& st : s)
    if (!st.isError()) ++stats_.oracleCalls;
  return consPlus(s, decider_);
}

void Evaluator::cap(StateSet& s) {
  if (s.size() <= limits_.maxStates) return;
  truncated_ = true;
  StateSet kept;
  for (std::size_t i = 0; i < limits_.maxStates; ++i) kept.push(s[i]);
  s = std::move(kept);
}

StateSet Evaluator::evalSet(const StateSet& s, const Formula& f, std::size_t depth) {
  StateSet out;
  for (const auto& st : s) {
    out.append(eval(st, f, depth));
    cap(out);
  }
  return out;
}

StateSet Evaluator::eval(const State& s, const Formula& f, std::size_t depth) {
  if (s.isError()) return StateSet{s};
  if (depth >= limits_.maxDepth) {
    truncated_ = true;
    return {};
  }
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::Eq:
    case K::Bot:
    case K::Top: {
      Csp csp = s.csp();
      csp.insert(f);
      return infer(State::pair(std::move(csp), s.subst()));
    }
    case K::Or: {
      StateSet out = eval(s, f.left(), depth + 1);
      out.append(eval(s, f.right(), depth + 1));
      cap(out);
      return out;
    }
    case K::And:
      return evalSet(eval(s, f.left(), depth + 1), f.right(), depth + 1);
    case K::Not: {
      const StateSet r = eval(s, f.sub(), depth + 1);
      const StateSet plus = consPlusCounted(r);
      if (plus.empty()) return infer(s);
      for (const auto& t : plus) {
        if (t.isError()) continue;
        ++stats_.oracleCalls;
        if (decider_.areEquivalent(t, s) == Verdict::DefinitelyTrue) return {};
      }
      Csp csp = s.csp();
      csp.insert(f);
      return infer(State::pair(std::move(csp), s.subst()));
    }
    case K::Exists: {
      const Var u = supply_.draw();
      const StateSet r = consPlusCounted(eval(s, substVar(f.sub(), f.bound(), u), depth + 1));
      StateSet out;
      for (const auto& sigma : r) {
        out.append(infer(dropLocal(u, sigma)));
        cap(out);
      }
      return out;
    }
  }
  return {};
}

Answers answers(const EvalOutcome& outcome, const Decider& decider) {
  Answers out;
  out.sawError = outcome.result.containsError();
  for (const auto& s : consPlus(outcome.result, decider)) {
    if (s.isError()) continue;
    out.answers.push_back({s.subst(), s.csp()});
  }
  return out;
}

}  // namespace soundsearch
