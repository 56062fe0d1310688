#pragma once

#include <cstdint>
#include <vector>

#include "soundsearch/algebra.hpp"
#include "soundsearch/decider.hpp"
#include "soundsearch/infer.hpp"
#include "soundsearch/state.hpp"
#include "soundsearch/syntax.hpp"

namespace soundsearch {

struct EvalLimits {
  // Maximum nesting of clause applications.
  std::size_t maxDepth = 512;
  // Maximum size of any intermediate state set.
  std::size_t maxStates = 4096;
};

struct EvalStats {
  std::uint64_t inferCalls = 0;
  // Infer applications that returned more than one state.
  std::uint64_t splits = 0;
  std::uint64_t oracleCalls = 0;
};

struct EvalOutcome {
  StateSet result;
  EvalStats stats;
  // A limit fired or a bounded fixpoint did not converge; the result is
  // partial.
  bool truncated = false;
};

/// Evaluates formulas over state sets with a pluggable infer operator.
/// One evaluator is one logical thread: it owns the fresh-variable supply.
class Evaluator {
 public:
  Evaluator(Algebra alg, InferOp infer, const Decider& decider, EvalLimits limits = {},
            FreshSupply supply = FreshSupply{});

  StateSet semEvalState(const State& s, const Formula& f);
  EvalOutcome semEval(const StateSet& s, const Formula& f);

  const EvalStats& stats() const { return stats_; }
  bool truncated() const { return truncated_; }
  const FreshSupply& supply() const { return supply_; }

 private:
  StateSet eval(const State& s, const Formula& f, std::size_t depth);
  StateSet evalSet(const StateSet& s, const Formula& f, std::size_t depth);
  StateSet infer(const State& s);
  StateSet consPlusCounted(const StateSet& s);
  void cap(StateSet& s);
  void reserveFresh(const StateSet& s, const Formula& f);

  Algebra alg_;
  InferOp infer_;
  const Decider& decider_;
  EvalLimits limits_;
  FreshSupply supply_;
  EvalStats stats_;
  bool truncated_ = false;
};

struct Answer {
  Substitution subst;
  Csp residual;
};

struct Answers {
  std::vector<Answer> answers;
  bool sawError = false;
};

/// Pair states of the outcome that the decider does not rule out, in order.
Answers answers(const EvalOutcome& outcome, const Decider& decider);

}  // namespace soundsearch
