#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "soundsearch/algebra.hpp"
#include "soundsearch/state.hpp"

namespace soundsearch {

using Rational = boost::multiprecision::cpp_rational;

struct InferResult {
  StateSet states;
  // False when a bounded iteration stopped before reaching a fixpoint.
  bool converged = true;
};

// Which algebra kind an operator's rewrites are valid for.
enum class OpAlgebra : std::uint8_t { Any, Integer, Herbrand };

/// An infer operator: a map from state sets to state sets. Operators built
/// by liftPointwise also carry their per-state core and are continuous by
/// construction.
class InferOp {
 public:
  using SetFn = std::function<InferResult(const StateSet&)>;
  using CoreFn = std::function<InferResult(const State&)>;

  // An operator acting on whole sets, with no continuity guarantee.
  static InferOp raw(std::string name, SetFn fn, OpAlgebra algebra = OpAlgebra::Any);
  static InferOp lifted(std::string name, CoreFn core, OpAlgebra algebra = OpAlgebra::Any);

  const std::string& name() const { return name_; }
  OpAlgebra algebra() const { return algebra_; }
  bool isLifted() const { return static_cast<bool>(core_); }
  // Present iff isLifted().
  const CoreFn& pointwiseCore() const { return core_; }

  InferResult run(const StateSet& s) const;
  StateSet apply(const StateSet& s) const { return run(s).states; }
  StateSet apply(const State& s) const { return run(StateSet{s}).states; }

 private:
  InferOp() = default;

  std::string name_;
  OpAlgebra algebra_ = OpAlgebra::Any;
  SetFn set_;
  CoreFn core_;
};

/// Lifts a per-state function. The error state is mapped to {error} without
/// calling pw, and an EvalError thrown by pw turns the state into error.
InferOp liftPointwise(std::string name, std::function<StateSet(const State&)> pw,
                      OpAlgebra algebra = OpAlgebra::Any);

InferOp identityInfer();
/// Applies the substitution to every constraint, drops constraints that are
/// ground and true, maps a state with a ground false constraint to nothing,
/// and moves solved equations x = v (x unbound, v a value) into the
/// substitution until none remain.
InferOp normalizeInfer(const Algebra& alg);
/// Robinson unification with occurs check over the equations of the store
/// and the substitution (Herbrand algebra).
InferOp unifyInfer(const Algebra& alg);
/// Rewrites x*x = k and pow(x,2) = k over the integers.
InferOp quadraticInfer(const Algebra& alg);
/// Splits the first disjunctive constraint in canonical order.
InferOp caseSplitInfer();

enum class Ranking : std::uint8_t { Value, Negated, Order, Constant };

std::optional<Ranking> parseRanking(std::string_view name);
std::string_view rankingName(Ranking r);

/// Splits the first in(x, D) constraint with |D| >= 2 into a promising part
/// (score >= threshold, or the top half by score when no threshold is given)
/// followed by the rest.
InferOp domainSplitInfer(const Algebra& alg, Ranking ranking, std::optional<Rational> threshold);

InferOp composeInfer(const InferOp& first, const InferOp& second);
/// Repeats op until the set stops changing or maxRounds applications have
/// been made; the result reports whether it converged.
InferOp fixpointInfer(const InferOp& op, unsigned maxRounds);

/// Negative fixture: merges pair states that share a substitution into one
/// state holding the disjunction of their stores. Equivalent on whole sets,
/// not pointwise, and not continuous.
InferOp regroupFixture();

/// Parses a pipeline such as `quadratic;split;normalize`,
/// `fix(split;normalize,8)` or `domsplit(rank=value,thr=3)`.
InferOp parsePipeline(std::string_view text, const Algebra& alg);

}  // namespace soundsearch
