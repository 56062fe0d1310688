#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soundsearch/generate.hpp"
#include "soundsearch/infer.hpp"
#include "soundsearch/oracle.hpp"
#include "soundsearch/semantics.hpp"

namespace soundsearch {

struct Counterexample {
  std::string input;
  std::string output;
  std::string diagnosis;
};

struct LawReport {
  std::string law;
  std::string op;
  std::uint64_t trials = 0;
  std::uint64_t passes = 0;
  std::uint64_t skips = 0;
  // Trials where the law's premise did not apply (counted as passes).
  std::uint64_t vacuous = 0;
  bool heuristicOnly = false;
  // Informational laws never fail a run.
  bool blocking = true;
  std::vector<Counterexample> counterexamples;
  std::vector<std::string> notes;
  // Free-form counters, e.g. state-set size distribution.
  std::map<std::string, std::uint64_t> counters;

  static constexpr std::size_t kMaxCounterexamples = 5;

  std::uint64_t failures() const { return trials - passes - skips; }
  double skipRate() const { return trials ? static_cast<double>(skips) / static_cast<double>(trials) : 0.0; }
  bool holds() const { return failures() == 0; }
};

enum class Execution : std::uint8_t { Serial, Parallel };

// Builds the operator under test for the algebra of one trial.
using OpFactory = std::function<InferOp(const Algebra&)>;

OpFactory pipelineFactory(std::string spec);

struct CheckConfig {
  GenParams gen;
  std::uint64_t trials = 500;
  Execution execution = Execution::Parallel;
  // Profile of the generated algebras; derived from the operator when unset.
  std::optional<Profile> profile;
  // Herbrand slices are quantifier-free and ground terms reach depth 1.
  unsigned herbrandDepth = 1;
  long integerLo = -5;
  long integerHi = 5;
  // Finite trials use this algebra instead of a random one when set.
  std::optional<Algebra> algebra;
};

// Profile an operator's rewrites are certified on.
Profile profileOf(const InferOp& op);

/// One trial's environment: an algebra and an oracle over it.
struct World {
  Algebra algebra;
  Oracle oracle;
  Profile profile;
};

World makeWorld(const CheckConfig& cfg, Profile profile, Rng& rng);

// Verdicts on one input. Return a diagnosis on failure, nullopt on success.
// They throw BudgetExceeded or EvalError when the oracle cannot decide.
std::optional<std::string> pointwiseViolation(const InferOp& op, const StateSet& s, const Oracle& oracle);
std::optional<std::string> setEquivalenceViolation(const InferOp& op, const StateSet& s, const Oracle& oracle);
std::optional<std::string> continuityViolation(const InferOp& op, const StateSet& s);

enum class InconsistencyMode : std::uint8_t { Strict, ConsPlus };

LawReport checkPointwise(const OpFactory& op, const CheckConfig& cfg);
LawReport checkSetEquivalence(const OpFactory& op, const CheckConfig& cfg);
LawReport checkContinuity(const OpFactory& op, const CheckConfig& cfg);
LawReport checkProposition1(const OpFactory& op, const CheckConfig& cfg);
LawReport checkAlphabetic(const OpFactory& op, const CheckConfig& cfg);
// Renames user variables instead of fresh ones; informational.
LawReport checkAlphabeticUser(const OpFactory& op, const CheckConfig& cfg);
LawReport checkInconsistencyCond(const OpFactory& op, const CheckConfig& cfg,
                                 InconsistencyMode mode = InconsistencyMode::Strict);
LawReport checkErrorCond(const OpFactory& op, const CheckConfig& cfg);

// The full certification suite in a fixed order.
std::vector<LawReport> checkInfer(const OpFactory& op, const CheckConfig& cfg);

struct SoundnessConfig {
  CheckConfig check;
  std::size_t formulaDepth = 4;
  EvalLimits limits;
  double maxSkipRate = 0.2;
};

/// Random S and formula on a random finite algebra with the exact decider:
/// every output state entails the formula, and an output with no consistent
/// state means every input state entails its negation.
LawReport soundnessSuite(const std::string& pipeline, const SoundnessConfig& cfg);
LawReport soundnessSuite(const OpFactory& op, const SoundnessConfig& cfg);

/// Validity and consistency preservation on random states and formula
/// pairs; roughly one trial in ten is a constructed A \/ B case where only
/// the right branch is consistent with the first formula.
LawReport preservationSuite(const std::string& pipeline, const SoundnessConfig& cfg);
LawReport preservationSuite(const OpFactory& op, const SoundnessConfig& cfg);

/// stateFormula(dropLocal(u, s)) is equivalent to exists u stateFormula(s)
/// on random small states in which the fresh u occurs in the store and
/// possibly in the domain of the substitution.
LawReport dropLocalSuite(const CheckConfig& cfg);

// True when the report set should make a command exit nonzero.
bool anyBlockingFailure(const std::vector<LawReport>& reports, double maxSkipRate = 1.0);

/// Greedy counterexample minimization. Candidates drop states, constraints
/// and bindings, replace a constraint by a subformula, and remove a domain
/// element when the result is still an algebra.
struct ShrinkCase {
  Algebra algebra;
  StateSet states;
};
ShrinkCase shrink(ShrinkCase c, const std::function<bool(const ShrinkCase&)>& fails,
                  std::size_t maxSteps = 200);

/// Calls body(i) for every i in [0, n), in parallel when exec is Parallel
/// and OpenMP is available. Bodies must only write to slot i of their
/// output.
void forEachTrial(std::uint64_t n, Execution exec, const std::function<void(std::uint64_t)>& body);

}  // namespace soundsearch
