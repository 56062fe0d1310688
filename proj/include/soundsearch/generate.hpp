#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "soundsearch/algebra.hpp"
#include "soundsearch/state.hpp"
#include "soundsearch/syntax.hpp"

namespace soundsearch {

struct GenParams {
  std::size_t maxFormulaDepth = 3;
  std::size_t maxArity = 2;
  std::size_t maxDomainSize = 3;
  std::size_t maxCspSize = 2;
  std::size_t maxSubstSize = 2;
  std::size_t maxStates = 3;
  std::size_t maxVars = 3;
  std::uint64_t seed = 0;

  // Throws UsageError unless 1 <= maxDomainSize <= 4 and the other sizes are
  // positive (maxSubstSize and maxCspSize may be zero).
  void validate() const;
};

using Rng = std::mt19937_64;

// Independent stream for trial `index` of a run seeded with `seed`.
Rng trialRng(std::uint64_t seed, std::uint64_t index);

// Which kind of algebra generated objects live in.
enum class Profile : std::uint8_t { Finite, Integer, Herbrand };

/// Finite algebra with 1..maxDomainSize elements (a, b, c, d), up to two
/// function symbols and one or two predicate symbols, tables uniform.
Algebra randomAlgebra(const GenParams& p, Rng& rng);
Algebra randomAlgebra(const GenParams& p);

// Closed Herbrand signature used by generated Herbrand objects: constants a
// and b, f/1 and g/2.
Algebra herbrandFixtureAlgebra();

/// Random well-formed objects over one algebra. Variables come from the user
/// pool x, y, z, w (first maxVars of them).
class Generator {
 public:
  Generator(const GenParams& p, const Algebra& alg, Profile profile, Rng& rng);

  std::size_t below(std::size_t n);
  bool chance(double p);

  Var var();
  const std::vector<Var>& vars() const { return vars_; }
  Value value();
  Term term(std::size_t depth = 1);
  Formula atom();
  Formula formula(std::size_t depth, bool quantifiers = true);
  Formula constraint();
  Substitution subst();
  State state();
  // One to maxStates pair states.
  StateSet stateSet();

 private:
  Formula integerAtom();
  Formula herbrandAtom();

  const GenParams& p_;
  const Algebra& alg_;
  Profile profile_;
  Rng& rng_;
  std::vector<Var> vars_;
  std::vector<Value> values_;
  std::vector<std::pair<std::string, std::size_t>> functions_;
  std::vector<std::pair<std::string, std::size_t>> predicates_;
};

}  // namespace soundsearch
