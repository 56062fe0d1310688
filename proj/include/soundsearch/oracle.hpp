#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "soundsearch/algebra.hpp"
#include "soundsearch/decider.hpp"
#include "soundsearch/state.hpp"
#include "soundsearch/syntax.hpp"

namespace soundsearch {

using Assignment = std::map<Var, Value>;

/// The set of values quantifiers range over. For a finite algebra this is
/// the whole domain and answers are exact; integer and Herbrand slices give
/// heuristic answers only.
class Universe {
 public:
  static Universe full(const Algebra& alg);
  static Universe integerSlice(const Algebra& alg, long lo, long hi);
  // Ground terms over the given constants and unary/binary functors up to
  // the given nesting depth.
  static Universe herbrandSlice(const Algebra& alg, std::vector<std::string> constants,
                                std::map<std::string, std::size_t> functions, unsigned depth);

  const Algebra& algebra() const { return *alg_; }
  const std::vector<Value>& values() const { return values_; }
  bool exact() const { return exact_; }

 private:
  std::shared_ptr<const Algebra> alg_;
  std::vector<Value> values_;
  bool exact_ = false;
};

struct OracleBudget {
  std::size_t maxFreeVars = 5;
  std::uint64_t maxAssignments = 1024;
};

enum class Engine : std::uint8_t { Kernel, Reference };

/// Brute-force model checker. Queries enumerate every assignment of the
/// free variables over the universe. Throws BudgetExceeded when a query is
/// too large and EvalError when a partial function fails.
///
/// The kernel engine compiles formulas to index arithmetic over the tables
/// of a finite algebra; the reference engine interprets Values directly and
/// works for every universe. Both give the same answers.
class Oracle {
 public:
  explicit Oracle(Universe u, OracleBudget budget = {}, Engine engine = Engine::Kernel);

  bool evalFormula(const Formula& f, const Assignment& asg) const;
  bool satisfiable(const Formula& f) const;
  bool entails(const Formula& psi, const Formula& phi) const;
  bool equivalent(const Formula& a, const Formula& b) const;

  const Universe& universe() const { return universe_; }
  const Algebra& algebra() const { return universe_.algebra(); }
  bool exact() const { return universe_.exact(); }
  Engine engine() const { return engine_; }

 private:
  // True iff some assignment of the free variables satisfies a and not b.
  bool counterModel(const Formula& a, const Formula* b) const;

  Universe universe_;
  OracleBudget budget_;
  Engine engine_;
};

// Exact queries over a finite algebra's whole domain.
bool evalFormula(const Algebra& alg, const Formula& f, const Assignment& asg);
bool satisfiable(const Algebra& alg, const Formula& f);
bool entails(const Algebra& alg, const Formula& psi, const Formula& phi);
bool equivalentF(const Algebra& alg, const Formula& a, const Formula& b);

/// Decider answering through an Oracle. Oracle failures (budget, partial
/// functions) become Unknown and are counted.
class OracleDecider final : public Decider {
 public:
  explicit OracleDecider(Oracle oracle) : oracle_(std::move(oracle)) {}

  Verdict isConsistent(const State& s) const override;
  Verdict areEquivalent(const State& a, const State& b) const override;
  Verdict entails(const Formula& psi, const Formula& phi) const override;
  bool exact() const override { return oracle_.exact(); }

  const Oracle& oracle() const { return oracle_; }
  std::uint64_t failures() const { return failures_.load(); }

 private:
  template <class F>
  Verdict guarded(F&& query) const;

  Oracle oracle_;
  mutable std::atomic<std::uint64_t> failures_{0};
};

/// Cheap decider for algebras without a decision procedure: it only looks
/// at ground atoms and structural identity.
class SyntacticDecider final : public Decider {
 public:
  explicit SyntacticDecider(Algebra alg) : alg_(std::move(alg)) {}

  Verdict isConsistent(const State& s) const override;
  Verdict areEquivalent(const State& a, const State& b) const override;
  Verdict entails(const Formula& psi, const Formula& phi) const override;
  bool exact() const override { return false; }

 private:
  Algebra alg_;
};

// Truth value of a variable-free formula when literals alone settle it.
std::optional<bool> groundTruth(const Formula& f, const Algebra& alg);

std::unique_ptr<OracleDecider> finiteDecider(const Algebra& alg);
std::unique_ptr<SyntacticDecider> syntacticDecider(const Algebra& alg);

}  // namespace soundsearch
