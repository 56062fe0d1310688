#pragma once

#include <cstdint>
#include <string_view>

#include "soundsearch/syntax.hpp"

namespace soundsearch {

class State;

enum class Verdict : std::uint8_t { DefinitelyTrue, DefinitelyFalse, Unknown };

std::string_view verdictName(Verdict v);

/// Three-valued decision component standing in for |=_I. Definite answers
/// must agree with the semantic facts; Unknown is always allowed unless the
/// decider is exact.
class Decider {
 public:
  virtual ~Decider() = default;

  virtual Verdict isConsistent(const State& s) const = 0;
  virtual Verdict areEquivalent(const State& a, const State& b) const = 0;
  virtual Verdict entails(const Formula& psi, const Formula& phi) const = 0;
  virtual bool exact() const = 0;
};

}  // namespace soundsearch
