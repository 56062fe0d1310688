#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "soundsearch/algebra.hpp"

namespace soundsearch {

/// A variable. Fresh variables live in their own namespace (printed `_u<k>`)
/// and can never collide with a variable written in source text.
class Var {
 public:
  enum class Space : std::uint8_t { User, Fresh };

  Var() = default;
  static Var user(std::string name) { return Var(Space::User, std::move(name), 0); }
  static Var fresh(std::uint64_t index) { return Var(Space::Fresh, {}, index); }

  Space space() const { return space_; }
  bool isFresh() const { return space_ == Space::Fresh; }
  const std::string& name() const { return name_; }
  std::uint64_t index() const { return index_; }
  std::string str() const;

  // User variables order before fresh ones; users by name, fresh by index.
  friend auto operator<=>(const Var&, const Var&) = default;
  friend bool operator==(const Var&, const Var&) = default;

 private:
  Var(Space space, std::string name, std::uint64_t index)
      : space_(space), name_(std::move(name)), index_(index) {}

  Space space_ = Space::User;
  std::string name_;
  std::uint64_t index_ = 0;
};

/// Immutable first-order term: a variable, an evaluated algebra value, or a
/// function application. Copies share structure.
class Term {
 public:
  enum class Kind : std::uint8_t { Variable, Literal, Application };

  static Term variable(Var v);
  static Term literal(Value v);
  static Term apply(std::string functor, std::vector<Term> args);

  Kind kind() const;
  bool isVar() const { return kind() == Kind::Variable; }
  bool isLit() const { return kind() == Kind::Literal; }
  bool isApp() const { return kind() == Kind::Application; }
  const Var& var() const;
  const Value& value() const;
  const std::string& functor() const;
  const std::vector<Term>& args() const;

  // No variables anywhere below.
  bool isGround() const;
  bool mentions(const Var& v) const;
  void collectVars(std::set<Var>& out) const;

  std::string str() const;

  friend int compare(const Term& a, const Term& b);
  friend bool operator==(const Term& a, const Term& b) { return compare(a, b) == 0; }
  friend bool operator<(const Term& a, const Term& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Immutable first-order formula. Universal quantification is expressed by
/// the user as ~exists x ~F.
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Eq, Bot, Top, Not, And, Or, Exists };

  static Formula atom(std::string predicate, std::vector<Term> args);
  static Formula eq(Term lhs, Term rhs);
  static Formula bot();
  static Formula top();
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula exists(Var v, Formula body);
  // Right-nested; the empty conjunction is Top and the empty disjunction Bot.
  static Formula conjunction(std::span<const Formula> parts);
  static Formula disjunction(std::span<const Formula> parts);

  Kind kind() const;
  bool isAtomic() const;
  const std::string& predicate() const;
  // Atom arguments, or {lhs, rhs} for Eq.
  const std::vector<Term>& terms() const;
  const Term& lhs() const { return terms().at(0); }
  const Term& rhs() const { return terms().at(1); }
  // Operand of Not; body of Exists.
  const Formula& sub() const;
  const Formula& left() const;
  const Formula& right() const;
  const Var& bound() const;

  std::string str() const;

  friend int compare(const Formula& a, const Formula& b);
  friend bool operator==(const Formula& a, const Formula& b) { return compare(a, b) == 0; }
  friend bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::set<Var> freeVars(const Formula& f);
// Free and bound occurrences, binders included.
std::set<Var> allVars(const Formula& f);
bool occurs(const Formula& f, const Var& v);
bool occursFree(const Formula& f, const Var& v);

/// f{x/u}: replaces free occurrences of x by u. Throws UsageError if u
/// already occurs in f.
Formula substVar(const Formula& f, const Var& x, const Var& u);

/// Replaces every occurrence of u, free or bound, by v. Throws UsageError if
/// v already occurs.
Term renameEverywhere(const Term& t, const Var& u, const Var& v);
Formula renameEverywhere(const Formula& f, const Var& u, const Var& v);

/// Monotone counter handing out fresh-namespace variables.
class FreshSupply {
 public:
  explicit FreshSupply(std::uint64_t next = 0) : next_(next) {}
  Var draw() { return Var::fresh(next_++); }
  std::uint64_t peek() const { return next_; }

 private:
  std::uint64_t next_;
};

std::pair<Var, FreshSupply> freshVar(FreshSupply supply);

/// Parses the ASCII formula grammar:
///
///   F ::= true | false | ~F | F /\ F | F \/ F | exists x F | p(t,...) | p
///       | t = t | in(t, {v,...}) | (F)
///   t ::= x | 42 | f(t,...) | t + t | t - t | t * t | -t | (t)
///
/// `~` binds tightest, then `/\`, then `\/`; both binary connectives
/// associate right and `exists` extends as far right as possible. When an
/// algebra is given, bare identifiers naming one of its elements or nullary
/// function symbols are read as such, integer tokens are resolved through
/// it, and the result is checked against its signature.
Formula parseFormula(std::string_view text, const Algebra* alg = nullptr);
Term parseTerm(std::string_view text, const Algebra* alg = nullptr);

/// Throws SymbolError when a symbol is unknown to alg, used with the wrong
/// arity, or a literal does not belong to alg.
void checkWellFormed(const Formula& f, const Algebra& alg);
void checkWellFormed(const Term& t, const Algebra& alg);

}  // namespace soundsearch
