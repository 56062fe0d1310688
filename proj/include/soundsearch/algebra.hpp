#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace soundsearch {

using Integer = boost::multiprecision::cpp_int;

/// A domain element of some algebra: an integer, a named element of a finite
/// algebra, or a ground term of a Herbrand algebra.
///
/// Each kind has a canonical representation, so structural equality is
/// semantic identity within one algebra.
class Value {
 public:
  enum class Kind : std::uint8_t { Integer, Element, Ground };

  static Value integer(Integer v);
  static Value element(std::string name);
  static Value ground(std::string functor, std::vector<Value> args = {});

  Kind kind() const { return kind_; }
  const Integer& asInteger() const;
  // Element name, or the functor of a ground term.
  const std::string& name() const { return name_; }
  std::span<const Value> args() const;

  std::string str() const;

  friend int compare(const Value& a, const Value& b);
  friend bool operator==(const Value& a, const Value& b) { return compare(a, b) == 0; }
  friend bool operator<(const Value& a, const Value& b) { return compare(a, b) < 0; }

 private:
  Kind kind_ = Kind::Element;
  Integer int_;
  std::string name_;
  std::shared_ptr<const std::vector<Value>> args_;
};

enum class AlgebraKind : std::uint8_t { Finite, Integer, Herbrand };

// Equality ("=") and finite-set membership ("in") are built into every
// algebra and never appear in a signature.
inline constexpr std::string_view kEqualityPredicate = "=";
inline constexpr std::string_view kMembershipPredicate = "in";

struct Signature {
  std::map<std::string, std::size_t> functions;
  std::map<std::string, std::size_t> predicates;

  friend bool operator==(const Signature&, const Signature&) = default;
};

// Tables of a finite algebra are indexed mixed-radix by element position,
// first argument most significant.
struct FunctionTable {
  std::size_t arity = 0;
  std::vector<std::uint32_t> results;

  friend bool operator==(const FunctionTable&, const FunctionTable&) = default;
};

struct PredicateTable {
  std::size_t arity = 0;
  std::vector<bool> truth;

  friend bool operator==(const PredicateTable&, const PredicateTable&) = default;
};

/// The interpreted structure computations happen in. Immutable after
/// construction.
class Algebra {
 public:
  /// Validates that the domain is nonempty and duplicate-free and that every
  /// table is total over it.
  static Algebra finite(std::vector<std::string> domain,
                        std::map<std::string, FunctionTable> functions,
                        std::map<std::string, PredicateTable> predicates);
  /// Arbitrary-precision integers with + - * pow neg div mod and le lt.
  static Algebra integers();
  /// Term algebra with an open signature: any function symbol is accepted,
  /// and no predicates besides the built-in ones.
  static Algebra herbrand();
  static Algebra herbrand(Signature signature);

  AlgebraKind kind() const { return kind_; }
  const Signature& signature() const { return signature_; }
  bool domainEnumerable() const { return kind_ == AlgebraKind::Finite; }
  bool openSignature() const { return open_; }

  std::optional<std::size_t> functionArity(const std::string& f) const;
  std::optional<std::size_t> predicateArity(const std::string& p) const;
  bool hasFunction(const std::string& f) const;
  // True for function symbols that may raise EvalError.
  bool isPartial(const std::string& f) const;

  Value evalFun(const std::string& f, std::span<const Value> args) const;
  bool evalPred(const std::string& p, std::span<const Value> args) const;
  std::vector<Value> enumerateDomain() const;

  /// Interprets a source-text token (an integer literal or an element name)
  /// as a value of this algebra, if it denotes one.
  std::optional<Value> literal(std::string_view token) const;
  bool isMember(const Value& v) const;

  // Finite algebras only.
  std::size_t domainSize() const { return domain_.size(); }
  const std::vector<std::string>& elementNames() const { return domain_; }
  std::uint32_t indexOf(const Value& v) const;
  Value elementAt(std::size_t i) const { return Value::element(domain_.at(i)); }
  const FunctionTable& functionTable(const std::string& f) const;
  const PredicateTable& predicateTable(const std::string& p) const;
  const std::map<std::string, FunctionTable>& functionTables() const { return functions_; }
  const std::map<std::string, PredicateTable>& predicateTables() const { return predicates_; }

  /// The subalgebra on the given elements, if they are closed under every
  /// function table. Used to shrink counterexamples.
  std::optional<Algebra> restrictTo(const std::vector<std::uint32_t>& keep) const;

  friend bool operator==(const Algebra& a, const Algebra& b);

 private:
  Algebra() = default;

  AlgebraKind kind_ = AlgebraKind::Finite;
  bool open_ = false;
  Signature signature_;
  std::vector<std::string> domain_;
  std::map<std::string, std::uint32_t> positions_;
  std::map<std::string, FunctionTable> functions_;
  std::map<std::string, PredicateTable> predicates_;
};

/// Reads the line-oriented algebra-spec format:
///
///   domain: a b c
///   fun f/1: (a)->b (b)->a (c)->c
///   pred p/2: (a,b) (b,c)
///   # comment
Algebra parseAlgebraSpec(std::string_view text);
std::string printAlgebraSpec(const Algebra& alg);

}  // namespace soundsearch
