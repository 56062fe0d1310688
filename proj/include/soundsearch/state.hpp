#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "soundsearch/algebra.hpp"
#include "soundsearch/decider.hpp"
#include "soundsearch/syntax.hpp"

namespace soundsearch {

/// Finite map from variables to terms in partial-evaluation normal form
/// (no application with only literal arguments is left unevaluated).
/// Identity bindings x/x are never stored.
class Substitution {
 public:
  Substitution() = default;

  /// Binds x to t after folding ground subterms of t in alg.
  static Substitution of(std::initializer_list<std::pair<Var, Term>> bindings, const Algebra& alg);

  // Stores t as given; binding x to itself removes x from the domain.
  void bind(const Var& x, Term t);
  void unbind(const Var& x) { bindings_.erase(x); }

  const std::map<Var, Term>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  bool binds(const Var& x) const { return bindings_.count(x) > 0; }
  const Term* lookup(const Var& x) const;
  std::set<Var> domain() const;
  // Variables occurring in bound terms.
  std::set<Var> rangeVars() const;

  std::string str() const;

  friend int compare(const Substitution& a, const Substitution& b);
  friend bool operator==(const Substitution& a, const Substitution& b) { return compare(a, b) == 0; }

 private:
  std::map<Var, Term> bindings_;
};

/// A constraint store: a finite set of formulas kept in canonical order.
class Csp {
 public:
  Csp() = default;
  Csp(std::initializer_list<Formula> fs);
  explicit Csp(std::vector<Formula> fs);

  // Returns false if f was already present.
  bool insert(const Formula& f);
  bool erase(const Formula& f);
  bool contains(const Formula& f) const;

  const std::vector<Formula>& formulas() const { return formulas_; }
  auto begin() const { return formulas_.begin(); }
  auto end() const { return formulas_.end(); }
  std::size_t size() const { return formulas_.size(); }
  bool empty() const { return formulas_.empty(); }

  std::string str() const;

  friend int compare(const Csp& a, const Csp& b);
  friend bool operator==(const Csp& a, const Csp& b) { return compare(a, b) == 0; }

 private:
  std::vector<Formula> formulas_;
};

/// Either the unanalyzed error state or a pair <C ; theta>.
class State {
 public:
  static State error();
  static State pair(Csp csp, Substitution subst);

  bool isError() const { return error_; }
  const Csp& csp() const;
  const Substitution& subst() const;

  // Canonical syntax: `<error>` or `<{c1, c2} ; {x -> t}>`.
  std::string str() const;

  friend int compare(const State& a, const State& b);
  friend bool operator==(const State& a, const State& b) { return compare(a, b) == 0; }
  friend bool operator<(const State& a, const State& b) { return compare(a, b) < 0; }

 private:
  State() = default;
  bool error_ = false;
  Csp csp_;
  Substitution subst_;
};

/// Ordered, duplicate-free collection of states. Order records search
/// preference only; set-level comparisons ignore it.
class StateSet {
 public:
  StateSet() = default;
  StateSet(std::initializer_list<State> states);

  // Appends s unless a structurally equal state is present.
  bool push(const State& s);
  void append(const StateSet& other);

  bool contains(const State& s) const { return index_.count(s) > 0; }
  bool containsError() const;
  const std::vector<State>& states() const { return states_; }
  auto begin() const { return states_.begin(); }
  auto end() const { return states_.end(); }
  std::size_t size() const { return states_.size(); }
  bool empty() const { return states_.empty(); }
  const State& operator[](std::size_t i) const { return states_[i]; }

  // Sequence equality (order matters).
  friend bool operator==(const StateSet& a, const StateSet& b) { return a.states_ == b.states_; }
  // Set equality (order ignored).
  friend bool sameMembers(const StateSet& a, const StateSet& b) { return a.index_ == b.index_; }

  std::string str() const;

 private:
  std::vector<State> states_;
  std::set<State> index_;
};

/// Replaces variables by their bindings (bindings are already normal, so
/// once), then folds every application whose arguments are all literals.
/// Throws EvalError when a partial function fails.
Term applySubst(const Substitution& theta, const Term& t, const Algebra& alg);
Term normalizeTerm(const Term& t, const Algebra& alg);

/// applySubst over every term position. Binders shadow bindings; a binder
/// that would capture a variable of a substituted term is renamed to a
/// primed user variable first.
Formula applySubstFormula(const Substitution& theta, const Formula& f, const Algebra& alg);

// Conjunction of x = x theta over dom(theta) in variable order; Top when empty.
Formula thetaHat(const Substitution& theta);
// C /\ theta-hat for a pair state.
Formula stateFormula(const State& s);
// Disjunction of stateFormula over the pair states in order; Bot when none.
Formula bigVee(const StateSet& states);

// Removes u from the domain; every other binding is kept verbatim.
Substitution dropFromDomain(const Var& u, const Substitution& theta);
// Constraints with any (free or bound) occurrence of u.
Csp cspPart(const Var& u, const Csp& csp);
/// Localizes u: removes it from the answer and existentially quantifies its
/// occurrences in the store together with the bindings that mention it.
State dropLocal(const Var& u, const State& s);

// Error kept; pair states kept unless the decider says definitely inconsistent.
StateSet consPlus(const StateSet& states, const Decider& d);
StateSet cons(const StateSet& states, const Decider& d);

State renameEverywhere(const State& s, const Var& u, const Var& v);
StateSet renameEverywhere(const StateSet& s, const Var& u, const Var& v);
// All variables of a state: store (free and bound), domain and range.
std::set<Var> stateVars(const State& s);

}  // namespace soundsearch
