#pragma once

// Test helpers, including a naive model checker written against the AST and
// algebra tables only. It shares no code with the library's oracle.

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "soundsearch/algebra.hpp"
#include "soundsearch/error.hpp"
#include "soundsearch/state.hpp"
#include "soundsearch/syntax.hpp"

namespace naive {

using soundsearch::Algebra;
using soundsearch::Formula;
using soundsearch::Integer;
using soundsearch::Term;
using soundsearch::Value;
using soundsearch::Var;

using Env = std::map<Var, Value>;

inline std::size_t position(const Algebra& alg, const Value& v) {
  const auto& names = alg.elementNames();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == v.name()) return i;
  throw std::logic_error("value outside the domain: " + v.str());
}

inline std::size_t tableIndex(const Algebra& alg, const std::vector<Value>& args) {
  std::size_t idx = 0;
  for (const auto& a : args) idx = idx * alg.domainSize() + position(alg, a);
  return idx;
}

inline Value intOp(const std::string& f, const std::vector<Value>& a) {
  auto n = [&](std::size_t i) { return a.at(i).asInteger(); };
  if (f == "+") return Value::integer(n(0) + n(1));
  if (f == "-" && a.size() == 2) return Value::integer(n(0) - n(1));
  if (f == "-" || f == "neg") return Value::integer(-n(0));
  if (f == "*") return Value::integer(n(0) * n(1));
  if (f == "pow") {
    Integer r = 1;
    for (Integer i = 0; i < n(1); ++i) r *= n(0);
    return Value::integer(r);
  }
  throw std::logic_error("naive evaluator lacks " + f);
}

inline Value term(const Algebra& alg, const Term& t, const Env& env) {
  if (t.isLit()) return t.value();
  if (t.isVar()) {
    auto it = env.find(t.var());
    if (it == env.end()) throw std::logic_error("unassigned " + t.var().str());
    return it->second;
  }
  std::vector<Value> args;
  for (const auto& a : t.args()) args.push_back(term(alg, a, env));
  switch (alg.kind()) {
    case soundsearch::AlgebraKind::Finite:
      return alg.elementAt(alg.functionTable(t.functor()).results.at(tableIndex(alg, args)));
    case soundsearch::AlgebraKind::Integer:
      return intOp(t.functor(), args);
    case soundsearch::AlgebraKind::Herbrand:
      return Value::ground(t.functor(), args);
  }
  return args.at(0);
}

inline bool holds(const Algebra& alg, const Formula& f, Env env, const std::vector<Value>& universe) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Bot:
      return false;
    case K::Top:
      return true;
    case K::Eq:
      return term(alg, f.lhs(), env) == term(alg, f.rhs(), env);
    case K::Atom: {
      std::vector<Value> args;
      for (const auto& a : f.terms()) args.push_back(term(alg, a, env));
      if (f.predicate() == "in") {
        for (std::size_t i = 1; i < args.size(); ++i)
          if (args[i] == args[0]) return true;
        return false;
      }
      if (alg.kind() == soundsearch::AlgebraKind::Integer) {
        if (f.predicate() == "le") return args[0].asInteger() <= args[1].asInteger();
        if (f.predicate() == "lt") return args[0].asInteger() < args[1].asInteger();
      }
      return alg.predicateTable(f.predicate()).truth.at(tableIndex(alg, args));
    }
    case K::Not:
      return !holds(alg, f.sub(), env, universe);
    case K::And:
      return holds(alg, f.left(), env, universe) && holds(alg, f.right(), env, universe);
    case K::Or:
      return holds(alg, f.left(), env, universe) || holds(alg, f.right(), env, universe);
    case K::Exists:
      for (const auto& v : universe) {
        env[f.bound()] = v;
        if (holds(alg, f.sub(), env, universe)) return true;
      }
      return false;
  }
  return false;
}

inline std::vector<Value> domainOf(const Algebra& alg) {
  std::vector<Value> out;
  for (std::size_t i = 0; i < alg.domainSize(); ++i) out.push_back(alg.elementAt(i));
  return out;
}

inline std::vector<Value> intRange(long lo, long hi) {
  std::vector<Value> out;
  for (long i = lo; i <= hi; ++i) out.push_back(Value::integer(i));
  return out;
}

// Calls body on every assignment of vars over universe; stops when body
// returns false and reports whether every call returned true.
inline bool forAll(const std::vector<Var>& vars, const std::vector<Value>& universe,
                   const std::function<bool(const Env&)>& body) {
  Env env;
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == vars.size()) return body(env);
    for (const auto& v : universe) {
      env[vars[i]] = v;
      if (!go(i + 1)) return false;
    }
    return true;
  };
  return go(0);
}

inline std::vector<Var> varsOf(std::initializer_list<Formula> fs) {
  std::set<Var> all;
  for (const auto& f : fs)
    for (const auto& v : soundsearch::freeVars(f)) all.insert(v);
  return {all.begin(), all.end()};
}

inline bool equivalent(const Algebra& alg, const Formula& a, const Formula& b, const std::vector<Value>& u) {
  return forAll(varsOf({a, b}), u,
                [&](const Env& e) { return holds(alg, a, e, u) == holds(alg, b, e, u); });
}

inline bool entails(const Algebra& alg, const Formula& a, const Formula& b, const std::vector<Value>& u) {
  return forAll(varsOf({a, b}), u, [&](const Env& e) { return !holds(alg, a, e, u) || holds(alg, b, e, u); });
}

inline bool satisfiable(const Algebra& alg, const Formula& a, const std::vector<Value>& u) {
  return !forAll(varsOf({a}), u, [&](const Env& e) { return !holds(alg, a, e, u); });
}

}  // namespace naive

namespace fixtures {

using namespace soundsearch;

inline Formula F(const std::string& text, const Algebra& alg) { return parseFormula(text, &alg); }
inline Term T(const std::string& text, const Algebra& alg) { return parseTerm(text, &alg); }
inline Var V(const std::string& name) { return Var::user(name); }
inline Term TV(const std::string& name) { return Term::variable(Var::user(name)); }
inline Term I(long v) { return Term::literal(Value::integer(v)); }

inline State S(std::initializer_list<std::string> csp, const Algebra& alg, Substitution theta = {}) {
  std::vector<Formula> fs;
  for (const auto& c : csp) fs.push_back(F(c, alg));
  return State::pair(Csp(std::move(fs)), std::move(theta));
}

inline const State& empty() {
  static const State s = State::pair({}, {});
  return s;
}

// domain a b; f swaps; p holds of a, q of b.
inline Algebra swapAlgebra() {
  return parseAlgebraSpec("domain: a b\nfun f/1: (a)->b (b)->a\npred p/1: a\npred q/1: b\n");
}

// True when some injective variable renaming maps xa to xb for every x in
// vars (a and b are then alphabetic variants on vars).
inline bool renameMatch(const Substitution& a, const Substitution& b, const std::vector<Var>& vars) {
  std::map<Var, Var> fwd, back;
  std::function<bool(const Term&, const Term&)> match = [&](const Term& s, const Term& t) {
    if (s.isVar() && t.isVar()) {
      const auto i = fwd.emplace(s.var(), t.var()).first;
      const auto j = back.emplace(t.var(), s.var()).first;
      return i->second == t.var() && j->second == s.var();
    }
    if (s.isLit() || t.isLit()) return s == t;
    if (s.isVar() || t.isVar() || s.functor() != t.functor() || s.args().size() != t.args().size()) return false;
    for (std::size_t k = 0; k < s.args().size(); ++k)
      if (!match(s.args()[k], t.args()[k])) return false;
    return true;
  };
  auto image = [](const Substitution& th, const Var& x) {
    const Term* t = th.lookup(x);
    return t ? *t : Term::variable(x);
  };
  for (const auto& x : vars)
    if (!match(image(a, x), image(b, x))) return false;
  return true;
}

}  // namespace fixtures
