#include "soundsearch/state.hpp"

#include <algorithm>

#include "soundsearch/error.hpp"

namespace soundsearch {

std::string_view verdictName(Verdict v) {
  switch (v) {
    case Verdict::DefinitelyTrue:
      return "true";
    case Verdict::DefinitelyFalse:
      return "false";
    case Verdict::Unknown:
      return "unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Substitution

Substitution Substitution::of(std::initializer_list<std::pair<Var, Term>> bindings,
                              const Algebra& alg) {
  Substitution out;
  for (const auto& [x, t] : bindings) out.bind(x, normalizeTerm(t, alg));
  return out;
}

void Substitution::bind(const Var& x, Term t) {
  if (t.isVar() && t.var() == x) {
    bindings_.erase(x);
    return;
  }
  bindings_.insert_or_assign(x, std::move(t));
}

const Term* Substitution::lookup(const Var& x) const {
  auto it = bindings_.find(x);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::set<Var> Substitution::domain() const {
  std::set<Var> out;
  for (const auto& [x, t] : bindings_) out.insert(x);
  return out;
}

std::set<Var> Substitution::rangeVars() const {
  std::set<Var> out;
  for (const auto& [x, t] : bindings_) t.collectVars(out);
  return out;
}

std::string Substitution::str() const {
  std::string s = "{";
  bool first = true;
  for (const auto& [x, t] : bindings_) {
    if (!first) s += ", ";
    first = false;
    s += x.str() + " -> " + t.str();
  }
  return s + "}";
}

int compare(const Substitution& a, const Substitution& b) {
  if (a.bindings_.size() != b.bindings_.size())
    return a.bindings_.size() < b.bindings_.size() ? -1 : 1;
  auto it = b.bindings_.begin();
  for (const auto& [x, t] : a.bindings_) {
    auto c = x <=> it->first;
    if (c != 0) return c < 0 ? -1 : 1;
    if (int d = compare(t, it->second)) return d;
    ++it;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Csp

Csp::Csp(std::initializer_list<Formula> fs) : Csp(std::vector<Formula>(fs)) {}

Csp::Csp(std::vector<Formula> fs) : formulas_(std::move(fs)) {
  std::sort(formulas_.begin(), formulas_.end());
  formulas_.erase(std::unique(formulas_.begin(), formulas_.end()), formulas_.end());
}

bool Csp::insert(const Formula& f) {
  auto it = std::lower_bound(formulas_.begin(), formulas_.end(), f);
  if (it != formulas_.end() && *it == f) return false;
  formulas_.insert(it, f);
  return true;
}

bool Csp::erase(const Formula& f) {
  auto it = std::lower_bound(formulas_.begin(), formulas_.end(), f);
  if (it == formulas_.end() || !(*it == f)) return false;
  formulas_.erase(it);
  return true;
}

bool Csp::contains(const Formula& f) const {
  return std::binary_search(formulas_.begin(), formulas_.end(), f);
}

std::string Csp::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < formulas_.size(); ++i) {
    if (i) s += ", ";
    s += formulas_[i].str();
  }
  return s + "}";
}

int compare(const Csp& a, const Csp& b) {
  if (a.formulas_.size() != b.formulas_.size())
    return a.formulas_.size() < b.formulas_.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.formulas_.size(); ++i)
    if (int c = compare(a.formulas_[i], b.formulas_[i])) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// State / StateSet

State State::error() {
  State s;
  s.error_ = true;
  return s;
}

State State::pair(Csp csp, Substitution subst) {
  State s;
  s.csp_ = std::move(csp);
  s.subst_ = std::move(subst);
  return s;
}

const Csp& State::csp() const {
  if (error_) throw UsageError("the error state has no constraint store");
  return csp_;
}

const Substitution& State::subst() const {
  if (error_) throw UsageError("the error state has no substitution");
  return subst_;
}

std::string State::str() const {
  if (error_) return "<error>";
  return "<" + csp_.str() + " ; " + subst_.str() + ">";
}

int compare(const State& a, const State& b) {
  if (a.error_ != b.error_) return a.error_ ? -1 : 1;
  if (a.error_) return 0;
  if (int c = compare(a.csp_, b.csp_)) return c;
  return compare(a.subst_, b.subst_);
}

StateSet::StateSet(std::initializer_list<State> states) {
  for (const auto& s : states) push(s);
}

bool StateSet::push(const State& s) {
  if (!index_.insert(s).second) return false;
  states_.push_back(s);
  return true;
}

void StateSet::append(const StateSet& other) {
  for (const auto& s : other) push(s);
}

bool StateSet::containsError() const { return !index_.empty() && index_.begin()->isError(); }

std::string StateSet::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (i) s += ", ";
    s += states_[i].str();
  }
  return s + "]";
}

// ---------------------------------------------------------------------------
// Substitution application

Term normalizeTerm(const Term& t, const Algebra& alg) {
  if (!t.isApp()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool allLit = true;
  bool changed = false;
  for (const auto& a : t.args()) {
    Term n = normalizeTerm(a, alg);
    allLit = allLit && n.isLit();
    changed = changed || !(n == a);
    args.push_back(std::move(n));
  }
  if (allLit) {
    std::vector<Value> vals;
    vals.reserve(args.size());
    for (const auto& a : args) vals.push_back(a.value());
    return Term::literal(alg.evalFun(t.functor(), vals));
  }
  return changed ? Term::apply(t.functor(), std::move(args)) : t;
}

namespace {

Term replaceBound(const Substitution& theta, const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      if (const Term* b = theta.lookup(t.var())) return *b;
      return t;
    case Term::Kind::Literal:
      return t;
    case Term::Kind::Application: {
      if (t.isGround()) return t;
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(replaceBound(theta, a));
      return Term::apply(t.functor(), std::move(args));
    }
  }
  return t;
}

Var primed(const Var& v, const std::set<Var>& avoid) {
  std::string name = v.str() + "'";
  while (avoid.count(Var::user(name))) name += "'";
  return Var::user(name);
}

}  // namespace

Term applySubst(const Substitution& theta, const Term& t, const Algebra& alg) {
  return normalizeTerm(replaceBound(theta, t), alg);
}

Formula applySubstFormula(const Substitution& theta, const Formula& f, const Algebra& alg) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Bot:
    case K::Top:
      return f;
    case K::Eq:
      return Formula::eq(applySubst(theta, f.lhs(), alg), applySubst(theta, f.rhs(), alg));
    case K::Atom: {
      std::vector<Term> ts;
      ts.reserve(f.terms().size());
      for (const auto& t : f.terms()) ts.push_back(applySubst(theta, t, alg));
      return Formula::atom(f.predicate(), std::move(ts));
    }
    case K::Not:
      return Formula::negate(applySubstFormula(theta, f.sub(), alg));
    case K::And:
      return Formula::conj(applySubstFormula(theta, f.left(), alg),
                           applySubstFormula(theta, f.right(), alg));
    case K::Or:
      return Formula::disj(applySubstFormula(theta, f.left(), alg),
                           applySubstFormula(theta, f.right(), alg));
    case K::Exists: {
      Var v = f.bound();
      Formula body = f.sub();
      Substitution inner;
      std::set<Var> free = freeVars(body);
      for (const auto& [x, t] : theta.bindings())
        if (!(x == v) && free.count(x)) inner.bind(x, t);
      if (inner.empty()) return Formula::exists(v, applySubstFormula(inner, body, alg));
      if (inner.rangeVars().count(v)) {
        std::set<Var> avoid = allVars(body);
        for (const auto& x : theta.domain()) avoid.insert(x);
        for (const auto& x : theta.rangeVars()) avoid.insert(x);
        Var renamed = primed(v, avoid);
        body = substVar(body, v, renamed);
        v = renamed;
      }
      return Formula::exists(v, applySubstFormula(inner, body, alg));
    }
  }
  return f;
}

// ---------------------------------------------------------------------------
// Derived formulas

Formula thetaHat(const Substitution& theta) {
  std::vector<Formula> eqs;
  eqs.reserve(theta.size());
  for (const auto& [x, t] : theta.bindings()) eqs.push_back(Formula::eq(Term::variable(x), t));
  return Formula::conjunction(eqs);
}

Formula stateFormula(const State& s) {
  if (s.isError()) throw UsageError("stateFormula is undefined on the error state");
  if (s.csp().empty() && s.subst().empty()) return Formula::top();
  return Formula::conj(Formula::conjunction(s.csp().formulas()), thetaHat(s.subst()));
}

Formula bigVee(const StateSet& states) {
  std::vector<Formula> parts;
  for (const auto& s : states)
    if (!s.isError()) parts.push_back(stateFormula(s));
  return Formula::disjunction(parts);
}

// ---------------------------------------------------------------------------
// Local variables

Substitution dropFromDomain(const Var& u, const Substitution& theta) {
  Substitution out = theta;
  out.unbind(u);
  return out;
}

Csp cspPart(const Var& u, const Csp& csp) {
  std::vector<Formula> part;
  for (const auto& f : csp)
    if (occurs(f, u)) part.push_back(f);
  return Csp(std::move(part));
}

State dropLocal(const Var& u, const State& s) {
  if (s.isError()) return s;
  const Csp& csp = s.csp();
  const Substitution& theta = s.subst();
  Csp local = cspPart(u, csp);
  if (local.empty()) return State::pair(csp, dropFromDomain(u, theta));

  std::vector<Formula> conjuncts;
  const Term uTerm = Term::variable(u);
  const Term* uImage = theta.lookup(u);
  conjuncts.push_back(Formula::eq(uTerm, uImage ? *uImage : uTerm));
  for (const auto& [y, t] : theta.bindings())
    if (!(y == u) && t.mentions(u)) conjuncts.push_back(Formula::eq(Term::variable(y), t));
  for (const auto& f : local) conjuncts.push_back(f);

  std::vector<Formula> rest;
  for (const auto& f : csp)
    if (!local.contains(f)) rest.push_back(f);
  rest.push_back(Formula::exists(u, Formula::conjunction(conjuncts)));
  return State::pair(Csp(std::move(rest)), dropFromDomain(u, theta));
}

// ---------------------------------------------------------------------------
// Consistency filters

StateSet consPlus(const StateSet& states, const Decider& d) {
  StateSet out;
  for (const auto& s : states)
    if (s.isError() || d.isConsistent(s) != Verdict::DefinitelyFalse) out.push(s);
  return out;
}

StateSet cons(const StateSet& states, const Decider& d) {
  StateSet out;
  for (const auto& s : states)
    if (!s.isError() && d.isConsistent(s) != Verdict::DefinitelyFalse) out.push(s);
  return out;
}

// ---------------------------------------------------------------------------
// Renaming

std::set<Var> stateVars(const State& s) {
  std::set<Var> out;
  if (s.isError()) return out;
  for (const auto& f : s.csp()) {
    auto vs = allVars(f);
    out.insert(vs.begin(), vs.end());
  }
  for (const auto& [x, t] : s.subst().bindings()) {
    out.insert(x);
    t.collectVars(out);
  }
  return out;
}

State renameEverywhere(const State& s, const Var& u, const Var& v) {
  if (s.isError() || u == v) return s;
  if (stateVars(s).count(v))
    throw UsageError("renameEverywhere: " + v.str() + " already occurs in " + s.str());
  std::vector<Formula> fs;
  for (const auto& f : s.csp()) fs.push_back(renameEverywhere(f, u, v));
  Substitution theta;
  for (const auto& [x, t] : s.subst().bindings())
    theta.bind(x == u ? v : x, renameEverywhere(t, u, v));
  return State::pair(Csp(std::move(fs)), std::move(theta));
}

StateSet renameEverywhere(const StateSet& s, const Var& u, const Var& v) {
  StateSet out;
  for (const auto& st : s) out.push(renameEverywhere(st, u, v));
  return out;
}

}  // namespace soundsearch
