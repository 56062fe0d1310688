#include "soundsearch/generate.hpp"

#include <algorithm>

#include "soundsearch/error.hpp"

namespace soundsearch {

void GenParams::validate() const {
  if (maxDomainSize < 1 || maxDomainSize > 4) throw UsageError("maxDomainSize must be in 1..4");
  if (maxFormulaDepth < 1 || maxArity < 1 || maxStates < 1 || maxVars < 1 || maxVars > 4)
    throw UsageError("generator sizes must be positive (and maxVars at most 4)");
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

Rng trialRng(std::uint64_t seed, std::uint64_t index) {
  return Rng(splitmix(splitmix(seed) ^ (index * 0xD1B54A32D192ED03ull)));
}

Algebra randomAlgebra(const GenParams& p, Rng& rng) {
  p.validate();
  static const char* names[] = {"a", "b", "c", "d"};
  const std::size_t n = 1 + pick(rng, p.maxDomainSize);
  std::vector<std::string> domain(names, names + n);
  auto size = [n](std::size_t arity) {
    std::size_t s = 1;
    for (std::size_t i = 0; i < arity; ++i) s *= n;
    return s;
  };
  std::map<std::string, FunctionTable> fns;
  const std::size_t nf = pick(rng, 3);
  static const char* fnames[] = {"f", "g"};
  for (std::size_t i = 0; i < nf; ++i) {
    FunctionTable t;
    t.arity = 1 + pick(rng, std::min<std::size_t>(p.maxArity, 2));
    for (std::size_t j = 0; j < size(t.arity); ++j) t.results.push_back(static_cast<std::uint32_t>(pick(rng, n)));
    fns.emplace(fnames[i], std::move(t));
  }
  std::map<std::string, PredicateTable> preds;
  const std::size_t np = 1 + pick(rng, 2);
  static const char* pnames[] = {"p", "q"};
  for (std::size_t i = 0; i < np; ++i) {
    PredicateTable t;
    t.arity = 1 + pick(rng, std::min<std::size_t>(p.maxArity, 2));
    for (std::size_t j = 0; j < size(t.arity); ++j) t.truth.push_back(pick(rng, 2) == 1);
    preds.emplace(pnames[i], std::move(t));
  }
  return Algebra::finite(std::move(domain), std::move(fns), std::move(preds));
}

Algebra randomAlgebra(const GenParams& p) {
  Rng rng(p.seed);
  return randomAlgebra(p, rng);
}

Algebra herbrandFixtureAlgebra() {
  Signature sig;
  sig.functions = {{"a", 0}, {"b", 0}, {"f", 1}, {"g", 2}};
  return Algebra::herbrand(std::move(sig));
}

// ---------------------------------------------------------------------------
// Generator

Generator::Generator(const GenParams& p, const Algebra& alg, Profile profile, Rng& rng)
    : p_(p), alg_(alg), profile_(profile), rng_(rng) {
  static const char* names[] = {"x", "y", "z", "w"};
  for (std::size_t i = 0; i < std::min<std::size_t>(p.maxVars, 4); ++i) vars_.push_back(Var::user(names[i]));
  switch (profile) {
    case Profile::Finite:
      values_ = alg.enumerateDomain();
      for (const auto& [f, k] : alg.signature().functions) functions_.emplace_back(f, k);
      for (const auto& [q, k] : alg.signature().predicates) predicates_.emplace_back(q, k);
      break;
    case Profile::Integer:
      for (int i = -3; i <= 3; ++i) values_.push_back(Value::integer(i));
      functions_ = {{"+", 2}};
      break;
    case Profile::Herbrand:
      values_ = {Value::ground("a"), Value::ground("b")};
      functions_ = {{"f", 1}, {"g", 2}};
      break;
  }
}

std::size_t Generator::below(std::size_t n) { return pick(rng_, n); }

bool Generator::chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

Var Generator::var() { return vars_[below(vars_.size())]; }

Value Generator::value() { return values_[below(values_.size())]; }

Term Generator::term(std::size_t depth) {
  const std::size_t roll = below(10);
  if (depth > 0 && !functions_.empty() && roll >= 7) {
    const auto& [f, k] = functions_[below(functions_.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < k; ++i) args.push_back(term(depth - 1));
    return normalizeTerm(Term::apply(f, std::move(args)), alg_);
  }
  if (roll < 5) return Term::variable(var());
  return Term::literal(value());
}

Formula Generator::integerAtom() {
  const Term x = Term::variable(var());
  auto lit = [&](long v) { return Term::literal(Value::integer(v)); };
  static const long squares[] = {-1, 0, 1, 2, 4, 9};
  switch (below(7)) {
    case 0:
      return Formula::eq(Term::apply("*", {x, x}), lit(squares[below(6)]));
    case 1:
      return Formula::eq(lit(squares[below(6)]), Term::apply("pow", {x, lit(2)}));
    case 2:
      return Formula::eq(x, Term::literal(value()));
    case 3:
      return Formula::eq(Term::apply("+", {x, Term::variable(var())}), Term::literal(value()));
    case 4:
      return Formula::atom("le", {x, Term::literal(value())});
    case 5:
      return Formula::atom("lt", {x, Term::variable(var())});
    default: {
      std::vector<Term> args{x};
      const std::size_t k = 1 + below(4);
      for (std::size_t i = 0; i < k; ++i) args.push_back(Term::literal(value()));
      return Formula::atom(std::string(kMembershipPredicate), std::move(args));
    }
  }
}

Formula Generator::herbrandAtom() {
  if (chance(0.85)) return Formula::eq(term(2), term(2));
  return Formula::atom(std::string(kMembershipPredicate),
                       {Term::variable(var()), Term::literal(value()), Term::literal(value())});
}

Formula Generator::atom() {
  if (profile_ == Profile::Integer) return integerAtom();
  if (profile_ == Profile::Herbrand) return herbrandAtom();
  const std::size_t roll = below(20);
  if (roll == 0) return Formula::bot();
  if (roll == 1) return Formula::top();
  if (roll < 10 && !predicates_.empty()) {
    const auto& [q, k] = predicates_[below(predicates_.size())];
    std::vector<Term> args;
    for (std::size_t i = 0; i < k; ++i) args.push_back(term(1));
    return Formula::atom(q, std::move(args));
  }
  if (roll < 17) return Formula::eq(term(1), term(1));
  std::vector<Term> args{Term::variable(var())};
  const std::size_t k = 1 + below(values_.size());
  for (std::size_t i = 0; i < k; ++i) args.push_back(Term::literal(value()));
  return Formula::atom(std::string(kMembershipPredicate), std::move(args));
}

Formula Generator::formula(std::size_t depth, bool quantifiers) {
  if (depth == 0 || chance(0.25)) return atom();
  switch (below(quantifiers ? 4 : 3)) {
    case 0:
      return Formula::negate(formula(depth - 1, quantifiers));
    case 1:
      return Formula::conj(formula(depth - 1, quantifiers), formula(depth - 1, quantifiers));
    case 2:
      return Formula::disj(formula(depth - 1, quantifiers), formula(depth - 1, quantifiers));
    default:
      return Formula::exists(var(), formula(depth - 1, quantifiers));
  }
}

Formula Generator::constraint() {
  const bool quantifiers = profile_ == Profile::Finite;
  const std::size_t roll = below(10);
  if (roll < 6) return atom();
  if (roll < 8) return Formula::disj(atom(), atom());
  if (roll < 9) return Formula::negate(atom());
  return formula(2, quantifiers);
}

Substitution Generator::subst() {
  Substitution theta;
  const std::size_t n = p_.maxSubstSize == 0 ? 0 : below(p_.maxSubstSize + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const Var x = var();
    Term t = profile_ == Profile::Herbrand ? term(2) : term(1);
    if (profile_ == Profile::Integer && chance(0.2))
      t = Term::apply("+", {Term::variable(var()), Term::literal(Value::integer(1))});
    theta.bind(x, normalizeTerm(t, alg_));
  }
  return theta;
}

State Generator::state() {
  std::vector<Formula> cs;
  const std::size_t n = p_.maxCspSize == 0 ? 0 : below(p_.maxCspSize + 1);
  for (std::size_t i = 0; i < n; ++i) cs.push_back(constraint());
  return State::pair(Csp(std::move(cs)), subst());
}

StateSet Generator::stateSet() {
  StateSet out;
  const std::size_t n = 1 + below(p_.maxStates);
  const bool shared = chance(0.5);
  const Substitution theta = subst();
  for (std::size_t i = 0; i < n; ++i) {
    State s = state();
    if (shared) s = State::pair(s.csp(), theta);
    out.push(s);
  }
  return out;
}

}  // namespace soundsearch
