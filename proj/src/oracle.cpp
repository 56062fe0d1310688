#include "soundsearch/oracle.hpp"

#include <algorithm>
#include <optional>

#include "soundsearch/error.hpp"

namespace soundsearch {

// ---------------------------------------------------------------------------
// Universes

Universe Universe::full(const Algebra& alg) {
  Universe u;
  u.values_ = alg.enumerateDomain();
  u.alg_ = std::make_shared<const Algebra>(alg);
  u.exact_ = true;
  return u;
}

Universe Universe::integerSlice(const Algebra& alg, long lo, long hi) {
  if (alg.kind() != AlgebraKind::Integer) throw UsageError("integer slice over a non-integer algebra");
  if (lo > hi) throw UsageError("empty integer slice");
  Universe u;
  for (long i = lo; i <= hi; ++i) u.values_.push_back(Value::integer(Integer(i)));
  u.alg_ = std::make_shared<const Algebra>(alg);
  return u;
}

Universe Universe::herbrandSlice(const Algebra& alg, std::vector<std::string> constants,
                                 std::map<std::string, std::size_t> functions, unsigned depth) {
  if (alg.kind() != AlgebraKind::Herbrand) throw UsageError("Herbrand slice over a non-Herbrand algebra");
  if (constants.empty()) throw UsageError("a Herbrand slice needs a constant");
  Universe u;
  std::vector<Value> level;
  for (auto& c : constants) level.push_back(Value::ground(c));
  std::vector<Value> all = level;
  for (unsigned d = 0; d < depth; ++d) {
    std::vector<Value> next;
    const std::vector<Value> prev = all;
    for (const auto& [f, arity] : functions) {
      if (arity == 1) {
        for (const auto& a : prev) next.push_back(Value::ground(f, {a}));
      } else if (arity == 2) {
        for (const auto& a : prev)
          for (const auto& b : prev) next.push_back(Value::ground(f, {a, b}));
      } else {
        throw UsageError("Herbrand slices support unary and binary functors only");
      }
    }
    for (auto& v : next)
      if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(std::move(v));
  }
  u.values_ = std::move(all);
  u.alg_ = std::make_shared<const Algebra>(alg);
  return u;
}

// ---------------------------------------------------------------------------
// Reference engine

namespace {

class Reference {
 public:
  explicit Reference(const Universe& u) : u_(u), alg_(u.algebra()) {}

  Value term(const Term& t, const Assignment& asg) const {
    switch (t.kind()) {
      case Term::Kind::Variable: {
        auto it = asg.find(t.var());
        if (it == asg.end()) throw UsageError("unassigned variable " + t.var().str());
        return it->second;
      }
      case Term::Kind::Literal:
        return t.value();
      case Term::Kind::Application: {
        std::vector<Value> args;
        args.reserve(t.args().size());
        for (const auto& a : t.args()) args.push_back(term(a, asg));
        return alg_.evalFun(t.functor(), args);
      }
    }
    return t.value();
  }

  bool formula(const Formula& f, Assignment& asg) const {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::Bot:
        return false;
      case K::Top:
        return true;
      case K::Eq:
        return term(f.lhs(), asg) == term(f.rhs(), asg);
      case K::Atom: {
        std::vector<Value> args;
        args.reserve(f.terms().size());
        for (const auto& t : f.terms()) args.push_back(term(t, asg));
        return alg_.evalPred(f.predicate(), args);
      }
      case K::Not:
        return !formula(f.sub(), asg);
      case K::And:
        return formula(f.left(), asg) && formula(f.right(), asg);
      case K::Or:
        return formula(f.left(), asg) || formula(f.right(), asg);
      case K::Exists: {
        const Var& x = f.bound();
        auto prev = asg.find(x);
        std::optional<Value> saved;
        if (prev != asg.end()) saved = prev->second;
        bool found = false;
        for (const auto& v : u_.values()) {
          asg.insert_or_assign(x, v);
          if (formula(f.sub(), asg)) {
            found = true;
            break;
          }
        }
        if (saved) asg.insert_or_assign(x, *saved);
        else asg.erase(x);
        return found;
      }
    }
    return false;
  }

 private:
  const Universe& u_;
  const Algebra& alg_;
};

// ---------------------------------------------------------------------------
// Compiled kernel for finite algebras

struct KTerm {
  enum class Op : std::uint8_t { Slot, Const, App } op;
  std::uint32_t val = 0;
  const FunctionTable* table = nullptr;
  std::vector<KTerm> args;
};

struct KFormula {
  enum class Op : std::uint8_t { False, True, Eq, In, Pred, Not, And, Or, Exists } op;
  const PredicateTable* table = nullptr;
  std::vector<KTerm> terms;
  std::vector<KFormula> subs;
  std::uint32_t slot = 0;
};

class Kernel {
 public:
  Kernel(const Algebra& alg, const std::vector<Var>& freeOrder) : alg_(alg), n_(alg.domainSize()) {
    for (const auto& v : freeOrder) scope_.emplace_back(v, slots_++);
  }

  KFormula compile(const Formula& f) {
    using K = Formula::Kind;
    KFormula k{};
    switch (f.kind()) {
      case K::Bot:
        k.op = KFormula::Op::False;
        break;
      case K::Top:
        k.op = KFormula::Op::True;
        break;
      case K::Eq:
        k.op = KFormula::Op::Eq;
        k.terms = {compile(f.lhs()), compile(f.rhs())};
        break;
      case K::Atom:
        if (f.predicate() == kMembershipPredicate) {
          k.op = KFormula::Op::In;
        } else {
          k.op = KFormula::Op::Pred;
          k.table = &alg_.predicateTable(f.predicate());
          if (k.table->arity != f.terms().size())
            throw SymbolError("arity mismatch for predicate " + f.predicate());
        }
        for (const auto& t : f.terms()) k.terms.push_back(compile(t));
        break;
      case K::Not:
        k.op = KFormula::Op::Not;
        k.subs = {compile(f.sub())};
        break;
      case K::And:
      case K::Or:
        k.op = f.kind() == K::And ? KFormula::Op::And : KFormula::Op::Or;
        k.subs.push_back(compile(f.left()));
        k.subs.push_back(compile(f.right()));
        break;
      case K::Exists:
        k.op = KFormula::Op::Exists;
        k.slot = slots_++;
        scope_.emplace_back(f.bound(), k.slot);
        k.subs = {compile(f.sub())};
        scope_.pop_back();
        break;
    }
    return k;
  }

  std::uint32_t slots() const { return slots_; }

  bool eval(const KFormula& k, std::vector<std::uint32_t>& env) const {
    using O = KFormula::Op;
    switch (k.op) {
      case O::False:
        return false;
      case O::True:
        return true;
      case O::Eq:
        return eval(k.terms[0], env) == eval(k.terms[1], env);
      case O::In: {
        const std::uint32_t x = eval(k.terms[0], env);
        for (std::size_t i = 1; i < k.terms.size(); ++i)
          if (eval(k.terms[i], env) == x) return true;
        return false;
      }
      case O::Pred: {
        std::size_t idx = 0;
        for (const auto& t : k.terms) idx = idx * n_ + eval(t, env);
        return k.table->truth[idx];
      }
      case O::Not:
        return !eval(k.subs[0], env);
      case O::And:
        return eval(k.subs[0], env) && eval(k.subs[1], env);
      case O::Or:
        return eval(k.subs[0], env) || eval(k.subs[1], env);
      case O::Exists:
        for (std::uint32_t v = 0; v < n_; ++v) {
          env[k.slot] = v;
          if (eval(k.subs[0], env)) return true;
        }
        return false;
    }
    return false;
  }

 private:
  KTerm compile(const Term& t) {
    KTerm k{};
    switch (t.kind()) {
      case Term::Kind::Variable:
        k.op = KTerm::Op::Slot;
        k.val = lookup(t.var());
        break;
      case Term::Kind::Literal:
        k.op = KTerm::Op::Const;
        k.val = alg_.indexOf(t.value());
        break;
      case Term::Kind::Application:
        k.op = KTerm::Op::App;
        k.table = &alg_.functionTable(t.functor());
        if (k.table->arity != t.args().size())
          throw SymbolError("arity mismatch for function " + t.functor());
        for (const auto& a : t.args()) k.args.push_back(compile(a));
        break;
    }
    return k;
  }

  std::uint32_t lookup(const Var& v) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
      if (it->first == v) return it->second;
    throw UsageError("unassigned variable " + v.str());
  }

  std::uint32_t eval(const KTerm& k, const std::vector<std::uint32_t>& env) const {
    switch (k.op) {
      case KTerm::Op::Slot:
        return env[k.val];
      case KTerm::Op::Const:
        return k.val;
      case KTerm::Op::App: {
        std::size_t idx = 0;
        for (const auto& a : k.args) idx = idx * n_ + eval(a, env);
        return k.table->results[idx];
      }
    }
    return 0;
  }

  const Algebra& alg_;
  const std::uint32_t n_;
  std::vector<std::pair<Var, std::uint32_t>> scope_;
  std::uint32_t slots_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Oracle

Oracle::Oracle(Universe u, OracleBudget budget, Engine engine)
    : universe_(std::move(u)), budget_(budget), engine_(engine) {
  if (algebra().kind() != AlgebraKind::Finite) engine_ = Engine::Reference;
}

bool Oracle::evalFormula(const Formula& f, const Assignment& asg) const {
  Assignment copy = asg;
  return Reference(universe_).formula(f, copy);
}

bool Oracle::counterModel(const Formula& a, const Formula* b) const {
  std::set<Var> fv = freeVars(a);
  if (b) {
    auto more = freeVars(*b);
    fv.insert(more.begin(), more.end());
  }
  const std::vector<Var> vars(fv.begin(), fv.end());
  const std::size_t n = universe_.values().size();
  if (vars.size() > budget_.maxFreeVars)
    throw BudgetExceeded("oracle query has " + std::to_string(vars.size()) + " free variables");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    total *= n;
    if (total > budget_.maxAssignments)
      throw BudgetExceeded("oracle query exceeds " + std::to_string(budget_.maxAssignments) +
                           " assignments");
  }

  std::vector<std::uint32_t> digits(vars.size(), 0);
  auto advance = [&]() {
    for (std::size_t i = vars.size(); i-- > 0;) {
      if (++digits[i] < n) return true;
      digits[i] = 0;
    }
    return false;
  };

  if (engine_ == Engine::Kernel) {
    Kernel kernel(algebra(), vars);
    const KFormula ka = kernel.compile(a);
    std::optional<KFormula> kb;
    if (b) kb = kernel.compile(*b);
    std::vector<std::uint32_t> env(kernel.slots(), 0);
    do {
      std::copy(digits.begin(), digits.end(), env.begin());
      if (kernel.eval(ka, env) && (!kb || !kernel.eval(*kb, env))) return true;
    } while (advance());
    return false;
  }

  Reference ref(universe_);
  Assignment asg;
  do {
    for (std::size_t i = 0; i < vars.size(); ++i)
      asg.insert_or_assign(vars[i], universe_.values()[digits[i]]);
    if (ref.formula(a, asg) && (!b || !ref.formula(*b, asg))) return true;
  } while (advance());
  return false;
}

bool Oracle::satisfiable(const Formula& f) const { return counterModel(f, nullptr); }

bool Oracle::entails(const Formula& psi, const Formula& phi) const {
  return !counterModel(psi, &phi);
}

bool Oracle::equivalent(const Formula& a, const Formula& b) const {
  return entails(a, b) && entails(b, a);
}

bool evalFormula(const Algebra& alg, const Formula& f, const Assignment& asg) {
  return Oracle(Universe::full(alg)).evalFormula(f, asg);
}

bool satisfiable(const Algebra& alg, const Formula& f) {
  return Oracle(Universe::full(alg)).satisfiable(f);
}

bool entails(const Algebra& alg, const Formula& psi, const Formula& phi) {
  return Oracle(Universe::full(alg)).entails(psi, phi);
}

bool equivalentF(const Algebra& alg, const Formula& a, const Formula& b) {
  return Oracle(Universe::full(alg)).equivalent(a, b);
}

// ---------------------------------------------------------------------------
// Deciders

template <class F>
Verdict OracleDecider::guarded(F&& query) const {
  try {
    return query() ? Verdict::DefinitelyTrue : Verdict::DefinitelyFalse;
  } catch (const BudgetExceeded&) {
  } catch (const EvalError&) {
  }
  failures_.fetch_add(1, std::memory_order_relaxed);
  return Verdict::Unknown;
}

Verdict OracleDecider::isConsistent(const State& s) const {
  if (s.isError()) return Verdict::Unknown;
  return guarded([&] { return oracle_.satisfiable(stateFormula(s)); });
}

Verdict OracleDecider::areEquivalent(const State& a, const State& b) const {
  if (a.isError() || b.isError()) return a == b ? Verdict::DefinitelyTrue : Verdict::Unknown;
  return guarded([&] { return oracle_.equivalent(stateFormula(a), stateFormula(b)); });
}

Verdict OracleDecider::entails(const Formula& psi, const Formula& phi) const {
  return guarded([&] { return oracle_.entails(psi, phi); });
}

std::optional<bool> groundTruth(const Formula& f, const Algebra& alg) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Bot:
      return false;
    case K::Top:
      return true;
    case K::Eq:
    case K::Atom: {
      std::vector<Value> args;
      for (const auto& t : f.terms()) {
        if (!t.isLit()) return std::nullopt;
        args.push_back(t.value());
      }
      try {
        return f.kind() == K::Eq ? args[0] == args[1] : alg.evalPred(f.predicate(), args);
      } catch (const SymbolError&) {
        return std::nullopt;
      }
    }
    case K::Not: {
      auto v = groundTruth(f.sub(), alg);
      if (!v) return std::nullopt;
      return !*v;
    }
    case K::And: {
      auto l = groundTruth(f.left(), alg);
      auto r = groundTruth(f.right(), alg);
      if ((l && !*l) || (r && !*r)) return false;
      if (l && r) return true;
      return std::nullopt;
    }
    case K::Or: {
      auto l = groundTruth(f.left(), alg);
      auto r = groundTruth(f.right(), alg);
      if ((l && *l) || (r && *r)) return true;
      if (l && r) return false;
      return std::nullopt;
    }
    case K::Exists:
      if (occurs(f.sub(), f.bound())) return std::nullopt;
      return groundTruth(f.sub(), alg);
  }
  return std::nullopt;
}

namespace {

bool mentionsPartial(const Term& t, const Algebra& alg) {
  if (!t.isApp()) return false;
  if (alg.isPartial(t.functor())) return true;
  for (const auto& a : t.args())
    if (mentionsPartial(a, alg)) return true;
  return false;
}

void flattenConjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.kind() == Formula::Kind::And) {
    flattenConjuncts(f.left(), out);
    flattenConjuncts(f.right(), out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

Verdict SyntacticDecider::isConsistent(const State& s) const {
  if (s.isError()) return Verdict::Unknown;
  const Substitution& theta = s.subst();
  bool allTrue = true;
  for (const auto& c : s.csp()) {
    std::optional<bool> v;
    try {
      v = groundTruth(applySubstFormula(theta, c, alg_), alg_);
    } catch (const EvalError&) {
      v.reset();
    }
    if (v && !*v) return Verdict::DefinitelyFalse;
    if (!v) allTrue = false;
  }
  if (!allTrue) return Verdict::Unknown;
  const auto range = theta.rangeVars();
  for (const auto& [x, t] : theta.bindings())
    if (range.count(x) || mentionsPartial(t, alg_)) return Verdict::Unknown;
  return Verdict::DefinitelyTrue;
}

Verdict SyntacticDecider::areEquivalent(const State& a, const State& b) const {
  return a == b ? Verdict::DefinitelyTrue : Verdict::Unknown;
}

Verdict SyntacticDecider::entails(const Formula& psi, const Formula& phi) const {
  if (phi.kind() == Formula::Kind::Top || psi.kind() == Formula::Kind::Bot) return Verdict::DefinitelyTrue;
  std::vector<Formula> parts;
  flattenConjuncts(psi, parts);
  for (const auto& p : parts)
    if (p == phi) return Verdict::DefinitelyTrue;
  return Verdict::Unknown;
}

std::unique_ptr<OracleDecider> finiteDecider(const Algebra& alg) {
  return std::make_unique<OracleDecider>(Oracle(Universe::full(alg)));
}

std::unique_ptr<SyntacticDecider> syntacticDecider(const Algebra& alg) {
  return std::make_unique<SyntacticDecider>(alg);
}

}  // namespace soundsearch
