#include "soundsearch/infer.hpp"

#include <algorithm>
#include <map>

#include "soundsearch/error.hpp"
#include "soundsearch/oracle.hpp"

namespace soundsearch {

// ---------------------------------------------------------------------------
// InferOp

InferOp InferOp::raw(std::string name, SetFn fn, OpAlgebra algebra) {
  InferOp op;
  op.name_ = std::move(name);
  op.algebra_ = algebra;
  op.set_ = std::move(fn);
  return op;
}

InferOp InferOp::lifted(std::string name, CoreFn core, OpAlgebra algebra) {
  InferOp op;
  op.name_ = std::move(name);
  op.algebra_ = algebra;
  op.core_ = std::move(core);
  return op;
}

InferResult InferOp::run(const StateSet& s) const {
  if (!core_) return set_(s);
  InferResult out;
  for (const auto& st : s) {
    InferResult r = core_(st);
    out.converged = out.converged && r.converged;
    out.states.append(r.states);
  }
  return out;
}

InferOp liftPointwise(std::string name, std::function<StateSet(const State&)> pw, OpAlgebra algebra) {
  return InferOp::lifted(
      std::move(name),
      [pw = std::move(pw)](const State& s) -> InferResult {
        if (s.isError()) return {StateSet{s}, true};
        try {
          return {pw(s), true};
        } catch (const EvalError&) {
          return {StateSet{State::error()}, true};
        }
      },
      algebra);
}

namespace {

OpAlgebra combine(OpAlgebra a, OpAlgebra b) {
  if (a == OpAlgebra::Any) return b;
  if (b == OpAlgebra::Any || a == b) return a;
  throw UsageError("pipeline mixes integer-only and Herbrand-only operators");
}

}  // namespace

// ---------------------------------------------------------------------------
// Identity and normalization

InferOp identityInfer() {
  return liftPointwise("id", [](const State& s) { return StateSet{s}; });
}

InferOp normalizeInfer(const Algebra& alg) {
  return liftPointwise("normalize", [alg](const State& s) -> StateSet {
    Csp csp = s.csp();
    Substitution theta = s.subst();
    while (true) {
      std::vector<Formula> kept;
      std::vector<std::pair<Var, Term>> solved;
      for (const auto& c : csp) {
        Formula g = applySubstFormula(theta, c, alg);
        auto truth = groundTruth(g, alg);
        if (truth && !*truth) return {};
        if (truth) continue;
        if (g.kind() == Formula::Kind::Eq) {
          const Term& l = g.lhs();
          const Term& r = g.rhs();
          const bool lv = l.isVar() && r.isLit() && !theta.binds(l.var());
          const bool rv = r.isVar() && l.isLit() && !theta.binds(r.var());
          if ((lv || rv) && solved.empty()) {
            solved.emplace_back(lv ? l.var() : r.var(), lv ? r : l);
            continue;
          }
        }
        kept.push_back(std::move(g));
      }
      csp = Csp(std::move(kept));
      if (solved.empty()) break;
      Substitution step;
      step.bind(solved[0].first, solved[0].second);
      Substitution next;
      for (const auto& [x, t] : theta.bindings()) next.bind(x, applySubst(step, t, alg));
      next.bind(solved[0].first, solved[0].second);
      theta = std::move(next);
    }
    return StateSet{State::pair(std::move(csp), std::move(theta))};
  });
}

// ---------------------------------------------------------------------------
// Unification

namespace {

// Herbrand values become explicit applications so that unification can
// decompose them; other literals stay opaque.
Term expandGround(const Term& t, const Algebra& alg) {
  if (alg.kind() != AlgebraKind::Herbrand) return t;
  if (t.isLit()) {
    std::vector<Term> args;
    for (const auto& a : t.value().args()) args.push_back(expandGround(Term::literal(a), alg));
    return Term::apply(t.value().name(), std::move(args));
  }
  if (t.isApp()) {
    std::vector<Term> args;
    for (const auto& a : t.args()) args.push_back(expandGround(a, alg));
    return Term::apply(t.functor(), std::move(args));
  }
  return t;
}

Term replaceVar(const Term& t, const Var& x, const Term& by) {
  if (t.isVar()) return t.var() == x ? by : t;
  if (!t.isApp() || !t.mentions(x)) return t;
  std::vector<Term> args;
  for (const auto& a : t.args()) args.push_back(replaceVar(a, x, by));
  return Term::apply(t.functor(), std::move(args));
}

enum class UnifyStatus { Solved, Clash, Stuck };

class Unifier {
 public:
  explicit Unifier(bool decompose) : decompose_(decompose) {}

  UnifyStatus run(std::vector<std::pair<Term, Term>> work) {
    while (!work.empty()) {
      auto [a, b] = std::move(work.back());
      work.pop_back();
      a = walk(a);
      b = walk(b);
      if (a == b) continue;
      if (a.isVar()) {
        if (!bind(a.var(), b)) return UnifyStatus::Clash;
      } else if (b.isVar()) {
        if (!bind(b.var(), a)) return UnifyStatus::Clash;
      } else if (a.isLit() && b.isLit()) {
        return UnifyStatus::Clash;
      } else if (decompose_ && a.isApp() && b.isApp()) {
        if (a.functor() != b.functor() || a.args().size() != b.args().size()) return UnifyStatus::Clash;
        for (std::size_t i = a.args().size(); i-- > 0;) work.emplace_back(a.args()[i], b.args()[i]);
      } else {
        return decompose_ ? UnifyStatus::Clash : UnifyStatus::Stuck;
      }
    }
    return UnifyStatus::Solved;
  }

  const std::vector<std::pair<Var, Term>>& bindings() const { return sigma_; }

 private:
  Term walk(const Term& t) const {
    Term out = t;
    for (const auto& [x, r] : sigma_) out = replaceVar(out, x, r);
    return out;
  }

  bool bind(const Var& x, const Term& t) {
    if (t.mentions(x)) return false;
    for (auto& [y, r] : sigma_) r = replaceVar(r, x, t);
    sigma_.emplace_back(x, t);
    return true;
  }

  bool decompose_;
  std::vector<std::pair<Var, Term>> sigma_;
};

}  // namespace

InferOp unifyInfer(const Algebra& alg) {
  return liftPointwise(
      "unify",
      [alg](const State& s) -> StateSet {
        // Processed in list order: bindings of the substitution first, then
        // the store's equations in canonical order.
        std::vector<std::pair<Term, Term>> eqs;
        for (const auto& [x, t] : s.subst().bindings())
          eqs.emplace_back(Term::variable(x), expandGround(t, alg));
        std::vector<Formula> rest;
        for (const auto& c : s.csp()) {
          if (c.kind() == Formula::Kind::Eq)
            eqs.emplace_back(expandGround(c.lhs(), alg), expandGround(c.rhs(), alg));
          else
            rest.push_back(c);
        }
        std::reverse(eqs.begin(), eqs.end());
        Unifier u(alg.kind() == AlgebraKind::Herbrand);
        switch (u.run(std::move(eqs))) {
          case UnifyStatus::Clash:
            return {};
          case UnifyStatus::Stuck:
            return StateSet{s};
          case UnifyStatus::Solved:
            break;
        }
        Substitution theta;
        for (const auto& [x, t] : u.bindings()) theta.bind(x, normalizeTerm(t, alg));
        return StateSet{State::pair(Csp(std::move(rest)), std::move(theta))};
      },
      OpAlgebra::Herbrand);
}

// ---------------------------------------------------------------------------
// Quadratic equations

namespace {

std::optional<Var> squaredVar(const Term& t) {
  if (!t.isApp() || t.args().size() != 2) return std::nullopt;
  const Term& a = t.args()[0];
  const Term& b = t.args()[1];
  if (!a.isVar()) return std::nullopt;
  if (t.functor() == "*" && b.isVar() && b.var() == a.var()) return a.var();
  if (t.functor() == "pow" && b.isLit() && b.value().kind() == Value::Kind::Integer &&
      b.value().asInteger() == 2)
    return a.var();
  return std::nullopt;
}

std::optional<Integer> integerLit(const Term& t) {
  if (t.isLit() && t.value().kind() == Value::Kind::Integer) return t.value().asInteger();
  return std::nullopt;
}

}  // namespace

InferOp quadraticInfer(const Algebra& alg) {
  (void)alg;
  return liftPointwise(
      "quadratic",
      [](const State& s) -> StateSet {
        std::vector<Formula> out;
        for (const auto& c : s.csp()) {
          if (c.kind() == Formula::Kind::Eq) {
            auto x = squaredVar(c.lhs());
            auto k = integerLit(c.rhs());
            if (!x || !k) {
              x = squaredVar(c.rhs());
              k = integerLit(c.lhs());
            }
            if (x && k) {
              if (*k < 0) return {};
              Integer root = boost::multiprecision::sqrt(*k);
              if (root * root != *k) return {};
              const Term xv = Term::variable(*x);
              if (root == 0) {
                out.push_back(Formula::eq(xv, Term::literal(Value::integer(0))));
              } else {
                out.push_back(Formula::disj(Formula::eq(xv, Term::literal(Value::integer(root))),
                                            Formula::eq(xv, Term::literal(Value::integer(-root)))));
              }
              continue;
            }
          }
          out.push_back(c);
        }
        return StateSet{State::pair(Csp(std::move(out)), s.subst())};
      },
      OpAlgebra::Integer);
}

// ---------------------------------------------------------------------------
// Case splitting

InferOp caseSplitInfer() {
  return liftPointwise("split", [](const State& s) -> StateSet {
    for (const auto& c : s.csp()) {
      if (c.kind() != Formula::Kind::Or) continue;
      StateSet out;
      for (const Formula* branch : {&c.left(), &c.right()}) {
        Csp csp = s.csp();
        csp.erase(c);
        csp.insert(*branch);
        out.push(State::pair(std::move(csp), s.subst()));
      }
      return out;
    }
    return StateSet{s};
  });
}

// ---------------------------------------------------------------------------
// Ranked domain splitting

std::optional<Ranking> parseRanking(std::string_view name) {
  if (name == "value") return Ranking::Value;
  if (name == "neg") return Ranking::Negated;
  if (name == "order") return Ranking::Order;
  if (name == "const") return Ranking::Constant;
  return std::nullopt;
}

std::string_view rankingName(Ranking r) {
  switch (r) {
    case Ranking::Value:
      return "value";
    case Ranking::Negated:
      return "neg";
    case Ranking::Order:
      return "order";
    case Ranking::Constant:
      return "const";
  }
  return "?";
}

namespace {

Rational naturalScore(const Value& v, const Algebra& alg) {
  switch (v.kind()) {
    case Value::Kind::Integer:
      return Rational(v.asInteger());
    case Value::Kind::Element:
      return Rational(alg.indexOf(v));
    case Value::Kind::Ground:
      return Rational(0);
  }
  return Rational(0);
}

Rational score(Ranking r, const Value& v, std::size_t position, const Algebra& alg) {
  switch (r) {
    case Ranking::Value:
      return naturalScore(v, alg);
    case Ranking::Negated:
      return -naturalScore(v, alg);
    case Ranking::Order:
      return -Rational(position);
    case Ranking::Constant:
      return Rational(0);
  }
  return Rational(0);
}

bool isDomainConstraint(const Formula& f) {
  if (f.kind() != Formula::Kind::Atom || f.predicate() != kMembershipPredicate) return false;
  const auto& ts = f.terms();
  if (ts.empty() || !ts[0].isVar()) return false;
  return std::all_of(ts.begin() + 1, ts.end(), [](const Term& t) { return t.isLit(); });
}

Formula membership(const Term& x, const std::vector<Value>& values) {
  std::vector<Term> args{x};
  for (const auto& v : values) args.push_back(Term::literal(v));
  return Formula::atom(std::string(kMembershipPredicate), std::move(args));
}

}  // namespace

InferOp domainSplitInfer(const Algebra& alg, Ranking ranking, std::optional<Rational> threshold) {
  std::string name = "domsplit(rank=" + std::string(rankingName(ranking));
  if (threshold) name += ",thr=" + threshold->str();
  name += ")";
  return liftPointwise(std::move(name), [alg, ranking, threshold](const State& s) -> StateSet {
    for (const auto& c : s.csp()) {
      if (!isDomainConstraint(c)) continue;
      std::vector<Value> dom;
      for (std::size_t i = 1; i < c.terms().size(); ++i) {
        const Value& v = c.terms()[i].value();
        if (std::find(dom.begin(), dom.end(), v) == dom.end()) dom.push_back(v);
      }
      if (dom.size() < 2) continue;
      std::vector<Rational> scores;
      for (std::size_t i = 0; i < dom.size(); ++i) scores.push_back(score(ranking, dom[i], i, alg));
      std::vector<bool> good(dom.size(), false);
      if (threshold) {
        for (std::size_t i = 0; i < dom.size(); ++i) good[i] = scores[i] >= *threshold;
      } else {
        std::vector<std::size_t> order(dom.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
        for (std::size_t i = 0; i < (dom.size() + 1) / 2; ++i) good[order[i]] = true;
      }
      std::vector<Value> dGood, dBad;
      for (std::size_t i = 0; i < dom.size(); ++i) (good[i] ? dGood : dBad).push_back(dom[i]);
      if (dGood.empty() || dBad.empty()) return StateSet{s};
      StateSet out;
      for (const auto* part : {&dGood, &dBad}) {
        Csp csp = s.csp();
        csp.erase(c);
        csp.insert(membership(c.terms()[0], *part));
        out.push(State::pair(std::move(csp), s.subst()));
      }
      return out;
    }
    return StateSet{s};
  });
}

// ---------------------------------------------------------------------------
// Combinators

InferOp composeInfer(const InferOp& first, const InferOp& second) {
  const OpAlgebra algebra = combine(first.algebra(), second.algebra());
  std::string name = first.name() + ";" + second.name();
  if (first.isLifted() && second.isLifted()) {
    return InferOp::lifted(
        std::move(name),
        [first, second](const State& s) {
          InferResult a = first.pointwiseCore()(s);
          InferResult b = second.run(a.states);
          b.converged = a.converged && b.converged;
          return b;
        },
        algebra);
  }
  return InferOp::raw(
      std::move(name),
      [first, second](const StateSet& s) {
        InferResult a = first.run(s);
        InferResult b = second.run(a.states);
        b.converged = a.converged && b.converged;
        return b;
      },
      algebra);
}

namespace {

InferResult iterate(const InferOp& op, StateSet cur, unsigned maxRounds) {
  bool converged = true;
  for (unsigned round = 0; round < maxRounds; ++round) {
    InferResult next = op.run(cur);
    converged = converged && next.converged;
    if (next.states == cur) return {std::move(cur), converged};
    cur = std::move(next.states);
  }
  return {std::move(cur), false};
}

}  // namespace

InferOp fixpointInfer(const InferOp& op, unsigned maxRounds) {
  if (maxRounds < 1) throw UsageError("fix needs at least one round");
  std::string name = "fix(" + op.name() + "," + std::to_string(maxRounds) + ")";
  if (op.isLifted()) {
    return InferOp::lifted(
        std::move(name), [op, maxRounds](const State& s) { return iterate(op, StateSet{s}, maxRounds); },
        op.algebra());
  }
  return InferOp::raw(
      std::move(name), [op, maxRounds](const StateSet& s) { return iterate(op, s, maxRounds); },
      op.algebra());
}

InferOp regroupFixture() {
  return InferOp::raw("regroup-fixture", [](const StateSet& s) {
    std::vector<Substitution> keys;
    std::vector<std::vector<Formula>> groups;
    std::vector<std::size_t> slot(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].isError()) continue;
      std::size_t k = 0;
      while (k < keys.size() && !(keys[k] == s[i].subst())) ++k;
      if (k == keys.size()) {
        keys.push_back(s[i].subst());
        groups.emplace_back();
      }
      groups[k].push_back(Formula::conjunction(s[i].csp().formulas()));
      slot[i] = k;
    }
    InferResult out;
    std::vector<bool> emitted(keys.size(), false);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i].isError()) {
        out.states.push(s[i]);
        continue;
      }
      const std::size_t k = slot[i];
      if (emitted[k]) continue;
      emitted[k] = true;
      if (groups[k].size() == 1) {
        out.states.push(s[i]);
      } else {
        out.states.push(State::pair(Csp{Formula::disjunction(groups[k])}, keys[k]));
      }
    }
    return out;
  });
}

}  // namespace soundsearch
