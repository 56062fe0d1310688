#include "soundsearch/syntax.hpp"

#include "soundsearch/error.hpp"

namespace soundsearch {

std::string Var::str() const {
  return space_ == Space::Fresh ? "_u" + std::to_string(index_) : name_;
}

// ---------------------------------------------------------------------------
// Term

struct Term::Node {
  Kind kind;
  Var var;
  std::optional<Value> value;
  std::string functor;
  std::vector<Term> args;
  bool ground = true;
};

Term Term::variable(Var v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->var = std::move(v);
  n->ground = false;
  return Term(std::move(n));
}

Term Term::literal(Value v) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Literal;
  n->value = std::move(v);
  return Term(std::move(n));
}

Term Term::apply(std::string functor, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Application;
  n->functor = std::move(functor);
  for (const auto& a : args) n->ground = n->ground && a.isGround();
  n->args = std::move(args);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }

const Var& Term::var() const {
  if (node_->kind != Kind::Variable) throw UsageError("term " + str() + " is not a variable");
  return node_->var;
}

const Value& Term::value() const {
  if (node_->kind != Kind::Literal) throw UsageError("term " + str() + " is not a literal");
  return *node_->value;
}

const std::string& Term::functor() const {
  if (node_->kind != Kind::Application) throw UsageError("term " + str() + " is not an application");
  return node_->functor;
}

const std::vector<Term>& Term::args() const { return node_->args; }

bool Term::isGround() const { return node_->ground; }

bool Term::mentions(const Var& v) const {
  switch (node_->kind) {
    case Kind::Variable:
      return node_->var == v;
    case Kind::Literal:
      return false;
    case Kind::Application:
      for (const auto& a : node_->args)
        if (a.mentions(v)) return true;
      return false;
  }
  return false;
}

void Term::collectVars(std::set<Var>& out) const {
  if (node_->kind == Kind::Variable) {
    out.insert(node_->var);
  } else {
    for (const auto& a : node_->args) a.collectVars(out);
  }
}

namespace {

int infixLevel(const Term& t) {
  if (!t.isApp() || t.args().size() != 2) return 0;
  const auto& f = t.functor();
  if (f == "+" || f == "-") return 1;
  if (f == "*") return 2;
  return 0;
}

std::string termText(const Term& t, int ctx, bool rightOperand) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t.var().str();
    case Term::Kind::Literal:
      return t.value().str();
    case Term::Kind::Application: {
      if (int level = infixLevel(t)) {
        std::string s = termText(t.args()[0], level, false) + " " + t.functor() + " " +
                        termText(t.args()[1], level, true);
        bool wrap = ctx > level || (ctx == level && rightOperand);
        return wrap ? "(" + s + ")" : s;
      }
      std::string s = t.functor() + "(";
      for (std::size_t i = 0; i < t.args().size(); ++i) {
        if (i) s += ", ";
        s += termText(t.args()[i], 0, false);
      }
      return s + ")";
    }
  }
  return {};
}

}  // namespace

std::string Term::str() const { return termText(*this, 0, false); }

int compare(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return 0;
  if (a.node_->kind != b.node_->kind) return a.node_->kind < b.node_->kind ? -1 : 1;
  switch (a.node_->kind) {
    case Term::Kind::Variable: {
      auto c = a.node_->var <=> b.node_->var;
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Term::Kind::Literal:
      return compare(*a.node_->value, *b.node_->value);
    case Term::Kind::Application: {
      if (int c = a.node_->functor.compare(b.node_->functor)) return c < 0 ? -1 : 1;
      const auto& xs = a.node_->args;
      const auto& ys = b.node_->args;
      if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (int c = compare(xs[i], ys[i])) return c;
      return 0;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Kind kind;
  std::string predicate;
  std::vector<Term> terms;
  std::vector<Formula> subs;
  Var bound;
};


Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->predicate = std::move(predicate);
  n->terms = std::move(args);
  return Formula(std::move(n));
}

Formula Formula::eq(Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Eq;
  n->predicate = std::string(kEqualityPredicate);
  n->terms = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::bot() {
  static const Formula f = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Bot;
    return Formula(std::move(n));
  }();
  return f;
}

Formula Formula::top() {
  static const Formula f = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Top;
    return Formula(std::move(n));
  }();
  return f;
}

Formula Formula::negate(Formula f) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->subs = {std::move(f)};
  return Formula(std::move(n));
}

Formula Formula::conj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->subs = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::disj(Formula a, Formula b) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->subs = {std::move(a), std::move(b)};
  return Formula(std::move(n));
}

Formula Formula::exists(Var v, Formula body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Exists;
  n->bound = std::move(v);
  n->subs = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::conjunction(std::span<const Formula> parts) {
  if (parts.empty()) return top();
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = conj(parts[i], acc);
  return acc;
}

Formula Formula::disjunction(std::span<const Formula> parts) {
  if (parts.empty()) return bot();
  Formula acc = parts.back();
  for (std::size_t i = parts.size() - 1; i-- > 0;) acc = disj(parts[i], acc);
  return acc;
}

Formula::Kind Formula::kind() const { return node_->kind; }

bool Formula::isAtomic() const {
  auto k = node_->kind;
  return k == Kind::Atom || k == Kind::Eq || k == Kind::Bot || k == Kind::Top;
}

const std::string& Formula::predicate() const { return node_->predicate; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }

const Formula& Formula::sub() const {
  if (node_->kind != Kind::Not && node_->kind != Kind::Exists)
    throw UsageError("formula " + str() + " has no single operand");
  return node_->subs[0];
}

const Formula& Formula::left() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or)
    throw UsageError("formula " + str() + " is not binary");
  return node_->subs[0];
}

const Formula& Formula::right() const {
  if (node_->kind != Kind::And && node_->kind != Kind::Or)
    throw UsageError("formula " + str() + " is not binary");
  return node_->subs[1];
}

const Var& Formula::bound() const {
  if (node_->kind != Kind::Exists) throw UsageError("formula " + str() + " is not a quantifier");
  return node_->bound;
}

namespace {

std::string formulaText(const Formula& f, int ctx) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Bot:
      return "false";
    case K::Top:
      return "true";
    case K::Eq:
      return f.lhs().str() + " = " + f.rhs().str();
    case K::Atom: {
      const auto& ts = f.terms();
      if (ts.empty()) return f.predicate();
      std::string s = f.predicate() + "(" + ts[0].str();
      if (f.predicate() == kMembershipPredicate) {
        s += ", {";
        for (std::size_t i = 1; i < ts.size(); ++i) s += (i > 1 ? ", " : "") + ts[i].str();
        return s + "})";
      }
      for (std::size_t i = 1; i < ts.size(); ++i) s += ", " + ts[i].str();
      return s + ")";
    }
    case K::Not:
      return "~" + formulaText(f.sub(), 3);
    case K::And: {
      std::string s = formulaText(f.left(), 3) + " /\\ " + formulaText(f.right(), 2);
      return ctx > 2 ? "(" + s + ")" : s;
    }
    case K::Or: {
      std::string s = formulaText(f.left(), 2) + " \\/ " + formulaText(f.right(), 1);
      return ctx > 1 ? "(" + s + ")" : s;
    }
    case K::Exists: {
      const Formula& body = f.sub();
      bool binary = body.kind() == K::And || body.kind() == K::Or;
      std::string s = "exists " + f.bound().str() + " " +
                      (binary ? "(" + formulaText(body, 0) + ")" : formulaText(body, 0));
      return ctx > 0 ? "(" + s + ")" : s;
    }
  }
  return {};
}

}  // namespace

std::string Formula::str() const { return formulaText(*this, 0); }

int compare(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return 0;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return x.kind < y.kind ? -1 : 1;
  if (x.kind == Formula::Kind::Exists) {
    auto c = x.bound <=> y.bound;
    if (c != 0) return c < 0 ? -1 : 1;
  }
  if (int c = x.predicate.compare(y.predicate)) return c < 0 ? -1 : 1;
  if (x.terms.size() != y.terms.size()) return x.terms.size() < y.terms.size() ? -1 : 1;
  for (std::size_t i = 0; i < x.terms.size(); ++i)
    if (int c = compare(x.terms[i], y.terms[i])) return c;
  for (std::size_t i = 0; i < x.subs.size(); ++i)
    if (int c = compare(x.subs[i], y.subs[i])) return c;
  return 0;
}

// ---------------------------------------------------------------------------
// Variables

namespace {

void collectFree(const Formula& f, std::set<Var>& bound, std::set<Var>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::Eq: {
      std::set<Var> vs;
      for (const auto& t : f.terms()) t.collectVars(vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case K::Bot:
    case K::Top:
      return;
    case K::Not:
      collectFree(f.sub(), bound, out);
      return;
    case K::And:
    case K::Or:
      collectFree(f.left(), bound, out);
      collectFree(f.right(), bound, out);
      return;
    case K::Exists: {
      bool inserted = bound.insert(f.bound()).second;
      collectFree(f.sub(), bound, out);
      if (inserted) bound.erase(f.bound());
      return;
    }
  }
}

void collectAll(const Formula& f, std::set<Var>& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom:
    case K::Eq:
      for (const auto& t : f.terms()) t.collectVars(out);
      return;
    case K::Bot:
    case K::Top:
      return;
    case K::Not:
      collectAll(f.sub(), out);
      return;
    case K::And:
    case K::Or:
      collectAll(f.left(), out);
      collectAll(f.right(), out);
      return;
    case K::Exists:
      out.insert(f.bound());
      collectAll(f.sub(), out);
      return;
  }
}

Term replaceVar(const Term& t, const Var& from, const Var& to) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return t.var() == from ? Term::variable(to) : t;
    case Term::Kind::Literal:
      return t;
    case Term::Kind::Application: {
      if (!t.mentions(from)) return t;
      std::vector<Term> args;
      args.reserve(t.args().size());
      for (const auto& a : t.args()) args.push_back(replaceVar(a, from, to));
      return Term::apply(t.functor(), std::move(args));
    }
  }
  return t;
}

// Replaces occurrences of `from`; bound occurrences too when `binders` is set.
Formula replaceInFormula(const Formula& f, const Var& from, const Var& to, bool binders) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Atom: {
      std::vector<Term> ts;
      for (const auto& t : f.terms()) ts.push_back(replaceVar(t, from, to));
      return Formula::atom(f.predicate(), std::move(ts));
    }
    case K::Eq:
      return Formula::eq(replaceVar(f.lhs(), from, to), replaceVar(f.rhs(), from, to));
    case K::Bot:
    case K::Top:
      return f;
    case K::Not:
      return Formula::negate(replaceInFormula(f.sub(), from, to, binders));
    case K::And:
      return Formula::conj(replaceInFormula(f.left(), from, to, binders),
                           replaceInFormula(f.right(), from, to, binders));
    case K::Or:
      return Formula::disj(replaceInFormula(f.left(), from, to, binders),
                           replaceInFormula(f.right(), from, to, binders));
    case K::Exists:
      if (f.bound() == from) {
        if (!binders) return f;
        return Formula::exists(to, replaceInFormula(f.sub(), from, to, binders));
      }
      return Formula::exists(f.bound(), replaceInFormula(f.sub(), from, to, binders));
  }
  return f;
}

}  // namespace

std::set<Var> freeVars(const Formula& f) {
  std::set<Var> bound, out;
  collectFree(f, bound, out);
  return out;
}

std::set<Var> allVars(const Formula& f) {
  std::set<Var> out;
  collectAll(f, out);
  return out;
}

bool occurs(const Formula& f, const Var& v) { return allVars(f).count(v) > 0; }
bool occursFree(const Formula& f, const Var& v) { return freeVars(f).count(v) > 0; }

Formula substVar(const Formula& f, const Var& x, const Var& u) {
  if (x == u) return f;
  if (occurs(f, u))
    throw UsageError("substVar: " + u.str() + " already occurs in " + f.str());
  return replaceInFormula(f, x, u, false);
}

Term renameEverywhere(const Term& t, const Var& u, const Var& v) {
  if (u == v) return t;
  std::set<Var> vs;
  t.collectVars(vs);
  if (vs.count(v)) throw UsageError("renameEverywhere: " + v.str() + " already occurs in " + t.str());
  return replaceVar(t, u, v);
}

Formula renameEverywhere(const Formula& f, const Var& u, const Var& v) {
  if (u == v) return f;
  if (occurs(f, v)) throw UsageError("renameEverywhere: " + v.str() + " already occurs in " + f.str());
  return replaceInFormula(f, u, v, true);
}

std::pair<Var, FreshSupply> freshVar(FreshSupply supply) {
  Var v = supply.draw();
  return {v, supply};
}

// ---------------------------------------------------------------------------
// Well-formedness

void checkWellFormed(const Term& t, const Algebra& alg) {
  switch (t.kind()) {
    case Term::Kind::Variable:
      return;
    case Term::Kind::Literal:
      if (!alg.isMember(t.value()))
        throw SymbolError("literal " + t.value().str() + " does not belong to the algebra");
      return;
    case Term::Kind::Application: {
      if (!alg.hasFunction(t.functor())) throw SymbolError("unknown function symbol " + t.functor());
      if (auto arity = alg.functionArity(t.functor()); arity && *arity != t.args().size())
        throw SymbolError("arity mismatch for function " + t.functor() + ": expected " +
                          std::to_string(*arity) + ", got " + std::to_string(t.args().size()));
      for (const auto& a : t.args()) checkWellFormed(a, alg);
      return;
    }
  }
}

void checkWellFormed(const Formula& f, const Algebra& alg) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Bot:
    case K::Top:
      return;
    case K::Eq:
      checkWellFormed(f.lhs(), alg);
      checkWellFormed(f.rhs(), alg);
      return;
    case K::Atom: {
      if (f.predicate() == kMembershipPredicate) {
        if (f.terms().size() < 2) throw SymbolError("in(t, {...}) needs a nonempty set");
        for (std::size_t i = 1; i < f.terms().size(); ++i)
          if (!f.terms()[i].isLit()) throw SymbolError("in(t, {...}) set members must be values");
      } else {
        auto arity = alg.predicateArity(f.predicate());
        if (!arity) throw SymbolError("unknown predicate symbol " + f.predicate());
        if (*arity != f.terms().size())
          throw SymbolError("arity mismatch for predicate " + f.predicate() + ": expected " +
                            std::to_string(*arity) + ", got " + std::to_string(f.terms().size()));
      }
      for (const auto& t : f.terms()) checkWellFormed(t, alg);
      return;
    }
    case K::Not:
    case K::Exists:
      checkWellFormed(f.sub(), alg);
      return;
    case K::And:
    case K::Or:
      checkWellFormed(f.left(), alg);
      checkWellFormed(f.right(), alg);
      return;
  }
}

}  // namespace soundsearch
