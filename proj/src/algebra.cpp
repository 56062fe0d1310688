#include "soundsearch/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "soundsearch/error.hpp"

namespace soundsearch {

// ---------------------------------------------------------------------------
// Value

Value Value::integer(Integer v) {
  Value out;
  out.kind_ = Kind::Integer;
  out.int_ = std::move(v);
  return out;
}

Value Value::element(std::string name) {
  Value out;
  out.kind_ = Kind::Element;
  out.name_ = std::move(name);
  return out;
}

Value Value::ground(std::string functor, std::vector<Value> args) {
  Value out;
  out.kind_ = Kind::Ground;
  out.name_ = std::move(functor);
  if (!args.empty()) out.args_ = std::make_shared<const std::vector<Value>>(std::move(args));
  return out;
}

const Integer& Value::asInteger() const {
  if (kind_ != Kind::Integer) throw SymbolError("value " + str() + " is not an integer");
  return int_;
}

std::span<const Value> Value::args() const {
  if (!args_) return {};
  return {args_->data(), args_->size()};
}

std::string Value::str() const {
  switch (kind_) {
    case Kind::Integer:
      return int_.str();
    case Kind::Element:
      return name_;
    case Kind::Ground: {
      if (!args_) return name_;
      std::string out = name_ + "(";
      for (std::size_t i = 0; i < args_->size(); ++i) {
        if (i) out += ", ";
        out += (*args_)[i].str();
      }
      return out + ")";
    }
  }
  return {};
}

int compare(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return a.kind_ < b.kind_ ? -1 : 1;
  switch (a.kind_) {
    case Value::Kind::Integer:
      return a.int_ < b.int_ ? -1 : (b.int_ < a.int_ ? 1 : 0);
    case Value::Kind::Element:
      return a.name_.compare(b.name_) < 0 ? -1 : (a.name_ == b.name_ ? 0 : 1);
    case Value::Kind::Ground: {
      if (int c = a.name_.compare(b.name_)) return c < 0 ? -1 : 1;
      auto xs = a.args(), ys = b.args();
      if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (int c = compare(xs[i], ys[i])) return c;
      return 0;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Algebra construction

namespace {

std::size_t tableSize(std::size_t domain, std::size_t arity) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < arity; ++i) n *= domain;
  return n;
}

bool isIntegerToken(std::string_view t) {
  std::size_t i = (!t.empty() && t[0] == '-') ? 1 : 0;
  if (i == t.size()) return false;
  return std::all_of(t.begin() + static_cast<std::ptrdiff_t>(i), t.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; });
}

const std::map<std::string, std::size_t>& integerFunctions() {
  static const std::map<std::string, std::size_t> fns{
      {"+", 2}, {"-", 2}, {"*", 2}, {"pow", 2}, {"neg", 1}, {"div", 2}, {"mod", 2}};
  return fns;
}

const std::map<std::string, std::size_t>& integerPredicates() {
  static const std::map<std::string, std::size_t> preds{{"le", 2}, {"lt", 2}};
  return preds;
}

}  // namespace

Algebra Algebra::finite(std::vector<std::string> domain,
                        std::map<std::string, FunctionTable> functions,
                        std::map<std::string, PredicateTable> predicates) {
  if (domain.empty()) throw SymbolError("empty domain: a structure needs at least one element");
  Algebra alg;
  alg.kind_ = AlgebraKind::Finite;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    if (!alg.positions_.emplace(domain[i], static_cast<std::uint32_t>(i)).second)
      throw SymbolError("duplicate domain element '" + domain[i] + "'");
  }
  alg.domain_ = std::move(domain);
  const std::size_t n = alg.domain_.size();
  for (const auto& [name, table] : functions) {
    if (name == kEqualityPredicate || name == kMembershipPredicate)
      throw SymbolError("'" + name + "' is reserved");
    if (table.results.size() != tableSize(n, table.arity))
      throw SymbolError("function table for " + name + "/" + std::to_string(table.arity) +
                        " is not total");
    for (auto r : table.results)
      if (r >= n) throw SymbolError("function table for " + name + " maps outside the domain");
    alg.signature_.functions[name] = table.arity;
  }
  for (const auto& [name, table] : predicates) {
    if (name == kEqualityPredicate || name == kMembershipPredicate)
      throw SymbolError("'" + name + "' is reserved");
    if (table.truth.size() != tableSize(n, table.arity))
      throw SymbolError("predicate table for " + name + " has the wrong size");
    alg.signature_.predicates[name] = table.arity;
  }
  alg.functions_ = std::move(functions);
  alg.predicates_ = std::move(predicates);
  return alg;
}

Algebra Algebra::integers() {
  Algebra alg;
  alg.kind_ = AlgebraKind::Integer;
  alg.signature_.functions = integerFunctions();
  alg.signature_.predicates = integerPredicates();
  return alg;
}

Algebra Algebra::herbrand() {
  Algebra alg;
  alg.kind_ = AlgebraKind::Herbrand;
  alg.open_ = true;
  return alg;
}

Algebra Algebra::herbrand(Signature signature) {
  if (!signature.predicates.empty())
    throw SymbolError("a Herbrand algebra interprets no predicates besides = and in");
  Algebra alg;
  alg.kind_ = AlgebraKind::Herbrand;
  alg.signature_ = std::move(signature);
  return alg;
}

std::optional<std::size_t> Algebra::functionArity(const std::string& f) const {
  auto it = signature_.functions.find(f);
  if (it == signature_.functions.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Algebra::predicateArity(const std::string& p) const {
  auto it = signature_.predicates.find(p);
  if (it == signature_.predicates.end()) return std::nullopt;
  return it->second;
}

bool Algebra::hasFunction(const std::string& f) const {
  return open_ || signature_.functions.count(f) > 0;
}

bool Algebra::isPartial(const std::string& f) const {
  return kind_ == AlgebraKind::Integer && (f == "div" || f == "mod" || f == "pow");
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

std::size_t tupleIndex(const Algebra& alg, std::span<const Value> args) {
  std::size_t idx = 0;
  for (const auto& a : args) idx = idx * alg.domainSize() + alg.indexOf(a);
  return idx;
}

void checkArity(const std::string& kind, const std::string& name, std::size_t expected,
                std::size_t got) {
  if (expected != got)
    throw SymbolError("arity mismatch for " + kind + " " + name + ": expected " +
                      std::to_string(expected) + ", got " + std::to_string(got));
}

Value evalIntegerFun(const std::string& f, std::span<const Value> args) {
  const Integer& a = args[0].asInteger();
  if (f == "neg") return Value::integer(-a);
  const Integer& b = args[1].asInteger();
  if (f == "+") return Value::integer(a + b);
  if (f == "-") return Value::integer(a - b);
  if (f == "*") return Value::integer(a * b);
  if (f == "pow") {
    if (b < 0) throw EvalError("negative exponent in pow");
    if (b > 4096) throw EvalError("exponent too large in pow");
    return Value::integer(boost::multiprecision::pow(a, b.convert_to<unsigned>()));
  }
  if (b == 0) throw EvalError("division by zero in " + f);
  if (f == "div") return Value::integer(a / b);
  return Value::integer(a % b);
}

}  // namespace

Value Algebra::evalFun(const std::string& f, std::span<const Value> args) const {
  for (const auto& a : args)
    if (!isMember(a)) throw SymbolError("value " + a.str() + " does not belong to this algebra");
  switch (kind_) {
    case AlgebraKind::Finite: {
      auto it = functions_.find(f);
      if (it == functions_.end()) throw SymbolError("unknown function symbol " + f);
      checkArity("function", f, it->second.arity, args.size());
      return elementAt(it->second.results[tupleIndex(*this, args)]);
    }
    case AlgebraKind::Integer: {
      auto arity = functionArity(f);
      if (!arity) throw SymbolError("unknown function symbol " + f);
      checkArity("function", f, *arity, args.size());
      return evalIntegerFun(f, args);
    }
    case AlgebraKind::Herbrand: {
      if (!open_) {
        auto arity = functionArity(f);
        if (!arity) throw SymbolError("unknown function symbol " + f);
        checkArity("function", f, *arity, args.size());
      }
      return Value::ground(f, std::vector<Value>(args.begin(), args.end()));
    }
  }
  throw SymbolError("unknown algebra kind");
}

bool Algebra::evalPred(const std::string& p, std::span<const Value> args) const {
  for (const auto& a : args)
    if (!isMember(a)) throw SymbolError("value " + a.str() + " does not belong to this algebra");
  if (p == kEqualityPredicate) {
    checkArity("predicate", p, 2, args.size());
    return args[0] == args[1];
  }
  if (p == kMembershipPredicate) {
    if (args.empty()) throw SymbolError("in/k needs at least one argument");
    return std::any_of(args.begin() + 1, args.end(), [&](const Value& v) { return v == args[0]; });
  }
  switch (kind_) {
    case AlgebraKind::Finite: {
      auto it = predicates_.find(p);
      if (it == predicates_.end()) throw SymbolError("unknown predicate symbol " + p);
      checkArity("predicate", p, it->second.arity, args.size());
      return it->second.truth[tupleIndex(*this, args)];
    }
    case AlgebraKind::Integer: {
      auto arity = predicateArity(p);
      if (!arity) throw SymbolError("unknown predicate symbol " + p);
      checkArity("predicate", p, *arity, args.size());
      const Integer& a = args[0].asInteger();
      const Integer& b = args[1].asInteger();
      return p == "le" ? a <= b : a < b;
    }
    case AlgebraKind::Herbrand:
      throw SymbolError("unknown predicate symbol " + p);
  }
  return false;
}

std::vector<Value> Algebra::enumerateDomain() const {
  if (!domainEnumerable()) throw UnsupportedOperation("domain of this algebra is not enumerable");
  std::vector<Value> out;
  out.reserve(domain_.size());
  for (const auto& name : domain_) out.push_back(Value::element(name));
  return out;
}

std::optional<Value> Algebra::literal(std::string_view token) const {
  switch (kind_) {
    case AlgebraKind::Finite:
      if (positions_.count(std::string(token))) return Value::element(std::string(token));
      return std::nullopt;
    case AlgebraKind::Integer:
      if (isIntegerToken(token)) return Value::integer(Integer(std::string(token)));
      return std::nullopt;
    case AlgebraKind::Herbrand: {
      std::string name(token);
      if (!isIntegerToken(token)) return std::nullopt;
      if (open_ || functionArity(name) == std::optional<std::size_t>(0)) return Value::ground(name);
      return std::nullopt;
    }
  }
  return std::nullopt;
}

bool Algebra::isMember(const Value& v) const {
  switch (kind_) {
    case AlgebraKind::Finite:
      return v.kind() == Value::Kind::Element && positions_.count(v.name()) > 0;
    case AlgebraKind::Integer:
      return v.kind() == Value::Kind::Integer;
    case AlgebraKind::Herbrand: {
      if (v.kind() != Value::Kind::Ground) return false;
      if (!open_ && functionArity(v.name()) != std::optional<std::size_t>(v.args().size()))
        return false;
      return std::all_of(v.args().begin(), v.args().end(),
                         [&](const Value& a) { return isMember(a); });
    }
  }
  return false;
}

std::uint32_t Algebra::indexOf(const Value& v) const {
  if (v.kind() != Value::Kind::Element) throw SymbolError("value " + v.str() + " is not an element");
  auto it = positions_.find(v.name());
  if (it == positions_.end()) throw SymbolError("unknown element " + v.name());
  return it->second;
}

const FunctionTable& Algebra::functionTable(const std::string& f) const {
  auto it = functions_.find(f);
  if (it == functions_.end()) throw SymbolError("unknown function symbol " + f);
  return it->second;
}

const PredicateTable& Algebra::predicateTable(const std::string& p) const {
  auto it = predicates_.find(p);
  if (it == predicates_.end()) throw SymbolError("unknown predicate symbol " + p);
  return it->second;
}

std::optional<Algebra> Algebra::restrictTo(const std::vector<std::uint32_t>& keep) const {
  if (kind_ != AlgebraKind::Finite) throw UnsupportedOperation("restrictTo needs a finite algebra");
  if (keep.empty()) return std::nullopt;
  std::vector<std::int64_t> remap(domain_.size(), -1);
  std::vector<std::string> names;
  for (auto k : keep) {
    if (k >= domain_.size() || remap[k] >= 0) return std::nullopt;
    remap[k] = static_cast<std::int64_t>(names.size());
    names.push_back(domain_[k]);
  }
  const std::size_t n = domain_.size(), m = names.size();
  auto forEachTuple = [&](std::size_t arity, auto&& fn) {
    std::vector<std::uint32_t> tuple(arity, 0);
    const std::size_t count = tableSize(m, arity);
    for (std::size_t t = 0; t < count; ++t) {
      std::size_t rest = t, oldIdx = 0;
      for (std::size_t i = arity; i-- > 0;) {
        tuple[i] = keep[rest % m];
        rest /= m;
      }
      for (auto e : tuple) oldIdx = oldIdx * n + e;
      fn(oldIdx);
    }
  };
  std::map<std::string, FunctionTable> fns;
  for (const auto& [name, table] : functions_) {
    FunctionTable out{table.arity, {}};
    bool closed = true;
    forEachTuple(table.arity, [&](std::size_t oldIdx) {
      std::int64_t r = remap[table.results[oldIdx]];
      if (r < 0) closed = false;
      out.results.push_back(static_cast<std::uint32_t>(std::max<std::int64_t>(r, 0)));
    });
    if (!closed) return std::nullopt;
    fns.emplace(name, std::move(out));
  }
  std::map<std::string, PredicateTable> preds;
  for (const auto& [name, table] : predicates_) {
    PredicateTable out{table.arity, {}};
    forEachTuple(table.arity, [&](std::size_t oldIdx) { out.truth.push_back(table.truth[oldIdx]); });
    preds.emplace(name, std::move(out));
  }
  return Algebra::finite(std::move(names), std::move(fns), std::move(preds));
}

bool operator==(const Algebra& a, const Algebra& b) {
  return a.kind_ == b.kind_ && a.open_ == b.open_ && a.signature_ == b.signature_ &&
         a.domain_ == b.domain_ && a.functions_ == b.functions_ && a.predicates_ == b.predicates_;
}

// ---------------------------------------------------------------------------
// Algebra-spec text format

namespace {

class SpecLine {
 public:
  SpecLine(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ + 1); }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool atEnd() {
    skipSpace();
    return pos_ >= text_.size();
  }
  bool accept(std::string_view s) {
    skipSpace();
    if (text_.substr(pos_, s.size()) == s) {
      pos_ += s.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }
  std::string name() {
    skipSpace();
    std::size_t start = pos_;
    if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
        ++pos_;
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] != '>') {
        ++pos_;
      } else {
        break;
      }
    }
    if (start == pos_ || (pos_ - start == 1 && text_[start] == '-')) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }
  std::size_t number() {
    skipSpace();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an arity");
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }
  // "(a, b)" or, for unary tuples when allowed, a bare name.
  std::vector<std::string> tuple(std::size_t arity, bool bareUnary) {
    std::vector<std::string> out;
    if (bareUnary && arity == 1 && !(skipSpace(), pos_ < text_.size() && text_[pos_] == '(')) {
      out.push_back(name());
      return out;
    }
    expect("(");
    if (accept(")")) return out;
    do {
      out.push_back(name());
    } while (accept(","));
    expect(")");
    return out;
  }
  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace

Algebra parseAlgebraSpec(std::string_view text) {
  std::vector<std::string> domain;
  bool sawDomain = false;
  std::map<std::string, std::uint32_t> positions;
  struct PendingFun {
    std::size_t arity, line;
    std::map<std::size_t, std::uint32_t> entries;
  };
  std::map<std::string, PendingFun> funs;
  std::map<std::string, PredicateTable> preds;

  auto encode = [&](SpecLine& ln, const std::vector<std::string>& tuple) {
    std::size_t idx = 0;
    for (const auto& e : tuple) {
      auto it = positions.find(e);
      if (it == positions.end()) ln.fail("unknown element '" + e + "'");
      idx = idx * domain.size() + it->second;
    }
    return idx;
  };

  std::size_t lineNo = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++lineNo;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    SpecLine ln(raw, lineNo);
    if (ln.atEnd()) {
      if (end == text.size()) break;
      continue;
    }
    if (ln.accept("domain:")) {
      if (sawDomain) ln.fail("duplicate domain line");
      sawDomain = true;
      while (!ln.atEnd()) {
        std::string e = ln.name();
        if (!positions.emplace(e, static_cast<std::uint32_t>(domain.size())).second)
          ln.fail("duplicate domain element '" + e + "'");
        domain.push_back(e);
      }
      if (domain.empty()) ln.fail("empty domain: a structure needs at least one element");
    } else if (ln.accept("fun")) {
      if (!sawDomain) ln.fail("'domain:' must come before tables");
      std::string f = ln.name();
      ln.expect("/");
      std::size_t arity = ln.number();
      ln.expect(":");
      if (funs.count(f)) ln.fail("duplicate function symbol '" + f + "'");
      PendingFun pending{arity, lineNo, {}};
      while (!ln.atEnd()) {
        auto tuple = ln.tuple(arity, false);
        if (tuple.size() != arity) ln.fail("tuple arity does not match " + f + "/" + std::to_string(arity));
        ln.expect("->");
        std::string result = ln.name();
        auto idx = encode(ln, tuple);
        auto it = positions.find(result);
        if (it == positions.end()) ln.fail("unknown element '" + result + "'");
        if (!pending.entries.emplace(idx, it->second).second)
          ln.fail("duplicate clause for " + f);
      }
      funs.emplace(f, std::move(pending));
    } else if (ln.accept("pred")) {
      if (!sawDomain) ln.fail("'domain:' must come before tables");
      std::string p = ln.name();
      ln.expect("/");
      std::size_t arity = ln.number();
      ln.expect(":");
      if (preds.count(p)) ln.fail("duplicate predicate symbol '" + p + "'");
      PredicateTable table{arity, std::vector<bool>(tableSize(domain.size(), arity), false)};
      while (!ln.atEnd()) {
        auto tuple = ln.tuple(arity, true);
        if (tuple.size() != arity) ln.fail("tuple arity does not match " + p + "/" + std::to_string(arity));
        table.truth[encode(ln, tuple)] = true;
      }
      preds.emplace(p, std::move(table));
    } else {
      ln.fail("expected 'domain:', 'fun' or 'pred'");
    }
    if (end == text.size()) break;
  }
  if (!sawDomain) throw ParseError("missing 'domain:' line", lineNo, 1);

  std::map<std::string, FunctionTable> tables;
  for (auto& [f, pending] : funs) {
    const std::size_t size = tableSize(domain.size(), pending.arity);
    if (pending.entries.size() != size) {
      for (std::size_t i = 0; i < size; ++i) {
        if (pending.entries.count(i)) continue;
        std::vector<std::string> missing(pending.arity);
        std::size_t rest = i;
        for (std::size_t k = pending.arity; k-- > 0;) {
          missing[k] = domain[rest % domain.size()];
          rest /= domain.size();
        }
        std::string tuple;
        for (std::size_t k = 0; k < missing.size(); ++k) tuple += (k ? "," : "") + missing[k];
        throw ParseError("function table for " + f + "/" + std::to_string(pending.arity) +
                             " is not total: missing (" + tuple + ")",
                         pending.line, 1);
      }
    }
    FunctionTable table{pending.arity, {}};
    for (auto& [idx, r] : pending.entries) table.results.push_back(r);
    tables.emplace(f, std::move(table));
  }
  return Algebra::finite(std::move(domain), std::move(tables), std::move(preds));
}

std::string printAlgebraSpec(const Algebra& alg) {
  if (alg.kind() != AlgebraKind::Finite)
    throw UnsupportedOperation("only finite algebras have a spec text form");
  const auto& names = alg.elementNames();
  const std::size_t n = names.size();
  auto tupleText = [&](std::size_t idx, std::size_t arity) {
    std::vector<std::string> parts(arity);
    for (std::size_t k = arity; k-- > 0;) {
      parts[k] = names[idx % n];
      idx /= n;
    }
    std::string out = "(";
    for (std::size_t k = 0; k < arity; ++k) out += (k ? "," : "") + parts[k];
    return out + ")";
  };
  std::ostringstream os;
  os << "domain:";
  for (const auto& e : names) os << ' ' << e;
  os << '\n';
  for (const auto& [f, table] : alg.functionTables()) {
    os << "fun " << f << '/' << table.arity << ':';
    for (std::size_t i = 0; i < table.results.size(); ++i)
      os << ' ' << tupleText(i, table.arity) << "->" << names[table.results[i]];
    os << '\n';
  }
  for (const auto& [p, table] : alg.predicateTables()) {
    os << "pred " << p << '/' << table.arity << ':';
    for (std::size_t i = 0; i < table.truth.size(); ++i)
      if (table.truth[i]) os << ' ' << tupleText(i, table.arity);
    os << '\n';
  }
  return os.str();
}

}  // namespace soundsearch
