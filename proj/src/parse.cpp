#include <cctype>

#include "soundsearch/error.hpp"
#include "soundsearch/syntax.hpp"

namespace soundsearch {

namespace {

enum class Tok { End, Ident, Int, LParen, RParen, LBrace, RBrace, Comma, Eq, Not, And, Or, Plus, Minus, Star };

struct Token {
  Tok kind;
  std::string text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", pos_});
        return out;
      }
      const std::size_t start = pos_;
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < src_.size() &&
               (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          ++pos_;
        out.push_back({Tok::Ident, std::string(src_.substr(start, pos_ - start)), start});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        out.push_back({Tok::Int, std::string(src_.substr(start, pos_ - start)), start});
        continue;
      }
      auto two = src_.substr(pos_, 2);
      if (two == "/\\") {
        pos_ += 2;
        out.push_back({Tok::And, "/\\", start});
        continue;
      }
      if (two == "\\/") {
        pos_ += 2;
        out.push_back({Tok::Or, "\\/", start});
        continue;
      }
      Tok kind;
      switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case ',': kind = Tok::Comma; break;
        case '=': kind = Tok::Eq; break;
        case '~': kind = Tok::Not; break;
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        default:
          fail(std::string("unexpected character '") + c + "'", start);
      }
      ++pos_;
      out.push_back({kind, std::string(1, c), start});
    }
  }

  [[noreturn]] void fail(const std::string& msg, std::size_t offset) const {
    throw makeError(src_, msg, offset);
  }

  static ParseError makeError(std::string_view src, const std::string& msg, std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < src.size(); ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return ParseError(msg, line, col);
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
};

bool isFreshName(const std::string& name) {
  if (name.size() < 3 || name.compare(0, 2, "_u") != 0) return false;
  for (std::size_t i = 2; i < name.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  return true;
}

class Parser {
 public:
  Parser(std::string_view src, const Algebra* alg) : src_(src), alg_(alg), toks_(Lexer(src).run()) {}

  Formula formulaToEnd() {
    Formula f = disjunction();
    expectEnd();
    return f;
  }

  Term termToEnd() {
    Term t = expr();
    expectEnd();
    return t;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool atKeyword(std::string_view kw) const { return at(Tok::Ident) && peek().text == kw; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    return toks_[pos_++];
  }
  void expectEnd() {
    if (!at(Tok::End)) fail("unexpected '" + peek().text + "'");
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw Lexer::makeError(src_, msg, peek().offset);
  }

  Formula disjunction() {
    Formula lhs = conjunction();
    if (accept(Tok::Or)) return Formula::disj(std::move(lhs), disjunction());
    return lhs;
  }

  Formula conjunction() {
    Formula lhs = unary();
    if (accept(Tok::And)) return Formula::conj(std::move(lhs), conjunction());
    return lhs;
  }

  Formula unary() {
    if (accept(Tok::Not)) return Formula::negate(unary());
    if (atKeyword("exists")) {
      ++pos_;
      Var v = variableName(expect(Tok::Ident, "a variable after 'exists'"));
      return Formula::exists(std::move(v), disjunction());
    }
    if (atKeyword("true")) {
      ++pos_;
      return Formula::top();
    }
    if (atKeyword("false")) {
      ++pos_;
      return Formula::bot();
    }
    if (atKeyword("in") && peek(1).kind == Tok::LParen) return membership();
    if (at(Tok::LParen)) {
      const std::size_t save = pos_;
      try {
        Term lhs = expr();
        if (accept(Tok::Eq)) return Formula::eq(std::move(lhs), expr());
      } catch (const ParseError&) {
      }
      pos_ = save;
      ++pos_;
      Formula inner = disjunction();
      expect(Tok::RParen, "')'");
      return inner;
    }
    const bool callSyntax = at(Tok::Ident) && peek(1).kind == Tok::LParen;
    const Token start = peek();
    Term lhs = expr();
    if (accept(Tok::Eq)) return Formula::eq(std::move(lhs), expr());
    if (callSyntax && lhs.isApp() && lhs.functor() == start.text)
      return Formula::atom(lhs.functor(), lhs.args());
    if (start.kind == Tok::Ident && lhs.isVar() && lhs.var().name() == start.text)
      return Formula::atom(start.text, {});
    fail("expected a formula");
  }

  Formula membership() {
    ++pos_;  // in
    expect(Tok::LParen, "'('");
    std::vector<Term> args{expr()};
    expect(Tok::Comma, "','");
    expect(Tok::LBrace, "'{'");
    do {
      args.push_back(Term::literal(setMember()));
    } while (accept(Tok::Comma));
    expect(Tok::RBrace, "'}'");
    expect(Tok::RParen, "')'");
    return Formula::atom(std::string(kMembershipPredicate), std::move(args));
  }

  Value setMember() {
    bool negative = accept(Tok::Minus);
    if (at(Tok::Int)) return integerLiteral((negative ? "-" : "") + toks_[pos_++].text);
    if (!negative && at(Tok::Ident)) {
      std::string name = toks_[pos_++].text;
      if (!alg_) return Value::element(name);
      if (auto v = alg_->literal(name)) return *v;
      fail("'" + name + "' is not a value of the algebra");
    }
    fail("expected a value");
  }

  Value integerLiteral(const std::string& text) {
    if (!alg_) return Value::integer(Integer(text));
    if (auto v = alg_->literal(text)) return *v;
    fail("'" + text + "' is not a value of the algebra");
  }

  Var variableName(const Token& tok) {
    if (isFreshName(tok.text))
      throw Lexer::makeError(src_, "identifiers of the form _u<k> are reserved", tok.offset);
    if (tok.text == "exists" || tok.text == "true" || tok.text == "false")
      throw Lexer::makeError(src_, "'" + tok.text + "' is a keyword", tok.offset);
    return Var::user(tok.text);
  }

  Term expr() {
    Term lhs = product();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      std::string op = toks_[pos_++].text;
      lhs = Term::apply(op, {lhs, product()});
    }
    return lhs;
  }

  Term product() {
    Term lhs = unaryTerm();
    while (accept(Tok::Star)) lhs = Term::apply("*", {lhs, unaryTerm()});
    return lhs;
  }

  Term unaryTerm() {
    if (accept(Tok::Minus)) {
      if (at(Tok::Int)) return Term::literal(integerLiteral("-" + toks_[pos_++].text));
      return Term::apply("neg", {unaryTerm()});
    }
    return primary();
  }

  Term primary() {
    if (at(Tok::Int)) return Term::literal(integerLiteral(toks_[pos_++].text));
    if (accept(Tok::LParen)) {
      Term t = expr();
      expect(Tok::RParen, "')'");
      return t;
    }
    if (at(Tok::Ident)) {
      const Token& tok = toks_[pos_++];
      if (accept(Tok::LParen)) {
        std::vector<Term> args;
        if (!accept(Tok::RParen)) {
          do {
            args.push_back(expr());
          } while (accept(Tok::Comma));
          expect(Tok::RParen, "')'");
        }
        return Term::apply(tok.text, std::move(args));
      }
      if (alg_) {
        if (auto v = alg_->literal(tok.text)) return Term::literal(*v);
        if (!alg_->openSignature() && alg_->functionArity(tok.text) == std::optional<std::size_t>(0))
          return Term::apply(tok.text, {});
      }
      return Term::variable(variableName(tok));
    }
    fail("expected a term");
  }

  std::string_view src_;
  const Algebra* alg_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parseFormula(std::string_view text, const Algebra* alg) {
  Formula f = Parser(text, alg).formulaToEnd();
  if (alg) checkWellFormed(f, *alg);
  return f;
}

Term parseTerm(std::string_view text, const Algebra* alg) {
  Term t = Parser(text, alg).termToEnd();
  if (alg) checkWellFormed(t, *alg);
  return t;
}

}  // namespace soundsearch
