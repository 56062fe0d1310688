#include <algorithm>
#include <cctype>

#include "soundsearch/error.hpp"
#include "soundsearch/infer.hpp"

namespace soundsearch {

namespace {

class PipelineParser {
 public:
  PipelineParser(std::string_view text, const Algebra& alg) : text_(text), alg_(alg) {}

  InferOp parse() {
    InferOp op = sequence();
    skipSpace();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return op;
  }

 private:
  InferOp sequence() {
    InferOp op = item();
    while (accept(';')) op = composeInfer(op, item());
    return op;
  }

  InferOp item() {
    const std::string name = word();
    if (name.empty()) fail("expected an operator name");
    if (name == "id") return identityInfer();
    if (name == "normalize") return normalizeInfer(alg_);
    if (name == "split") return caseSplitInfer();
    if (name == "regroup-fixture") return regroupFixture();
    if (name == "unify") {
      if (alg_.kind() != AlgebraKind::Herbrand) fail("unify needs the Herbrand algebra");
      return unifyInfer(alg_);
    }
    if (name == "quadratic") {
      if (alg_.kind() != AlgebraKind::Integer) fail("quadratic needs the integer algebra");
      return quadraticInfer(alg_);
    }
    if (name == "fix") {
      expect('(');
      InferOp inner = sequence();
      expect(',');
      const std::string rounds = word();
      if (rounds.empty() || !std::all_of(rounds.begin(), rounds.end(), ::isdigit))
        fail("fix needs a round count");
      expect(')');
      const unsigned long n = std::stoul(rounds);
      if (n < 1 || n > 100000) fail("fix round count out of range");
      return fixpointInfer(inner, static_cast<unsigned>(n));
    }
    if (name == "domsplit") {
      Ranking ranking = Ranking::Value;
      std::optional<Rational> threshold;
      if (accept('(')) {
        if (!accept(')')) {
          do {
            const std::string key = word();
            expect('=');
            const std::string value = word();
            if (key == "rank") {
              auto r = parseRanking(value);
              if (!r) fail("unknown ranking '" + value + "'");
              ranking = *r;
            } else if (key == "thr") {
              try {
                threshold = Rational(value);
              } catch (const std::exception&) {
                fail("bad threshold '" + value + "'");
              }
            } else {
              fail("unknown domsplit parameter '" + key + "'");
            }
          } while (accept(','));
          expect(')');
        }
      }
      return domainSplitInfer(alg_, ranking, threshold);
    }
    fail("unknown operator '" + name + "'");
  }

  void skipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skipSpace();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  std::string word() {
    skipSpace();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '/') ++pos_;
      else break;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw UsageError("pipeline, column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  std::string_view text_;
  const Algebra& alg_;
  std::size_t pos_ = 0;
};

}  // namespace

InferOp parsePipeline(std::string_view text, const Algebra& alg) {
  return PipelineParser(text, alg).parse();
}

}  // namespace soundsearch
