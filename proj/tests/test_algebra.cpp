#include <doctest.h>

#include "soundsearch/generate.hpp"
#include "support.hpp"

using namespace fixtures;

TEST_CASE("integer addition folds to a value") {
  const Algebra z = Algebra::integers();
  const Value args[] = {Value::integer(4), Value::integer(5)};
  CHECK(z.evalFun("+", args) == Value::integer(9));
}

TEST_CASE("finite identity table and herbrand term formation") {
  const Algebra fin = parseAlgebraSpec("domain: a b\nfun f/1: (a)->a (b)->b\n");
  const Value a[] = {Value::element("a")};
  CHECK(fin.evalFun("f", a) == Value::element("a"));

  const Algebra h = Algebra::herbrand();
  const Value ga[] = {Value::ground("a")};
  CHECK(h.evalFun("g", ga) == Value::ground("g", {Value::ground("a")}));
  CHECK(h.evalFun("g", ga).str() == "g(a)");
}

TEST_CASE("partial integer functions raise evaluation errors") {
  const Algebra z = Algebra::integers();
  const Value byZero[] = {Value::integer(1), Value::integer(0)};
  CHECK_THROWS_AS(z.evalFun("div", byZero), EvalError);
  CHECK_THROWS_AS(z.evalFun("mod", byZero), EvalError);
  const Value negExp[] = {Value::integer(2), Value::integer(-1)};
  CHECK_THROWS_AS(z.evalFun("pow", negExp), EvalError);
  CHECK(z.isPartial("div"));
  CHECK_FALSE(z.isPartial("+"));
}

TEST_CASE("unknown symbols and arity mismatches") {
  const Algebra z = Algebra::integers();
  const Value one[] = {Value::integer(1)};
  CHECK_THROWS_AS(z.evalFun("frob", one), SymbolError);
  CHECK_THROWS_AS(z.evalFun("+", one), SymbolError);
  const Algebra fin = swapAlgebra();
  const Value foreign[] = {Value::element("c")};
  CHECK_THROWS_AS(fin.evalFun("f", foreign), SymbolError);
}

TEST_CASE("predicates") {
  const Algebra fin = swapAlgebra();
  const Value b[] = {Value::element("b")};
  const Value aa[] = {Value::element("a"), Value::element("a")};
  CHECK_FALSE(fin.evalPred("p", b));
  CHECK(fin.evalPred("=", aa));
  const Algebra z = Algebra::integers();
  const Value le[] = {Value::integer(4), Value::integer(5)};
  CHECK(z.evalPred("le", le));
  const Value mem[] = {Value::integer(2), Value::integer(1), Value::integer(2)};
  CHECK(z.evalPred("in", mem));
}

TEST_CASE("enumerateDomain keeps declared order") {
  const Algebra fin = parseAlgebraSpec("domain: c a b\n");
  const auto d = fin.enumerateDomain();
  REQUIRE(d.size() == 3);
  CHECK(d[0] == Value::element("c"));
  CHECK(d[2] == Value::element("b"));
  CHECK(parseAlgebraSpec("domain: 0\n").enumerateDomain().size() == 1);
  CHECK_THROWS_AS(Algebra::integers().enumerateDomain(), UnsupportedOperation);
}

TEST_CASE("algebra spec parsing") {
  const Algebra alg = parseAlgebraSpec("domain: a b\nfun f/1: (a)->b (b)->a\npred p/1: a\n");
  const Value a[] = {Value::element("a")};
  const Value b[] = {Value::element("b")};
  CHECK(alg.domainSize() == 2);
  CHECK(alg.evalFun("f", a) == Value::element("b"));
  CHECK(alg.evalFun("f", b) == Value::element("a"));
  CHECK(alg.evalPred("p", a));
  CHECK_FALSE(alg.evalPred("p", b));

  CHECK_THROWS(parseAlgebraSpec("domain: a b\nfun f/1: (a)->b\n"));
  CHECK_THROWS(parseAlgebraSpec("domain:\n"));
  CHECK_THROWS(parseAlgebraSpec("domain: a a\n"));
  CHECK_THROWS(parseAlgebraSpec("fun f/1: (a)->a\n"));
  CHECK_THROWS(parseAlgebraSpec("domain: a\nfun f/1: (a)->a\nfun f/1: (a)->a\n"));
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parseAlgebraSpec("# comment\ndomain: a\nfun f/1 (a)->a\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("spec printing round-trips on random algebras") {
  GenParams p;
  p.maxDomainSize = 4;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    Rng rng = trialRng(seed, 0);
    const Algebra alg = randomAlgebra(p, rng);
    const Algebra again = parseAlgebraSpec(printAlgebraSpec(alg));
    CHECK(again == alg);
    CHECK(printAlgebraSpec(again) == printAlgebraSpec(alg));
  }
}

TEST_CASE("equality is identity on every finite domain tuple") {
  GenParams p;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Rng rng = trialRng(seed, 1);
    const Algebra alg = randomAlgebra(p, rng);
    for (const auto& v : alg.enumerateDomain())
      for (const auto& w : alg.enumerateDomain()) {
        const Value vw[] = {v, w};
        CHECK(alg.evalPred("=", vw) == (v.name() == w.name()));
      }
  }
}

TEST_CASE("restrictTo keeps only closed subsets") {
  const Algebra swap = swapAlgebra();
  CHECK_FALSE(swap.restrictTo({0}).has_value());
  const Algebra id = parseAlgebraSpec("domain: a b\nfun f/1: (a)->a (b)->b\npred p/1: b\n");
  const auto sub = id.restrictTo({1});
  REQUIRE(sub.has_value());
  CHECK(sub->domainSize() == 1);
  const Value b[] = {Value::element("b")};
  CHECK(sub->evalPred("p", b));
}
