#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "support.hpp"

using namespace fixtures;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = soundsearch::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("solve: quadratic example") {
  const Run r = invoke({"solve", "--algebra", "int", "--pipeline", "quadratic;split;normalize", "--formula", "x*x = 1"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"<{} ; {x -> 1}>", "<{} ; {x -> -1}>"});
}

TEST_CASE("solve: unification example") {
  const Run r = invoke({"solve", "--algebra", "herbrand", "--pipeline", "unify", "--formula", "f(x) = f(y)"});
  CHECK(r.code == 0);
  REQUIRE(lines(r.out).size() == 1);
  CHECK(lines(r.out)[0] == "<{} ; {x -> y}>");
  const Algebra h = Algebra::herbrand();
  Substitution xy, expected;
  xy.bind(V("x"), TV("y"));
  expected.bind(V("x"), TV("z"));
  expected.bind(V("y"), TV("z"));
  CHECK(renameMatch(xy, expected, {V("x"), V("y")}));
  Substitution wrong;
  wrong.bind(V("x"), TV("z"));
  CHECK_FALSE(renameMatch(wrong, expected, {V("x"), V("y")}));
}

TEST_CASE("solve: exit codes") {
  const Run none = invoke({"solve", "--algebra", "int", "--pipeline", "quadratic", "--formula", "x*x = 2"});
  CHECK(none.code == 1);
  CHECK(none.out == "no\n");
  const Run error = invoke({"solve", "--algebra", "int", "--pipeline", "normalize", "--formula", "x = 0 /\\ div(1, x) = 1"});
  CHECK(error.code == 2);
  CHECK(invoke({"solve", "--algebra", "int", "--formula", "x = = 1"}).code == 3);
  CHECK(invoke({"solve", "--algebra", "int"}).code == 3);
  CHECK(invoke({"solve", "--algebra", "int", "--pipeline", "unify", "--formula", "x = 1"}).code == 3);
  CHECK(invoke({"solve", "--algebra", "/nonexistent/file", "--formula", "x = 1"}).code == 3);
  CHECK(invoke({"frobnicate"}).code == 3);
  CHECK(invoke({}).code == 3);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("solve: error takes precedence over answers") {
  const Run r = invoke({"solve", "--algebra", "int", "--pipeline", "normalize", "--formula",
                     "x = 1 \\/ (x = 0 /\\ div(1, x) = 1)"});
  CHECK(r.code == 2);
  CHECK(lines(r.out) == std::vector<std::string>{"<{} ; {x -> 1}>"});
}

TEST_CASE("solve: finite algebra file and formula file") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto alg = dir / "soundsearch_cli_alg.txt";
  const auto phi = dir / "soundsearch_cli_phi.txt";
  std::ofstream(alg) << "domain: a b\nfun f/1: (a)->b (b)->a\npred p/1: a\n";
  std::ofstream(phi) << "p(x) /\\ x = f(b)\n";
  const Run r = invoke({"solve", "--algebra", alg.string(), "--formula-file", phi.string()});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == std::vector<std::string>{"<{} ; {x -> a}>"});
  const Run never = invoke({"solve", "--algebra", alg.string(), "--formula", "p(x) /\\ x = b"});
  CHECK(never.code == 1);
  std::filesystem::remove(alg);
  std::filesystem::remove(phi);
}

TEST_CASE("solve: limits") {
  const Run r = invoke({"solve", "--algebra", "int", "--pipeline", "id", "--max-states", "1", "--formula",
                     "x = 1 \\/ x = 2"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).size() == 1);
  CHECK(r.err.find("truncated") != std::string::npos);
  CHECK(invoke({"solve", "--algebra", "int", "--max-depth", "0", "--formula", "x = 1"}).code == 3);
}

TEST_CASE("check-infer") {
  const Run ok = invoke({"check-infer", "--pipeline", "split", "--trials", "200", "--seed", "7"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL ") == std::string::npos);
  const Run bad = invoke({"check-infer", "--pipeline", "regroup-fixture", "--trials", "100"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("set-equivalence         regroup-fixture                  100     100") != std::string::npos);
  CHECK(invoke({"check-infer", "--pipeline", "id", "--trials", "1"}).code == 0);
  CHECK(invoke({"check-infer", "--pipeline", "bogus"}).code == 3);
  CHECK(invoke({"check-infer"}).code == 3);
}

TEST_CASE("check-infer writes a report") {
  const auto path = std::filesystem::temp_directory_path() / "soundsearch_cli_report.json";
  CHECK(invoke({"check-infer", "--pipeline", "id", "--trials", "5", "--report", path.string()}).code == 0);
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  REQUIRE(j.is_array());
  CHECK(j[0]["trials"] == 5);
  std::filesystem::remove(path);
}

TEST_CASE("soundness") {
  const Run one = invoke({"soundness", "--trials", "1"});
  CHECK(one.code == 0);
  CHECK(one.out.find("of 1\n") != std::string::npos);
  const Run many = invoke({"soundness", "--trials", "200", "--seed", "42", "--pipeline", "normalize;split"});
  CHECK(many.code == 0);
  CHECK(many.out.find("0 failed of 200") != std::string::npos);
  CHECK(invoke({"soundness", "--pipeline", "regroup-fixture"}).code == 3);
  CHECK(invoke({"soundness", "--pipeline", "quadratic"}).code == 3);
  CHECK(invoke({"soundness", "--algebra", "int"}).code == 3);
}

TEST_CASE("demos") {
  const Run q = invoke({"demo", "quadratic-split"});
  CHECK(q.code == 0);
  for (int i = 0; i <= 5; ++i) CHECK(q.out.find("csp" + std::to_string(i) + " = ") != std::string::npos);
  CHECK(q.out.find("csp4 = <{} ; {x -> 1}>") != std::string::npos);
  CHECK(q.out.find("csp5 = <{} ; {x -> -1}>") != std::string::npos);

  const Run g = invoke({"demo", "good-bad"});
  CHECK(g.code == 0);
  const auto good = g.out.find("D_good = <{in(x, {3, 4})} ; {}>");
  const auto bad = g.out.find("D_bad = <{in(x, {1, 2})} ; {}>");
  REQUIRE(good != std::string::npos);
  REQUIRE(bad != std::string::npos);
  CHECK(good < bad);

  const Run u = invoke({"demo", "unify"});
  CHECK(u.code == 0);
  CHECK(u.out.find("<{} ; {x -> y}>") != std::string::npos);
  CHECK(invoke({"demo", "nope"}).code == 3);
}

TEST_CASE("output is byte-identical across runs") {
  const std::vector<std::string> args{"check-infer", "--pipeline", "normalize;split", "--trials", "100", "--seed", "3"};
  CHECK(invoke(args).out == invoke(args).out);
  const std::vector<std::string> serial{"check-infer", "--pipeline", "normalize;split", "--trials", "100",
                                        "--seed",      "3",         "--serial"};
  CHECK(invoke(args).out == invoke(serial).out);
}
