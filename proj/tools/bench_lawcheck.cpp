// Times law-check runs with serial and OpenMP trial execution and checks
// that both produce identical reports.
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <string>

#include "soundsearch/lawcheck.hpp"
#include "soundsearch/report.hpp"

using namespace soundsearch;

namespace {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool bench(const std::string& label, const std::function<std::vector<LawReport>(Execution)>& run) {
  std::vector<LawReport> serial, parallel;
  const double ts = seconds([&] { serial = run(Execution::Serial); });
  const double tp = seconds([&] { parallel = run(Execution::Parallel); });
  const bool same = toJson(serial) == toJson(parallel);
  std::cout << std::left << std::setw(38) << label << std::right << std::fixed << std::setprecision(3)
            << " serial " << std::setw(8) << ts << " s   parallel " << std::setw(8) << tp << " s   speedup "
            << std::setprecision(2) << (tp > 0 ? ts / tp : 0.0) << "x   " << (same ? "identical" : "MISMATCH")
            << '\n';
  return same;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t trials = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 300;
  bool ok = true;

  for (const char* pipeline : {"normalize;split", "quadratic;split;normalize", "unify"}) {
    ok &= bench(std::string("check-infer ") + pipeline, [&](Execution e) {
      CheckConfig cfg;
      cfg.trials = trials;
      cfg.gen.seed = 11;
      cfg.execution = e;
      return checkInfer(pipelineFactory(pipeline), cfg);
    });
  }
  ok &= bench("soundness normalize;split", [&](Execution e) {
    SoundnessConfig cfg;
    cfg.check.trials = trials;
    cfg.check.gen.seed = 11;
    cfg.check.execution = e;
    return std::vector<LawReport>{soundnessSuite("normalize;split", cfg), preservationSuite("normalize;split", cfg)};
  });
  return ok ? 0 : 1;
}
