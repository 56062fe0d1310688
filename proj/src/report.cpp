#include "soundsearch/report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace soundsearch {

std::string formatTable(const std::vector<LawReport>& reports) {
  std::ostringstream out;
  out << std::left << std::setw(24) << "law" << std::setw(28) << "operator" << std::right << std::setw(8)
      << "trials" << std::setw(8) << "passes" << std::setw(7) << "skips" << std::setw(7) << "fails"
      << "  status\n";
  for (const auto& r : reports) {
    std::string status;
    if (r.trials == 0) status = "excluded";
    else if (r.holds()) status = "ok";
    else status = "FAIL";
    if (r.heuristicOnly) status += " (heuristic)";
    if (!r.blocking) status += " (informational)";
    out << std::left << std::setw(24) << r.law << std::setw(28) << r.op << std::right << std::setw(8) << r.trials
        << std::setw(8) << r.passes << std::setw(7) << r.skips << std::setw(7) << r.failures() << "  " << status
        << "\n";
    for (const auto& n : r.notes) out << "    note: " << n << "\n";
    if (!r.counterexamples.empty()) {
      const auto& c = r.counterexamples.front();
      out << "    counterexample input:  " << c.input << "\n";
      out << "    counterexample output: " << c.output << "\n";
      out << "    diagnosis: " << c.diagnosis << "\n";
    }
  }
  return out.str();
}

nlohmann::json toJson(const LawReport& r) {
  nlohmann::json j;
  j["law"] = r.law;
  j["operator"] = r.op;
  j["trials"] = r.trials;
  j["passes"] = r.passes;
  j["skips"] = r.skips;
  j["vacuous"] = r.vacuous;
  j["failures"] = r.failures();
  j["heuristicOnly"] = r.heuristicOnly;
  j["blocking"] = r.blocking;
  j["notes"] = r.notes;
  j["counters"] = r.counters;
  if (r.counterexamples.empty()) {
    j["counterexample"] = nullptr;
  } else {
    const auto& c = r.counterexamples.front();
    j["counterexample"] = {{"input", c.input}, {"output", c.output}, {"diagnosis", c.diagnosis}};
  }
  return j;
}

nlohmann::json toJson(const std::vector<LawReport>& reports) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& r : reports) j.push_back(toJson(r));
  return j;
}

void writeReport(const std::string& path, const std::vector<LawReport>& reports) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write report to " + path);
  f << toJson(reports).dump(2) << "\n";
  if (!f) throw std::runtime_error("cannot write report to " + path);
}

}  // namespace soundsearch
