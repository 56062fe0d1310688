#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "soundsearch/lawcheck.hpp"

namespace soundsearch {

// One row per law: law, operator, trials, passes, skips, failures, flags.
std::string formatTable(const std::vector<LawReport>& reports);

// One record per law with the first counterexample in canonical syntax.
nlohmann::json toJson(const LawReport& report);
nlohmann::json toJson(const std::vector<LawReport>& reports);

// Throws std::runtime_error when the file cannot be written.
void writeReport(const std::string& path, const std::vector<LawReport>& reports);

}  // namespace soundsearch
