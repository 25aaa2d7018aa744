#pragma once

#include <json.hpp>

#include "pooltest/analysis.hpp"
#include "pooltest/codes.hpp"
#include "pooltest/oracle.hpp"
#include "pooltest/report.hpp"
#include "pooltest/strategy_s2.hpp"

// Serialization for files and CLI output. Sample ids are 1-based in every
// external representation; the in-memory API is 0-based.
namespace pooltest {

nlohmann::json code_to_json(const BinaryCode& code);  // {n_rows, n_cols, columns}
BinaryCode code_from_json(const nlohmann::json& j);

nlohmann::json transcript_to_json(const Transcript& t);
nlohmann::json report_to_json(const RunReport& r);
nlohmann::json params_to_json(const S2Params& p);
nlohmann::json bounds_to_json(const BoundReport& b);
nlohmann::json summary_to_json(const VerifySummary& s);

}  // namespace pooltest
