#pragma once

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "limitlaw/identities.hpp"
#include "limitlaw/mellin.hpp"
#include "limitlaw/moments.hpp"
#include "limitlaw/montecarlo.hpp"

namespace limitlaw {

/// 17 significant digits, '.' decimal point, no grouping.
std::string format_csv_number(double v);

nlohmann::json to_json(const moments::MomentSequence& seq);
nlohmann::json to_json(const identities::ComparisonReport& report);
nlohmann::json to_json(const identities::PhiAdjudication& adjudication);
nlohmann::json to_json(const identities::HankelDiagnostics& diagnostics);
nlohmann::json to_json(const mellin::DensityTable& table);
nlohmann::json to_json(const mc::SampleSummary& summary);

/// Rows "s,value" for s = first..S under a "s,value" header.
void write_csv(std::ostream& out, const moments::MomentSequence& seq, std::size_t first = 1);
/// Rows "x,f,truncation_estimate" under '#' comment lines carrying the
/// integral and tail estimates.
void write_csv(std::ostream& out, const mellin::DensityTable& table);
/// One row per (report, s).
void write_csv(std::ostream& out, std::span<const identities::ComparisonReport> reports);

}  // namespace limitlaw
