#pragma once

// JSON and CSV serialization of flag-type reports.

#include <string>

#include "json.hpp"

#include "flagtype/config.hpp"
#include "flagtype/flag_type.hpp"

namespace flagtype {

// Everything except "generated_at" is a function of (config, report).
nlohmann::json report_json(const RunConfig& config, const FlagTypeReport& report,
                           const std::string& generated_at);

// Written when the estimate could not run at all.
nlohmann::json failure_json(const RunConfig& config, const std::string& error,
                            const std::string& generated_at);

// Rows root_index,L,min_log_rho.
std::string curves_csv(const FlagTypeReport& report);

// UTC, ISO 8601, second resolution.
std::string utc_timestamp();

std::string theta_summary(const ThetaSet& theta);

}  // namespace flagtype
