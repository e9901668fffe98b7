#pragma once

#include <iosfwd>
#include <string>

#include "urnlda/sampler.hpp"

namespace urnlda {

inline constexpr const char* kMetricsCsvHeader =
    "iteration,log_joint,phi_seconds,z_seconds,b_work,bound,fallbacks";

/// One CSV row (no newline). log_joint is written with 17 significant
/// digits. With timings off the two seconds columns are written as 0 so the
/// row depends only on (seed, config, corpus).
std::string metrics_csv_row(const IterationMetrics& m, bool timings = true);

/// One JSON object (no newline) for the event log.
std::string metrics_json(const IterationMetrics& m);

}  // namespace urnlda
