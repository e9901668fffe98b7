#include "urnlda/metrics_io.hpp"

#include <cstdio>

namespace urnlda {

std::string metrics_csv_row(const IterationMetrics& m, bool timings) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%llu,%.17g,%.9f,%.9f,%llu,%llu,%llu",
                static_cast<unsigned long long>(m.iteration), m.log_joint,
                timings ? m.phi_phase_seconds : 0.0, timings ? m.z_phase_seconds : 0.0,
                static_cast<unsigned long long>(m.b_bucket_work),
                static_cast<unsigned long long>(m.sparsity_bound),
                static_cast<unsigned long long>(m.fallback_count));
  return buf;
}

std::string metrics_json(const IterationMetrics& m) {
  char buf[384];
  std::snprintf(buf, sizeof buf,
                "{\"event\":\"iteration\",\"iteration\":%llu,\"log_joint\":%.17g,"
                "\"phi_seconds\":%.9f,\"z_seconds\":%.9f,\"b_work\":%llu,\"bound\":%llu,"
                "\"a_hits\":%llu,\"fallbacks\":%llu}",
                static_cast<unsigned long long>(m.iteration), m.log_joint, m.phi_phase_seconds,
                m.z_phase_seconds, static_cast<unsigned long long>(m.b_bucket_work),
                static_cast<unsigned long long>(m.sparsity_bound),
                static_cast<unsigned long long>(m.a_bucket_hits),
                static_cast<unsigned long long>(m.fallback_count));
  return buf;
}

}  // namespace urnlda
