#include "urnlda/ppu_check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "urnlda/distributions.hpp"
#include "urnlda/ppu.hpp"
#include "urnlda/rng.hpp"
#include "urnlda/stat_tests.hpp"

namespace urnlda {

namespace {

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::vector<double> scaled(const std::vector<double>& mean, double total) {
  std::vector<double> c(mean.size());
  for (std::size_t i = 0; i < mean.size(); ++i) c[i] = total * mean[i];
  return c;
}

// Draws column-major: result[i] holds coordinate i of every draw.
template <typename Draw>
std::vector<std::vector<double>> marginals(std::size_t dim, std::size_t draws, Draw&& draw) {
  std::vector<std::vector<double>> out(dim, std::vector<double>(draws));
  for (std::size_t s = 0; s < draws; ++s) {
    const std::vector<double> x = draw();
    for (std::size_t i = 0; i < dim; ++i) out[i][s] = x[i];
  }
  return out;
}

}  // namespace

bool PPUCheckReport::all_passed() const {
  return std::all_of(rows.begin(), rows.end(), [](const PPUCheckRow& r) { return r.pass; });
}

double ppu_dirichlet_max_ks(double total, const std::vector<double>& mean, std::size_t draws,
                            std::uint64_t seed) {
  const auto conc = scaled(mean, total);
  Rng ppu_rng(seed, 101);
  Rng dir_rng(seed, 202);
  const auto ppu = marginals(mean.size(), draws, [&] { return ppu_sample_direct(conc, ppu_rng).probabilities(); });
  const auto dir = marginals(mean.size(), draws, [&] { return dirichlet_sample(conc, dir_rng); });
  double worst = 0.0;
  for (std::size_t i = 0; i < mean.size(); ++i) worst = std::max(worst, stats::ks_distance(ppu[i], dir[i]));
  return worst;
}

PPUCheckReport run_ppu_convergence_check(const PPUCheckConfig& config) {
  PPUCheckReport report;
  std::size_t increases = 0;
  for (std::size_t t = 0; t < config.ks_totals.size(); ++t) {
    const double total = config.ks_totals[t];
    const double d = ppu_dirichlet_max_ks(total, config.mean, config.ks_draws, config.seed + t);
    if (t > 0 && d >= report.ks_by_total.back()) ++increases;
    report.ks_by_total.push_back(d);
    report.rows.push_back({"ks", "total=" + fmt("%g", total), d, HUGE_VAL, true});
  }
  report.rows.push_back({"ks-monotone", "non-decreasing steps", static_cast<double>(increases),
                         static_cast<double>(config.ks_allowed_increases),
                         increases <= config.ks_allowed_increases});
  if (!report.ks_by_total.empty()) {
    report.rows.push_back({"ks-final", "total=" + fmt("%g", config.ks_totals.back()),
                           report.ks_by_total.back(), config.ks_final_max,
                           report.ks_by_total.back() < config.ks_final_max});
  }
  return report;
}

PPUCheckReport run_ppu_moment_check(const PPUCheckConfig& config) {
  PPUCheckReport report;
  const auto conc = scaled(config.mean, config.moment_total);
  const std::size_t dim = config.mean.size();
  Rng rng(config.seed, 303);
  const auto x = marginals(dim, config.moment_draws, [&] { return ppu_sample_direct(conc, rng).probabilities(); });
  const auto limit = ppu_asymptotic_moments(config.moment_total, config.mean);
  const double n = static_cast<double>(config.moment_draws);
  for (std::size_t i = 0; i < dim; ++i) {
    const auto m = stats::moments(x[i]);
    const double z = std::fabs(m.mean - limit.mean[i]) / std::sqrt(m.variance / n);
    report.rows.push_back({"mean", "x" + std::to_string(i + 1), z, config.moment_mean_se, z < config.moment_mean_se});
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const double empirical = stats::covariance(x[i], x[j]);
      const double target = limit.cov(i, j);
      const double rel = std::fabs(empirical - target) / std::fabs(target);
      const std::string label = i == j ? "var" : "cov";
      report.rows.push_back({label, "x" + std::to_string(i + 1) + ",x" + std::to_string(j + 1), rel,
                             config.moment_rel_tol, rel < config.moment_rel_tol});
    }
  }
  return report;
}

PPUCheckReport run_ppu_equivalence_check(const PPUCheckConfig& config) {
  PPUCheckReport report;
  const std::vector<std::pair<double, std::vector<double>>> cases{
      {10.0, {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}},
      {100.0, {0.2, 0.3, 0.5}},
      {1000.0, {0.05, 0.05, 0.9}},
  };
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& [total, mean] = cases[c];
    const auto conc = scaled(mean, total);
    Rng direct_rng(config.seed + c, 404);
    Rng hier_rng(config.seed + c, 505);
    const auto direct = marginals(mean.size(), config.equivalence_draws,
                                  [&] { return ppu_sample_direct(conc, direct_rng).probabilities(); });
    const auto hier = marginals(mean.size(), config.equivalence_draws,
                                [&] { return ppu_sample_hier(total, mean, hier_rng); });
    for (std::size_t i = 0; i < mean.size(); ++i) {
      const auto t = stats::chi_square_two_sample(direct[i], hier[i]);
      report.rows.push_back({"direct-vs-hier", "total=" + fmt("%g", total) + " x" + std::to_string(i + 1),
                             t.p_value, config.equivalence_alpha, t.p_value > config.equivalence_alpha});
    }
  }
  return report;
}

PPUCheckReport run_ppu_check(const PPUCheckConfig& config) {
  PPUCheckReport report = run_ppu_convergence_check(config);
  for (auto* part : {&run_ppu_moment_check, &run_ppu_equivalence_check}) {
    auto r = part(config);
    report.rows.insert(report.rows.end(), r.rows.begin(), r.rows.end());
  }
  return report;
}

void print_ppu_report(const PPUCheckReport& report, std::ostream& out) {
  char line[160];
  std::snprintf(line, sizeof line, "%-16s %-22s %12s %12s  %s\n", "check", "detail", "value", "threshold", "result");
  out << line;
  for (const auto& r : report.rows) {
    const bool informational = std::isinf(r.threshold);
    std::snprintf(line, sizeof line, "%-16s %-22s %12.6g %12s  %s\n", r.check.c_str(), r.detail.c_str(), r.value,
                  informational ? "-" : fmt("%.6g", r.threshold).c_str(),
                  informational ? "info" : (r.pass ? "PASS" : "FAIL"));
    out << line;
  }
}

}  // namespace urnlda
