#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace urnlda {

/// Sizes and thresholds for the Poisson Polya urn statistical suite.
struct PPUCheckConfig {
  std::uint64_t seed = 1;
  std::vector<double> mean{0.2, 0.3, 0.5};
  std::vector<double> ks_totals{10.0, 100.0, 1000.0, 10000.0};
  std::size_t ks_draws = 100000;
  double ks_final_max = 0.02;
  std::size_t ks_allowed_increases = 1;

  double moment_total = 1000.0;
  std::size_t moment_draws = 1000000;
  double moment_mean_se = 3.0;
  double moment_rel_tol = 0.10;

  std::size_t equivalence_draws = 100000;
  double equivalence_alpha = 0.001;
};

struct PPUCheckRow {
  std::string check;
  std::string detail;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

struct PPUCheckReport {
  std::vector<PPUCheckRow> rows;
  /// Max marginal KS distance per entry of PPUCheckConfig::ks_totals.
  std::vector<double> ks_by_total;
  bool all_passed() const;
};

/// Max marginal KS distance between PPU(total, mean) and Dir(total, mean).
double ppu_dirichlet_max_ks(double total, const std::vector<double>& mean, std::size_t draws,
                            std::uint64_t seed);

/// Convergence toward the Dirichlet, limiting moments, and agreement of the
/// direct and hierarchical constructions.
PPUCheckReport run_ppu_check(const PPUCheckConfig& config);

PPUCheckReport run_ppu_convergence_check(const PPUCheckConfig& config);
PPUCheckReport run_ppu_moment_check(const PPUCheckConfig& config);
PPUCheckReport run_ppu_equivalence_check(const PPUCheckConfig& config);

void print_ppu_report(const PPUCheckReport& report, std::ostream& out);

}  // namespace urnlda
