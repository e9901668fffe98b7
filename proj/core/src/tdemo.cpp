#include "urnlda/tdemo.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include "urnlda/distributions.hpp"
#include "urnlda/eval.hpp"
#include "urnlda/stat_tests.hpp"

namespace urnlda {

namespace {

constexpr double kConditionalDf = 5.0;

double conditional_scale(double other, double rho) {
  return (0.8 + 0.2 * other * other) * (1.0 - rho * rho);
}

void check_rho(double rho) {
  if (!(std::fabs(rho) < 1.0)) throw std::invalid_argument("rho must satisfy |rho| < 1");
}

}  // namespace

void TDemoConfig::validate() const { check_rho(rho); }

TPoint t_collapsed_step(TPoint z, double rho, Rng& rng) {
  check_rho(rho);
  z.z1 = student_t_sample(rho * z.z2, conditional_scale(z.z2, rho), kConditionalDf, rng);
  z.z2 = student_t_sample(rho * z.z1, conditional_scale(z.z1, rho), kConditionalDf, rng);
  return z;
}

TUncollapsedDraw t_uncollapsed_step(TPoint z, double rho, Rng& rng) {
  check_rho(rho);
  const double one_minus = 1.0 - rho * rho;
  const double quad = (z.z1 * z.z1 - 2.0 * rho * z.z1 * z.z2 + z.z2 * z.z2) / one_minus;
  TUncollapsedDraw out;
  out.scale = inverse_gamma_sample(3.0, 0.5 * quad + 2.0, rng);
  const double s = std::sqrt(out.scale);
  const double g1 = normal_sample(rng);
  const double g2 = normal_sample(rng);
  out.z.z1 = s * g1;
  out.z.z2 = s * (rho * g1 + std::sqrt(one_minus) * g2);
  return out;
}

TChain run_t_chain(TSampler sampler, const TDemoConfig& config) {
  config.validate();
  Rng rng(config.seed, sampler == TSampler::collapsed ? 11 : 12);
  TChain chain;
  chain.z1.reserve(config.iterations);
  chain.z2.reserve(config.iterations);
  TPoint z;
  for (std::size_t t = 0; t < config.iterations; ++t) {
    z = sampler == TSampler::collapsed ? t_collapsed_step(z, config.rho, rng)
                                       : t_uncollapsed_step(z, config.rho, rng).z;
    chain.z1.push_back(z.z1);
    chain.z2.push_back(z.z2);
  }
  return chain;
}

std::vector<TReportRow> run_t_comparison(const std::vector<double>& rhos, std::size_t iterations,
                                         std::uint64_t seed, std::size_t num_seeds) {
  std::vector<TReportRow> rows;
  for (double rho : rhos) {
    for (TSampler sampler : {TSampler::collapsed, TSampler::uncollapsed}) {
      TReportRow row;
      row.rho = rho;
      row.sampler = sampler == TSampler::collapsed ? "collapsed" : "uncollapsed";
      std::vector<double> all1;
      std::vector<double> all2;
      for (std::size_t s = 0; s < num_seeds; ++s) {
        const auto chain = run_t_chain(sampler, {rho, iterations, seed + s});
        row.ess_per_seed.push_back(ess(chain.z1));
        all1.insert(all1.end(), chain.z1.begin(), chain.z1.end());
        all2.insert(all2.end(), chain.z2.begin(), chain.z2.end());
      }
      double ess_sum = 0.0;
      for (double e : row.ess_per_seed) ess_sum += e;
      row.ess = ess_sum / static_cast<double>(num_seeds);
      const auto m1 = stats::moments(all1);
      const auto m2 = stats::moments(all2);
      row.mean1 = m1.mean;
      row.mean2 = m2.mean;
      row.var1 = m1.variance;
      row.var2 = m2.variance;
      row.cov12 = stats::covariance(all1, all2);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_t_report(const std::vector<TReportRow>& rows, std::ostream& out) {
  out << "rho,sampler,ess,mean1,mean2,var1,var2,cov12\n";
  for (const auto& r : rows) {
    out << r.rho << ',' << r.sampler << ',' << r.ess << ',' << r.mean1 << ',' << r.mean2 << ','
        << r.var1 << ',' << r.var2 << ',' << r.cov12 << '\n';
  }
}

}  // namespace urnlda
