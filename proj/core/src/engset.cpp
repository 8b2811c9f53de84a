#include "capplan/engset.hpp"

#include <cmath>
#include <cstdint>

#include "capplan/errors.hpp"

namespace capplan {

namespace {

void check_arguments(int licenses, int population, double rho) {
  if (population < 1) throw DomainError("engset: population must be >= 1");
  if (licenses < 0) throw DomainError("engset: licenses must be >= 0");
  if (!std::isfinite(rho) || !(rho > 0)) throw DomainError("engset: rho must be finite and > 0");
}

}  // namespace

double blocking_direct(int licenses, int population, double rho) {
  check_arguments(licenses, population, rho);
  if (population > kMaxExactBinomialPopulation)
    throw OverflowError("engset: population > 60 overflows exact binomials; use blocking_recursive");
  if (licenses >= population) return 0.0;

  // Running C(S-1,i) rho^i; the multiplicative binomial update stays exact in
  // 64 bits for S <= 60 (peak value C(59,29)*59 < 2^63).
  const int n = population - 1;
  std::uint64_t binom = 1;
  double rho_pow = 1.0;
  double numerator = 0.0;
  double denominator = 0.0;
  for (int i = 0; i <= licenses; ++i) {
    const double term = double(binom) * rho_pow;
    denominator += term;
    if (i == licenses) numerator = term;
    if (i < n) binom = binom * std::uint64_t(n - i) / std::uint64_t(i + 1);
    rho_pow *= rho;
  }
  return numerator / denominator;
}

double blocking_recursive(int licenses, int population, double rho) {
  check_arguments(licenses, population, rho);
  if (licenses >= population) return 0.0;
  double b = 1.0;
  for (int j = 1; j <= licenses; ++j) {
    const double t = rho * double(population - j) * b;
    b = t / (double(j) + t);
  }
  return b;
}

BlockingResult compute_blocking(int licenses, int population, double rho,
                                BlockingMethod method) {
  const double p = method == BlockingMethod::direct
                       ? blocking_direct(licenses, population, rho)
                       : blocking_recursive(licenses, population, rho);
  return BlockingResult{p, method};
}

double blocking_distributed(const PoolLayout& layout, double rho) {
  validate(layout);
  const double total = double(layout.total_population());
  double weighted = 0.0;
  for (const auto& site : layout.sites)
    weighted += (double(site.population) / total) *
                blocking_recursive(site.licenses, site.population, rho);
  return weighted;
}

int min_licenses_for_blocking(int population, double rho, double blocking_max) {
  check_arguments(0, population, rho);
  if (!std::isfinite(blocking_max) || !(blocking_max > 0) || !(blocking_max < 1))
    throw DomainError("engset: blocking_max must lie strictly inside (0,1)");
  for (int licenses = 0; licenses < population; ++licenses)
    if (blocking_recursive(licenses, population, rho) <= blocking_max + kProbabilitySlack)
      return licenses;
  return population;  // b(S,S) = 0 always qualifies
}

PoolLayout equal_two_pool_split(int population, int licenses) {
  if (population < 2) throw DomainError("engset: a two-pool split needs population >= 2");
  if (licenses < 0) throw DomainError("engset: licenses must be >= 0");
  PoolLayout layout;
  layout.sites = {
      SitePool{population - population / 2, licenses - licenses / 2},
      SitePool{population / 2, licenses / 2},
  };
  return layout;
}

}  // namespace capplan
