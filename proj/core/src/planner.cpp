#include "capplan/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "capplan/engset.hpp"
#include "capplan/errors.hpp"
#include "capplan/timeout.hpp"

namespace capplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Strict margin below p_max so the achieved success clears the SLA even
// after the capacity round trip.
constexpr double kTargetMargin = 1.0 - 1e-9;

void check_populations(const std::vector<int>& populations) {
  if (populations.empty()) throw DomainError("planner: at least one site is required");
  for (int s : populations)
    if (s < 1) throw DomainError("planner: every site population must be >= 1");
}

}  // namespace

PlanResult optimize_centralized(const WorkloadParams& workload,
                                const ChannelParams& base, int population,
                                const CostModel& cost, const SlaTarget& sla) {
  validate(workload);
  validate(base);
  validate(cost);
  validate(sla);
  if (population < 1) throw DomainError("planner: population must be >= 1");
  if (base.capacity_extra != 0)
    throw DomainError("planner: the base channel must carry capacity_extra = 0");

  const double rho = workload.rho();
  const double p_at_base = timeout_probability(base, workload.mu);

  int best_licenses = -1;
  double best_extra = 0;
  double best_cost = kInf;
  double best_blocking = 0;
  for (int licenses = 0; licenses <= population; ++licenses) {
    const double blocking = blocking_recursive(licenses, population, rho);
    const double admitted = 1.0 - blocking;
    if (!(admitted > sla.success_min)) continue;  // p_max would be <= 0
    const double p_max = 1.0 - sla.success_min / admitted;
    double extra = 0;
    if (p_at_base > p_max + kProbabilitySlack) {
      const double required = capacity_for_timeout(
          p_max * kTargetMargin, workload.mu, base.probe_rate,
          base.timeout_threshold, base.background_rate,
          base.packet_service_factor);
      extra = std::max(0.0, required - base.capacity_base);
    }
    const double c = cost.alpha * licenses +
                     cost.beta * cost.links_upgraded * (extra / kBitsPerMbps);
    if (c < best_cost) {
      best_cost = c;
      best_licenses = licenses;
      best_extra = extra;
      best_blocking = blocking;
    }
  }
  if (best_licenses < 0)
    throw InfeasibleError("planner: no license count satisfies the SLA");

  ChannelParams chosen = base;
  chosen.capacity_extra = best_extra;
  PlanResult result;
  result.architecture = Architecture::centralized;
  result.feasible = true;
  result.licenses_total = best_licenses;
  result.licenses_per_site = {best_licenses};
  result.capacity_extra = best_extra;
  result.cost = best_cost;
  result.achieved_success =
      (1.0 - best_blocking) * (1.0 - timeout_probability(chosen, workload.mu));
  return result;
}

PlanResult optimize_distributed(const WorkloadParams& workload,
                                const std::vector<int>& populations,
                                const CostModel& cost, const SlaTarget& sla) {
  validate(workload);
  validate(cost);
  validate(sla);
  check_populations(populations);

  const double rho = workload.rho();
  const int site_count = int(populations.size());
  int total_population = 0;
  for (int s : populations) total_population += s;
  const double weight_base = double(total_population);
  const double bound = (1.0 - sla.success_min) + kProbabilitySlack;

  // dp[t] after k sites: minimal weighted blocking using exactly t licenses.
  // choice[k][t] records the license count at site k, smallest on ties.
  std::vector<double> dp(std::size_t(total_population) + 1, kInf);
  std::vector<std::vector<int>> choice(
      std::size_t(site_count),
      std::vector<int>(std::size_t(total_population) + 1, -1));
  dp[0] = 0.0;
  int reachable = 0;
  for (int k = 0; k < site_count; ++k) {
    const int site_pop = populations[std::size_t(k)];
    const double weight = double(site_pop) / weight_base;
    std::vector<double> site_blocking(std::size_t(site_pop) + 1);
    for (int l = 0; l <= site_pop; ++l)
      site_blocking[std::size_t(l)] = weight * blocking_recursive(l, site_pop, rho);
    std::vector<double> next(dp.size(), kInf);
    const int next_reachable = reachable + site_pop;
    for (int t = 0; t <= next_reachable; ++t) {
      for (int l = 0; l <= std::min(site_pop, t); ++l) {
        const double prev = dp[std::size_t(t - l)];
        if (prev == kInf) continue;
        const double cand = prev + site_blocking[std::size_t(l)];
        if (cand < next[std::size_t(t)]) {
          next[std::size_t(t)] = cand;
          choice[std::size_t(k)][std::size_t(t)] = l;
        }
      }
    }
    dp = std::move(next);
    reachable = next_reachable;
  }

  int best_total = -1;
  for (int t = 0; t <= total_population; ++t) {
    if (dp[std::size_t(t)] <= bound) {
      best_total = t;
      break;
    }
  }
  if (best_total < 0)  // full licensing gives b_d = 0, so this cannot happen
    throw InfeasibleError("planner: no allocation satisfies the SLA");

  std::vector<int> allocation(std::size_t(site_count), 0);
  for (int k = site_count - 1, t = best_total; k >= 0; --k) {
    const int l = choice[std::size_t(k)][std::size_t(t)];
    allocation[std::size_t(k)] = l;
    t -= l;
  }

  PoolLayout layout;
  for (int k = 0; k < site_count; ++k)
    layout.sites.push_back(SitePool{populations[std::size_t(k)], allocation[std::size_t(k)]});

  PlanResult result;
  result.architecture = Architecture::distributed;
  result.feasible = true;
  result.licenses_total = best_total;
  result.licenses_per_site = allocation;
  result.capacity_extra = 0;
  result.cost = cost.alpha * best_total;
  result.achieved_success = 1.0 - blocking_distributed(layout, rho);
  return result;
}

std::vector<int> greedy_distributed_allocation(
    const std::vector<int>& populations, double rho, double blocking_max) {
  check_populations(populations);
  if (!std::isfinite(rho) || !(rho > 0)) throw DomainError("planner: rho must be finite and > 0");
  if (!std::isfinite(blocking_max) || !(blocking_max > 0) || !(blocking_max < 1))
    throw DomainError("planner: blocking_max must lie strictly inside (0,1)");

  const int site_count = int(populations.size());
  int total_population = 0;
  for (int s : populations) total_population += s;
  const double weight_base = double(total_population);
  const double bound = blocking_max + kProbabilitySlack;

  std::vector<int> allocation(std::size_t(site_count), 0);
  auto weighted_blocking = [&](const std::vector<int>& alloc) {
    double b = 0;
    for (int k = 0; k < site_count; ++k)
      b += (double(populations[std::size_t(k)]) / weight_base) *
           blocking_recursive(alloc[std::size_t(k)], populations[std::size_t(k)], rho);
    return b;
  };

  double current = weighted_blocking(allocation);
  while (current > bound) {
    int best_site = -1;
    double best_value = kInf;
    for (int k = 0; k < site_count; ++k) {
      if (allocation[std::size_t(k)] >= populations[std::size_t(k)]) continue;
      ++allocation[std::size_t(k)];
      const double value = weighted_blocking(allocation);
      --allocation[std::size_t(k)];
      if (value < best_value) {
        best_value = value;
        best_site = k;
      }
    }
    ++allocation[std::size_t(best_site)];  // always exists: full licensing gives 0
    current = best_value;
  }
  return allocation;
}

PlanResult plan(const WorkloadParams& workload, const ChannelParams& base,
                const std::vector<int>& populations, const CostModel& cost,
                const SlaTarget& sla) {
  check_populations(populations);
  int total_population = 0;
  for (int s : populations) total_population += s;

  const PlanResult distributed =
      optimize_distributed(workload, populations, cost, sla);
  try {
    const PlanResult centralized =
        optimize_centralized(workload, base, total_population, cost, sla);
    if (centralized.cost < distributed.cost) return centralized;
  } catch (const InfeasibleError&) {
    // fall through to the distributed arm
  }
  return distributed;
}

}  // namespace capplan
