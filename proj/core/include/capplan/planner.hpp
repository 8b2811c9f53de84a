#pragma once

#include <vector>

#include "capplan/sla.hpp"
#include "capplan/types.hpp"

namespace capplan {

inline constexpr double kBitsPerMbps = 1e6;

struct PlanResult {
  Architecture architecture = Architecture::centralized;
  bool feasible = false;
  int licenses_total = 0;
  std::vector<int> licenses_per_site;  // one entry per pool; {L} when centralized
  double capacity_extra = 0;           // bit/s; always 0 when distributed
  double cost = 0;                     // alpha L + beta n C'(Mbps)
  double achieved_success = 0;
};

// Exact discrete optimum of the centralized program: for each L in {0..S}
// the cheapest feasible C' follows from the closed-form capacity inversion,
// so the search space is one dimensional. Ties prefer smaller L, then
// smaller C'. The base channel must carry capacity_extra = 0.
// InfeasibleError when no L satisfies the SLA (unreachable for s < 1, kept
// as a defensive contract).
PlanResult optimize_centralized(const WorkloadParams& workload,
                                const ChannelParams& base, int population,
                                const CostModel& cost, const SlaTarget& sla);

// Exact minimum-total-license allocation with b_d <= 1 - s, found by dynamic
// programming over per-site license counts (0 <= L_i <= S_i). Always feasible
// since full licensing drives b_d to 0. A marginal-gain greedy is NOT used
// here: it can overshoot the optimum (see greedy_distributed_allocation).
PlanResult optimize_distributed(const WorkloadParams& workload,
                                const std::vector<int>& populations,
                                const CostModel& cost, const SlaTarget& sla);

// Reference marginal allocator: repeatedly grant one license to the pool
// whose increment most decreases b_d (ties to the lowest index) until
// b_d <= blocking_max. Exposed for comparison against the exact search;
// myopic choices can end above the optimal total on some instances.
std::vector<int> greedy_distributed_allocation(
    const std::vector<int>& populations, double rho, double blocking_max);

// Runs both programs over the same total population and returns the cheaper
// feasible result; an exact cost tie goes to distributed, which needs no
// link upgrade. InfeasibleError only if both arms are infeasible.
PlanResult plan(const WorkloadParams& workload, const ChannelParams& base,
                const std::vector<int>& populations, const CostModel& cost,
                const SlaTarget& sla);

}  // namespace capplan
