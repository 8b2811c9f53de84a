#pragma once

#include <vector>

namespace capplan {

// Session workload per user. All rates in 1/s.
struct WorkloadParams {
  double lambda = 0;  // arrival rate of an idle user
  double mu = 0;      // completion rate; 1 / mean target session duration
  double rho() const { return lambda / mu; }
};

// M/M/1 link carrying background traffic plus state renewal probes.
struct ChannelParams {
  double capacity_base = 0;          // C0, bit/s
  double capacity_extra = 0;         // C', bit/s; only the centralized plan buys this
  double packet_service_factor = 0;  // M, packets per bit; 1 / mean packet size
  double background_rate = 0;        // Lambda, pkt/s
  double probe_rate = 0;             // r, probes/s
  double timeout_threshold = 0;      // tau, s; must stay below 1/r
  double capacity_total() const { return capacity_base + capacity_extra; }
};

struct SitePool {
  int population = 0;  // S_i
  int licenses = 0;    // L_i
};

struct PoolLayout {
  std::vector<SitePool> sites;
  int total_population() const;
  int total_licenses() const;
};

struct CostModel {
  double alpha = 0;        // per license
  double beta = 0;         // per Mbps of extra capacity
  int links_upgraded = 1;  // n
};

struct SlaTarget {
  double success_min = 0;  // s, strictly inside (0,1)
};

// Each throws DomainError naming the violated invariant.
void validate(const WorkloadParams& w);
void validate(const ChannelParams& c);
void validate(const PoolLayout& l);
void validate(const CostModel& c);
void validate(const SlaTarget& s);

// Absolute slack for boundary-inclusive probability comparisons. Closed-form
// boundary cases (for example a weighted blocking of exactly 0.35 against a
// bound of 0.35) land within one or two ulps of the bound; comparing with this
// slack keeps them inclusive without affecting any real decision margin.
inline constexpr double kProbabilitySlack = 1e-12;

}  // namespace capplan
