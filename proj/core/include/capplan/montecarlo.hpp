#pragma once

#include <cstdint>
#include <vector>

#include "capplan/types.hpp"

namespace capplan {

// Recorded in output metadata so runs can be reproduced by any implementation
// of the same generator.
inline constexpr const char* kRngAlgorithm = "xoshiro256starstar";

struct SimConfig {
  std::uint64_t seed = 1;
  int replications = 10;
  std::uint64_t horizon = 100000;  // arrivals (engset/success) or sessions (timeout), per replication
  double warmup_fraction = 0.1;    // leading arrivals excluded from counting; ignored by simulate_timeout
};

struct SimEstimate {
  double mean = 0;
  double ci99_halfwidth = 0;  // normal approximation across replication means
  std::uint64_t samples = 0;  // counted events pooled over replications
};

// Embedded jump chain of the finite-source loss system: birth rate
// (S-n) lambda, death rate n mu, lost calls cleared. Estimates the fraction
// of post-warmup arrivals that find all licenses busy.
SimEstimate simulate_engset(int population, int licenses,
                            const WorkloadParams& workload,
                            const SimConfig& cfg);

// Per session: target duration T ~ Exp(mu); probes at k/r each fail
// independently with probability 1-q; timeout iff the first failure lands
// before T. The first failed probe index is drawn directly from its
// geometric law, which is distributionally identical to sampling every
// probe delay. DomainError on an unstable channel unless allow_unstable,
// which opts into the q = 0 limit.
SimEstimate simulate_timeout(const ChannelParams& channel, double mu,
                             const SimConfig& cfg, bool allow_unstable = false);

// End-to-end product-form check: fraction of post-warmup arrivals that are
// admitted and never time out.
SimEstimate simulate_success_centralized(int population, int licenses,
                                         const WorkloadParams& workload,
                                         const ChannelParams& channel,
                                         const SimConfig& cfg,
                                         bool allow_unstable = false);

namespace detail {

// Single-replication means; replication `rep` of seed `seed` draws from the
// same stream no matter how replications are scheduled.
double engset_replication(int population, int licenses, double rho,
                          std::uint64_t seed, std::uint64_t rep,
                          std::uint64_t horizon, double warmup_fraction,
                          std::uint64_t* counted);
double timeout_replication(double q, double log_q, double mu,
                           double probe_rate, std::uint64_t seed,
                           std::uint64_t rep, std::uint64_t horizon);
double success_replication(int population, int licenses, double rho, double q,
                           double log_q, double mu, double probe_rate,
                           std::uint64_t seed, std::uint64_t rep,
                           std::uint64_t horizon, double warmup_fraction,
                           std::uint64_t* counted);

SimEstimate pool_replications(const std::vector<double>& replication_means,
                              std::uint64_t samples);

}  // namespace detail

}  // namespace capplan
