#include "capplan/montecarlo.hpp"

#include <cmath>

#include "capplan/errors.hpp"
#include "capplan/rng.hpp"
#include "capplan/timeout.hpp"

namespace capplan {

namespace {

constexpr double kZ99 = 2.5758293035489008;  // two-sided 99% normal quantile

void check_sim_config(const SimConfig& cfg) {
  if (cfg.replications < 1) throw DomainError("simulate: replications must be >= 1");
  if (cfg.horizon < 1) throw DomainError("simulate: horizon must be >= 1");
  if (!(cfg.warmup_fraction >= 0) || !(cfg.warmup_fraction < 1))
    throw DomainError("simulate: warmup_fraction must lie in [0,1)");
}

// q and ln(q) from the probe-failure exponent x = (M C - Lambda) tau,
// computed from x directly so q near 1 keeps precision.
struct ProbeDraws {
  double q;
  double log_q;
};

ProbeDraws probe_draws(const ChannelParams& channel, bool allow_unstable,
                       const char* who) {
  if (channel_unstable(channel)) {
    if (!allow_unstable)
      throw DomainError(std::string(who) +
                        ": unstable channel (M C <= Lambda); opt into the q = 0 limit with allow_unstable");
    return {0.0, 0.0};
  }
  const double x = (channel.packet_service_factor * channel.capacity_total() -
                    channel.background_rate) *
                   channel.timeout_threshold;
  const double q = -std::expm1(-x);
  const double log_q = std::log1p(-std::exp(-x));
  return {q, log_q};
}

}  // namespace

namespace detail {

SimEstimate pool_replications(const std::vector<double>& replication_means,
                              std::uint64_t samples) {
  const std::size_t count = replication_means.size();
  double sum = 0;
  for (double m : replication_means) sum += m;
  const double mean = sum / double(count);
  double halfwidth = 0;
  if (count > 1) {
    double ss = 0;
    for (double m : replication_means) ss += (m - mean) * (m - mean);
    const double sd = std::sqrt(ss / double(count - 1));
    halfwidth = kZ99 * sd / std::sqrt(double(count));
  }
  return SimEstimate{mean, halfwidth, samples};
}

double engset_replication(int population, int licenses, double rho,
                          std::uint64_t seed, std::uint64_t rep,
                          std::uint64_t horizon, double warmup_fraction,
                          std::uint64_t* counted_out) {
  Xoshiro256StarStar rng(seed, rep);
  const std::uint64_t warmup = std::uint64_t(warmup_fraction * double(horizon));
  std::uint64_t arrivals = 0, counted = 0, blocked = 0;
  int active = 0;
  while (arrivals < horizon) {
    const double arrival_weight = double(population - active) * rho;
    const double p_arrival = arrival_weight / (arrival_weight + double(active));
    if (rng.uniform01() < p_arrival) {
      ++arrivals;
      const bool count = arrivals > warmup;
      if (active >= licenses) {
        if (count) {
          ++blocked;
          ++counted;
        }
      } else {
        ++active;
        if (count) ++counted;
      }
    } else {
      --active;
    }
  }
  if (counted_out) *counted_out = counted;
  return double(blocked) / double(counted);
}

double timeout_replication(double q, double log_q, double mu,
                           double probe_rate, std::uint64_t seed,
                           std::uint64_t rep, std::uint64_t horizon) {
  Xoshiro256StarStar rng(seed, rep);
  const double probe_interval = 1.0 / probe_rate;
  std::uint64_t timeouts = 0;
  for (std::uint64_t i = 0; i < horizon; ++i) {
    const double target = rng.exponential(mu);
    double first_failure = 1.0;
    if (q > 0.0)
      first_failure = 1.0 + std::floor(std::log(rng.uniform01_open0()) / log_q);
    if (first_failure * probe_interval < target) ++timeouts;
  }
  return double(timeouts) / double(horizon);
}

double success_replication(int population, int licenses, double rho, double q,
                           double log_q, double mu, double probe_rate,
                           std::uint64_t seed, std::uint64_t rep,
                           std::uint64_t horizon, double warmup_fraction,
                           std::uint64_t* counted_out) {
  Xoshiro256StarStar rng(seed, rep);
  const double probe_interval = 1.0 / probe_rate;
  const std::uint64_t warmup = std::uint64_t(warmup_fraction * double(horizon));
  std::uint64_t arrivals = 0, counted = 0, successes = 0;
  int active = 0;
  while (arrivals < horizon) {
    const double arrival_weight = double(population - active) * rho;
    const double p_arrival = arrival_weight / (arrival_weight + double(active));
    if (rng.uniform01() < p_arrival) {
      ++arrivals;
      const bool count = arrivals > warmup;
      if (active >= licenses) {
        if (count) ++counted;  // blocked: counted, never successful
      } else {
        ++active;
        if (count) {
          ++counted;
          const double target = rng.exponential(mu);
          double first_failure = 1.0;
          if (q > 0.0)
            first_failure = 1.0 + std::floor(std::log(rng.uniform01_open0()) / log_q);
          const bool timed_out = q < 1.0 && first_failure * probe_interval < target;
          if (!timed_out) ++successes;
        }
      }
    } else {
      --active;
    }
  }
  if (counted_out) *counted_out = counted;
  return double(successes) / double(counted);
}

}  // namespace detail

SimEstimate simulate_engset(int population, int licenses,
                            const WorkloadParams& workload,
                            const SimConfig& cfg) {
  validate(workload);
  check_sim_config(cfg);
  if (population < 1) throw DomainError("simulate: population must be >= 1");
  if (licenses < 0) throw DomainError("simulate: licenses must be >= 0");

  std::vector<double> means;
  means.reserve(std::size_t(cfg.replications));
  std::uint64_t samples = 0;
  for (int rep = 0; rep < cfg.replications; ++rep) {
    std::uint64_t counted = 0;
    means.push_back(detail::engset_replication(
        population, licenses, workload.rho(), cfg.seed, std::uint64_t(rep),
        cfg.horizon, cfg.warmup_fraction, &counted));
    samples += counted;
  }
  return detail::pool_replications(means, samples);
}

SimEstimate simulate_timeout(const ChannelParams& channel, double mu,
                             const SimConfig& cfg, bool allow_unstable) {
  check_sim_config(cfg);
  if (!std::isfinite(mu) || !(mu > 0)) throw DomainError("simulate: mu must be finite and > 0");
  const ProbeDraws draws = probe_draws(channel, allow_unstable, "simulate_timeout");

  std::vector<double> means;
  means.reserve(std::size_t(cfg.replications));
  if (draws.q >= 1.0) {
    // renewals never fail; no draws needed
    means.assign(std::size_t(cfg.replications), 0.0);
  } else {
    for (int rep = 0; rep < cfg.replications; ++rep)
      means.push_back(detail::timeout_replication(
          draws.q, draws.log_q, mu, channel.probe_rate, cfg.seed,
          std::uint64_t(rep), cfg.horizon));
  }
  return detail::pool_replications(means,
                                   std::uint64_t(cfg.replications) * cfg.horizon);
}

SimEstimate simulate_success_centralized(int population, int licenses,
                                         const WorkloadParams& workload,
                                         const ChannelParams& channel,
                                         const SimConfig& cfg,
                                         bool allow_unstable) {
  validate(workload);
  check_sim_config(cfg);
  if (population < 1) throw DomainError("simulate: population must be >= 1");
  if (licenses < 0) throw DomainError("simulate: licenses must be >= 0");
  const ProbeDraws draws =
      probe_draws(channel, allow_unstable, "simulate_success_centralized");

  std::vector<double> means;
  means.reserve(std::size_t(cfg.replications));
  std::uint64_t samples = 0;
  for (int rep = 0; rep < cfg.replications; ++rep) {
    std::uint64_t counted = 0;
    means.push_back(detail::success_replication(
        population, licenses, workload.rho(), draws.q, draws.log_q,
        workload.mu, channel.probe_rate, cfg.seed, std::uint64_t(rep),
        cfg.horizon, cfg.warmup_fraction, &counted));
    samples += counted;
  }
  return detail::pool_replications(means, samples);
}

}  // namespace capplan
