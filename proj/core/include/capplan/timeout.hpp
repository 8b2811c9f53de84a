#pragma once

#include "capplan/types.hpp"

namespace capplan {

// Geometric probe model: a session's state is renewed by probes sent every
// 1/r seconds; a probe fails when its M/M/1 sojourn delay exceeds tau, and
// the first failure tears the session down.
struct ProbeModel {
  double q = 0;           // single-probe renewal success probability
  double probe_rate = 0;  // r
  double mu = 0;          // session completion rate
};

// True when the link has no steady state: M * (C0 + C') <= Lambda.
bool channel_unstable(const ChannelParams& channel);

// q = 1 - exp(-(M C - Lambda) tau) for a stable link, else 0 (the
// conservative limit; pair with channel_unstable for the warning).
double probe_success(const ChannelParams& channel);

ProbeModel make_probe_model(const ChannelParams& channel, double mu);

// Laplace transform of the time to timeout D at argument s:
//   D*(s) = e^{-s/r} (1-q) / (1 - e^{-s/r} q)
// DomainError when s < 0, or when q = 1 and s = 0 (D is almost surely
// infinite there; the transform limit for s > 0 is 0).
double timeout_laplace(const ProbeModel& model, double s);

// p = P(target session duration exceeds time to first failed probe) = D*(mu).
// Evaluated in a cancellation-free arrangement (never forms 1-q once q has
// rounded to 1), so tiny probabilities keep full relative precision:
//   p = a e^{-x} / ((1-a) + a e^{-x}),  a = e^{-mu/r},  x = (M C - Lambda) tau
// Corners: unstable link (q = 0) returns exactly exp(-mu/r); q rounded to 1
// returns exactly 0.
double timeout_probability(const ChannelParams& channel, double mu);

// Inverse of timeout_probability in the total capacity C:
//   C = (1/M) (Lambda + (1/tau) ln((1-p)/(p (e^{mu/r} - 1))))
// DomainError unless 0 < p_target < e^{-mu/r}, the attainable range.
// Round-trips with timeout_probability to 1e-9 relative.
double capacity_for_timeout(double p_target, double mu, double probe_rate,
                            double tau, double background_rate,
                            double packet_service_factor);

// Lambda / (M C), the background load factor of the link.
double utilization(const ChannelParams& channel);

}  // namespace capplan
