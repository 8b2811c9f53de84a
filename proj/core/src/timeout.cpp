#include "capplan/timeout.hpp"

#include <cmath>

#include "capplan/errors.hpp"

namespace capplan {

namespace {

// (M C - Lambda) tau, the probe-failure exponent of a stable link.
double failure_exponent(const ChannelParams& channel) {
  return (channel.packet_service_factor * channel.capacity_total() -
          channel.background_rate) *
         channel.timeout_threshold;
}

}  // namespace

bool channel_unstable(const ChannelParams& channel) {
  validate(channel);
  return channel.packet_service_factor * channel.capacity_total() <=
         channel.background_rate;
}

double probe_success(const ChannelParams& channel) {
  validate(channel);
  const double x = failure_exponent(channel);
  if (x <= 0) return 0.0;
  return -std::expm1(-x);
}

ProbeModel make_probe_model(const ChannelParams& channel, double mu) {
  if (!std::isfinite(mu) || !(mu > 0)) throw DomainError("timeout: mu must be finite and > 0");
  return ProbeModel{probe_success(channel), channel.probe_rate, mu};
}

double timeout_laplace(const ProbeModel& model, double s) {
  if (!std::isfinite(model.q) || model.q < 0 || model.q > 1)
    throw DomainError("timeout: q must lie in [0,1]");
  if (!(model.probe_rate > 0)) throw DomainError("timeout: probe_rate must be > 0");
  if (!std::isfinite(s) || s < 0) throw DomainError("timeout: transform argument must be >= 0");
  if (s == 0) {
    if (model.q == 1)
      throw DomainError("timeout: D is almost surely infinite at q = 1; the transform has no value at s = 0");
    return 1.0;
  }
  const double a = std::exp(-s / model.probe_rate);
  return a * (1.0 - model.q) / (1.0 - a * model.q);
}

double timeout_probability(const ChannelParams& channel, double mu) {
  validate(channel);
  if (!std::isfinite(mu) || !(mu > 0)) throw DomainError("timeout: mu must be finite and > 0");
  const double a = std::exp(-mu / channel.probe_rate);
  const double x = failure_exponent(channel);
  if (x <= 0) return a;  // unstable link: q = 0, every renewal fails
  if (-std::expm1(-x) >= 1.0) return 0.0;  // q rounded to 1: renewals never fail
  // D*(mu) rearranged over e^{-x} so 1-q never cancels:
  //   p = a e^{-x} / ((1-a) + a e^{-x})
  const double ex = std::exp(-x);
  const double one_minus_a = -std::expm1(-mu / channel.probe_rate);
  return a * ex / (one_minus_a + a * ex);
}

double capacity_for_timeout(double p_target, double mu, double probe_rate,
                            double tau, double background_rate,
                            double packet_service_factor) {
  if (!std::isfinite(mu) || !(mu > 0)) throw DomainError("timeout: mu must be finite and > 0");
  if (!std::isfinite(probe_rate) || !(probe_rate > 0)) throw DomainError("timeout: probe_rate must be finite and > 0");
  if (!std::isfinite(tau) || !(tau > 0)) throw DomainError("timeout: tau must be finite and > 0");
  if (!(tau < 1.0 / probe_rate)) throw DomainError("timeout: tau must stay below the probe interval 1/probe_rate");
  if (!std::isfinite(background_rate) || background_rate < 0)
    throw DomainError("timeout: background_rate must be finite and >= 0");
  if (!std::isfinite(packet_service_factor) || !(packet_service_factor > 0))
    throw DomainError("timeout: packet_service_factor must be finite and > 0");
  const double p_max = std::exp(-mu / probe_rate);
  if (!std::isfinite(p_target) || !(p_target > 0) || !(p_target < p_max))
    throw DomainError("timeout: p_target must lie in the attainable range (0, exp(-mu/probe_rate))");
  // ln((1-p) / (p (e^{mu/r} - 1))) split into log terms to keep precision at
  // both ends of the range.
  const double log_argument = std::log1p(-p_target) - std::log(p_target) -
                              std::log(std::expm1(mu / probe_rate));
  return (background_rate + log_argument / tau) / packet_service_factor;
}

double utilization(const ChannelParams& channel) {
  validate(channel);
  return channel.background_rate /
         (channel.packet_service_factor * channel.capacity_total());
}

}  // namespace capplan
