#include "capplan/types.hpp"

#include <cmath>

#include "capplan/errors.hpp"

namespace capplan {

namespace {

bool finite_pos(double v) { return std::isfinite(v) && v > 0; }
bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0; }

}  // namespace

int PoolLayout::total_population() const {
  int total = 0;
  for (const auto& s : sites) total += s.population;
  return total;
}

int PoolLayout::total_licenses() const {
  int total = 0;
  for (const auto& s : sites) total += s.licenses;
  return total;
}

void validate(const WorkloadParams& w) {
  if (!finite_pos(w.lambda)) throw DomainError("workload: lambda must be finite and > 0");
  if (!finite_pos(w.mu)) throw DomainError("workload: mu must be finite and > 0");
  if (!finite_pos(w.rho())) throw DomainError("workload: rho must be finite and > 0");
}

void validate(const ChannelParams& c) {
  if (!finite_pos(c.capacity_base)) throw DomainError("channel: capacity_base must be finite and > 0");
  if (!finite_nonneg(c.capacity_extra)) throw DomainError("channel: capacity_extra must be finite and >= 0");
  if (!finite_pos(c.packet_service_factor)) throw DomainError("channel: packet_service_factor must be finite and > 0");
  if (!finite_nonneg(c.background_rate)) throw DomainError("channel: background_rate must be finite and >= 0");
  if (!finite_pos(c.probe_rate)) throw DomainError("channel: probe_rate must be finite and > 0");
  if (!finite_pos(c.timeout_threshold)) throw DomainError("channel: timeout_threshold must be finite and > 0");
  if (!(c.timeout_threshold < 1.0 / c.probe_rate))
    throw DomainError("channel: timeout_threshold must stay below the probe interval 1/probe_rate");
}

void validate(const PoolLayout& l) {
  if (l.sites.empty()) throw DomainError("layout: at least one site is required");
  for (const auto& s : l.sites) {
    if (s.population < 1) throw DomainError("layout: every site population must be >= 1");
    if (s.licenses < 0) throw DomainError("layout: site licenses must be >= 0");
  }
}

void validate(const CostModel& c) {
  if (!finite_nonneg(c.alpha)) throw DomainError("cost: alpha must be finite and >= 0");
  if (!finite_nonneg(c.beta)) throw DomainError("cost: beta must be finite and >= 0");
  if (c.links_upgraded < 1) throw DomainError("cost: links_upgraded must be >= 1");
}

void validate(const SlaTarget& s) {
  if (!std::isfinite(s.success_min) || !(s.success_min > 0) || !(s.success_min < 1))
    throw DomainError("sla: success_min must lie strictly inside (0,1)");
}

}  // namespace capplan
