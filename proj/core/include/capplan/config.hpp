#pragma once

#include <map>
#include <string>
#include <vector>

#include "capplan/types.hpp"

namespace capplan {

// Flat key/value configuration. Values keep their unit-suffixed spelling until
// normalize() converts everything to the internal convention (s, bit, bit/s,
// pkt/s). Syntax: one `key = value` per line, values optionally double-quoted,
// full-line comments start with '#', later duplicates win.
struct RawConfig {
  std::map<std::string, std::string> values;

  static RawConfig from_text(const std::string& text);
  static RawConfig from_file(const std::string& path);
};

struct NormalizedConfig {
  WorkloadParams workload;
  ChannelParams channel;
  PoolLayout layout;
  CostModel cost;
  SlaTarget sla;
};

// Recognized keys, in schema order:
//   session_duration   duration, mean target session length (mu = 1/value)
//   arrival_rate       rate, per idle user (alternative to rho)
//   rho                bare number, offered load per user (lambda = rho * mu)
//   capacity_base      bandwidth, C0
//   capacity_extra     bandwidth, C' (default 0)
//   packet_size        data size, mean packet (M = 1/value in bits)
//   background_rate    packet rate, Lambda
//   probe_interval     duration, 1/r
//   tau                duration, probe delay threshold
//   sites              comma-separated populations, e.g. "15,15"
//   licenses           comma-separated per-site licenses (default all 0)
//   alpha              bare number, cost per license
//   beta               bare number, cost per Mbps of extra capacity
//   links_upgraded     integer n (default 1)
//   sla                bare number, required success probability
// Exactly one of arrival_rate / rho is required; all keys without a listed
// default are required. Unknown keys raise UnitError.
extern const std::vector<std::string> kConfigKeys;

NormalizedConfig normalize(const RawConfig& raw);

// Canonical base-unit spelling of a normalized config;
// normalize(denormalize(x)) round-trips to within 1e-12 relative.
RawConfig denormalize(const NormalizedConfig& cfg);

}  // namespace capplan
