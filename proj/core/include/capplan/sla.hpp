#pragma once

#include "capplan/types.hpp"

namespace capplan {

enum class Architecture { centralized, distributed };

const char* architecture_name(Architecture a);

struct SuccessReport {
  Architecture architecture = Architecture::centralized;
  double blocking = 0;
  double timeout = 0;  // fixed at 0 for distributed
  double success = 0;  // (1 - blocking) * (1 - timeout)
  bool channel_unstable = false;
};

// s_c = (1 - b(L,S)) (1 - p); carries the link instability warning through.
SuccessReport success_centralized(const WorkloadParams& workload,
                                  const ChannelParams& channel, int licenses,
                                  int population);

// s_d = 1 - b_d; local pools see no probe path, so timeout is 0.
SuccessReport success_distributed(const WorkloadParams& workload,
                                  const PoolLayout& layout);

// Largest timeout probability compatible with the SLA at a given blocking:
// p_max = 1 - s / (1 - b). InfeasibleError when 1 - b <= s (no timeout level
// can rescue the target).
double max_timeout_for_sla(double success_min, double blocking);

}  // namespace capplan
