#include "capplan/sla.hpp"

#include <cmath>

#include "capplan/engset.hpp"
#include "capplan/errors.hpp"
#include "capplan/timeout.hpp"

namespace capplan {

const char* architecture_name(Architecture a) {
  return a == Architecture::centralized ? "centralized" : "distributed";
}

SuccessReport success_centralized(const WorkloadParams& workload,
                                  const ChannelParams& channel, int licenses,
                                  int population) {
  validate(workload);
  SuccessReport report;
  report.architecture = Architecture::centralized;
  report.blocking = blocking_recursive(licenses, population, workload.rho());
  report.timeout = timeout_probability(channel, workload.mu);
  report.success = (1.0 - report.blocking) * (1.0 - report.timeout);
  report.channel_unstable = channel_unstable(channel);
  return report;
}

SuccessReport success_distributed(const WorkloadParams& workload,
                                  const PoolLayout& layout) {
  validate(workload);
  SuccessReport report;
  report.architecture = Architecture::distributed;
  report.blocking = blocking_distributed(layout, workload.rho());
  report.timeout = 0.0;
  report.success = 1.0 - report.blocking;
  report.channel_unstable = false;
  return report;
}

double max_timeout_for_sla(double success_min, double blocking) {
  if (!std::isfinite(success_min) || !(success_min > 0) || !(success_min < 1))
    throw DomainError("sla: success_min must lie strictly inside (0,1)");
  if (!std::isfinite(blocking) || blocking < 0 || blocking >= 1)
    throw DomainError("sla: blocking must lie in [0,1)");
  const double p_max = 1.0 - success_min / (1.0 - blocking);
  if (!(p_max > 0))
    throw InfeasibleError("sla: 1 - blocking <= success_min; no timeout level can meet the target");
  return p_max;
}

}  // namespace capplan
