#include "capplan/sweep.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "capplan/engset.hpp"
#include "capplan/errors.hpp"
#include "capplan/planner.hpp"
#include "capplan/sla.hpp"
#include "capplan/timeout.hpp"
#include "capplan/units.hpp"

namespace capplan {

const char* sweep_kind_name(SweepKind kind) {
  switch (kind) {
    case SweepKind::blocking_vs_licenses: return "blocking_vs_licenses";
    case SweepKind::timeout_vs_capacity: return "timeout_vs_capacity";
    case SweepKind::timeout_vs_utilization: return "timeout_vs_utilization";
    case SweepKind::success_surface: return "success_surface";
    case SweepKind::cost_contours: return "cost_contours";
  }
  return "unknown";
}

SweepKind sweep_kind_from_name(const std::string& name) {
  for (SweepKind kind :
       {SweepKind::blocking_vs_licenses, SweepKind::timeout_vs_capacity,
        SweepKind::timeout_vs_utilization, SweepKind::success_surface,
        SweepKind::cost_contours})
    if (name == sweep_kind_name(kind)) return kind;
  throw DomainError("sweep: unknown kind '" + name + "'");
}

bool sweep_has_level(SweepKind kind) {
  return kind == SweepKind::cost_contours;
}

double linspace_point(double min, double max, int steps, int index) {
  if (steps == 1) return min;
  return min + (double(index) * (max - min)) / double(steps - 1);
}

namespace {

using Task = std::function<SweepRow()>;

void check_grid(bool ok, const char* what) {
  if (!ok) throw DomainError(std::string("sweep: ") + what);
}

ChannelParams with_total_capacity(const ChannelParams& base, double capacity_bps) {
  ChannelParams ch = base;
  ch.capacity_base = capacity_bps;
  ch.capacity_extra = 0;
  return ch;
}

void build_blocking_vs_licenses(const SweepSpec& spec, std::vector<Task>& tasks) {
  check_grid(spec.licenses_min >= 0 && spec.licenses_max >= spec.licenses_min,
             "licenses range is empty");
  const int population = spec.config.layout.total_population();
  const double rho = spec.config.workload.rho();
  for (int l = spec.licenses_min; l <= spec.licenses_max; ++l) {
    tasks.push_back([l, population, rho] {
      return SweepRow{"centralized", "licenses", double(l), "blocking",
                      blocking_recursive(l, population, rho)};
    });
    tasks.push_back([l, population, rho] {
      return SweepRow{"distributed_equal_split", "licenses", double(l), "blocking",
                      blocking_distributed(equal_two_pool_split(population, l), rho)};
    });
  }
}

void build_timeout_vs_capacity(const SweepSpec& spec, std::vector<Task>& tasks) {
  check_grid(!spec.taus.empty(), "taus list is empty");
  check_grid(spec.capacity_steps > 0, "capacity_steps must be > 0");
  check_grid(spec.capacity_max_mbps >= spec.capacity_min_mbps, "capacity range is empty");
  const double mu = spec.config.workload.mu;
  for (double tau : spec.taus) {
    const std::string series = "tau=" + units::format_number(tau);
    for (int i = 0; i < spec.capacity_steps; ++i) {
      const double mbps = linspace_point(spec.capacity_min_mbps,
                                         spec.capacity_max_mbps,
                                         spec.capacity_steps, i);
      ChannelParams ch = with_total_capacity(spec.config.channel, mbps * kBitsPerMbps);
      ch.timeout_threshold = tau;
      tasks.push_back([series, mbps, ch, mu] {
        return SweepRow{series, "capacity_mbps", mbps, "timeout_probability",
                        timeout_probability(ch, mu)};
      });
    }
  }
}

void build_timeout_vs_utilization(const SweepSpec& spec, std::vector<Task>& tasks) {
  check_grid(!spec.background_rates.empty(), "background_rates list is empty");
  check_grid(spec.utilization_steps > 0, "utilization_steps must be > 0");
  check_grid(spec.utilization_min > 0 && spec.utilization_max >= spec.utilization_min &&
                 spec.utilization_max < 1,
             "utilization range must lie inside (0,1)");
  const double mu = spec.config.workload.mu;
  const double service_factor = spec.config.channel.packet_service_factor;
  for (double background : spec.background_rates) {
    check_grid(background > 0, "background rates must be > 0");
    const std::string series = "background_rate=" + units::format_number(background);
    for (int i = 0; i < spec.utilization_steps; ++i) {
      const double u = linspace_point(spec.utilization_min, spec.utilization_max,
                                      spec.utilization_steps, i);
      ChannelParams ch = with_total_capacity(spec.config.channel,
                                             background / (u * service_factor));
      ch.background_rate = background;
      tasks.push_back([series, u, ch, mu] {
        return SweepRow{series, "utilization", u, "timeout_probability",
                        timeout_probability(ch, mu)};
      });
    }
  }
}

void build_success_surface(const SweepSpec& spec, std::vector<Task>& tasks) {
  check_grid(spec.licenses_min >= 0 && spec.licenses_max >= spec.licenses_min,
             "licenses range is empty");
  check_grid(spec.capacity_steps > 0, "capacity_steps must be > 0");
  check_grid(spec.capacity_max_mbps >= spec.capacity_min_mbps, "capacity range is empty");
  const int population = spec.config.layout.total_population();
  const WorkloadParams workload = spec.config.workload;
  for (int l = spec.licenses_min; l <= spec.licenses_max; ++l) {
    const std::string series = "L=" + std::to_string(l);
    for (int i = 0; i < spec.capacity_steps; ++i) {
      const double mbps = linspace_point(spec.capacity_min_mbps,
                                         spec.capacity_max_mbps,
                                         spec.capacity_steps, i);
      const ChannelParams ch =
          with_total_capacity(spec.config.channel, mbps * kBitsPerMbps);
      tasks.push_back([series, mbps, ch, workload, l, population] {
        return SweepRow{series, "capacity_mbps", mbps, "success",
                        success_centralized(workload, ch, l, population).success};
      });
    }
  }
}

void build_cost_contours(const SweepSpec& spec, std::vector<Task>& tasks) {
  check_grid(spec.licenses_min >= 0 && spec.licenses_max >= spec.licenses_min,
             "licenses range is empty");
  check_grid(spec.capacity_steps > 0, "capacity_steps must be > 0");
  check_grid(spec.capacity_max_mbps >= spec.capacity_min_mbps, "capacity range is empty");
  const CostModel& cost = spec.config.cost;
  const double bandwidth_cost = cost.beta * cost.links_upgraded;
  check_grid(bandwidth_cost > 0, "cost_contours needs beta * links_upgraded > 0");
  const NormalizedConfig& cfg = spec.config;
  const double base_mbps = cfg.channel.capacity_base / kBitsPerMbps;
  const int population = cfg.layout.total_population();
  const double rho = cfg.workload.rho();
  const double s = cfg.sla.success_min;

  // straight lines c = alpha L + beta n (C - C0) in the (L, C) plane
  for (double level : spec.cost_levels) {
    for (int l = spec.licenses_min; l <= spec.licenses_max; ++l) {
      const double budget = level - cost.alpha * l;
      if (budget < 0) continue;
      const double mbps = base_mbps + budget / bandwidth_cost;
      tasks.push_back([level, l, mbps] {
        return SweepRow{"cost_line", "licenses", double(l), "capacity_mbps", mbps, level};
      });
    }
  }

  // centralized constraint locus: capacity where (1-b(L))(1-p) = s, per L
  const double attainable_max =
      std::exp(-cfg.workload.mu / cfg.channel.probe_rate);
  for (int l = spec.licenses_min; l <= spec.licenses_max; ++l) {
    const double blocking = blocking_recursive(l, population, rho);
    if (!(1.0 - blocking > s)) continue;
    const double p_max = 1.0 - s / (1.0 - blocking);
    const WorkloadParams workload = cfg.workload;
    const ChannelParams base = cfg.channel;
    tasks.push_back([l, p_max, attainable_max, workload, base, s] {
      double capacity;
      if (p_max >= attainable_max) {
        // satisfied at every stable capacity; pin the stability boundary
        capacity = base.background_rate / base.packet_service_factor;
      } else {
        capacity = capacity_for_timeout(p_max, workload.mu, base.probe_rate,
                                        base.timeout_threshold,
                                        base.background_rate,
                                        base.packet_service_factor);
      }
      return SweepRow{"sla_centralized", "licenses", double(l), "capacity_mbps",
                      capacity / kBitsPerMbps, s};
    });
  }

  // distributed constraint locus: vertical line at the exact license optimum
  std::vector<int> populations;
  for (const auto& site : cfg.layout.sites) populations.push_back(site.population);
  const WorkloadParams workload = cfg.workload;
  const CostModel cost_copy = cost;
  const SlaTarget sla = cfg.sla;
  for (int i = 0; i < spec.capacity_steps; ++i) {
    const double mbps = linspace_point(spec.capacity_min_mbps,
                                       spec.capacity_max_mbps,
                                       spec.capacity_steps, i);
    tasks.push_back([populations, workload, cost_copy, sla, mbps, s] {
      const PlanResult r = optimize_distributed(workload, populations, cost_copy, sla);
      return SweepRow{"sla_distributed", "licenses", double(r.licenses_total),
                      "capacity_mbps", mbps, s};
    });
  }
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads) {
  validate(spec.config.workload);
  validate(spec.config.channel);
  validate(spec.config.layout);
  validate(spec.config.cost);
  validate(spec.config.sla);
  if (threads < 1) throw DomainError("sweep: threads must be >= 1");

  std::vector<Task> tasks;
  switch (spec.kind) {
    case SweepKind::blocking_vs_licenses: build_blocking_vs_licenses(spec, tasks); break;
    case SweepKind::timeout_vs_capacity: build_timeout_vs_capacity(spec, tasks); break;
    case SweepKind::timeout_vs_utilization: build_timeout_vs_utilization(spec, tasks); break;
    case SweepKind::success_surface: build_success_surface(spec, tasks); break;
    case SweepKind::cost_contours: build_cost_contours(spec, tasks); break;
  }

  std::vector<SweepRow> rows(tasks.size());
  const int workers = int(std::min<std::size_t>(std::size_t(threads), tasks.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < tasks.size(); ++i) rows[i] = tasks[i]();
    return rows;
  }
  // rows land at their grid index, so scheduling order cannot leak into output
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < tasks.size();)
        rows[i] = tasks[i]();
    });
  }
  for (auto& t : pool) t.join();
  return rows;
}

}  // namespace capplan
