#pragma once

#include <string>
#include <vector>

#include "capplan/config.hpp"

namespace capplan {

enum class SweepKind {
  blocking_vs_licenses,
  timeout_vs_capacity,
  timeout_vs_utilization,
  success_surface,
  cost_contours,
};

const char* sweep_kind_name(SweepKind kind);
SweepKind sweep_kind_from_name(const std::string& name);  // DomainError on unknown
bool sweep_has_level(SweepKind kind);

struct SweepRow {
  std::string series;
  std::string x_name;
  double x = 0;
  std::string y_name;
  double y = 0;
  double level = 0;  // cost_contours only

  bool operator==(const SweepRow&) const = default;
};

// Grid description on top of a fixed scenario config. Each kind reads the
// subset it needs:
//   blocking_vs_licenses   licenses_min..max; series "centralized" and
//                          "distributed_equal_split" (two-pool even split)
//   timeout_vs_capacity    capacity grid x taus; one series per tau
//   timeout_vs_utilization utilization grid x background_rates; one series
//                          per background rate, capacity solved from u
//   success_surface        licenses grid x capacity grid; series "L=<k>"
//   cost_contours          cost lines per level over the licenses grid, the
//                          centralized SLA locus (L, C_required(L)), and the
//                          distributed SLA locus (L*, C) over the capacity
//                          grid; all rows carry the level column
struct SweepSpec {
  SweepKind kind = SweepKind::blocking_vs_licenses;
  NormalizedConfig config;
  int licenses_min = 1;
  int licenses_max = 30;
  double capacity_min_mbps = 10;
  double capacity_max_mbps = 25;
  int capacity_steps = 31;
  std::vector<double> taus{0.01, 0.05};
  double utilization_min = 0.4;
  double utilization_max = 0.9;
  int utilization_steps = 26;
  std::vector<double> background_rates{900.0, 90.0};
  std::vector<double> cost_levels;
};

// Pure re-evaluation of module operations over the grid. Row order is fixed
// by grid index; with threads > 1 rows are still written by index, so output
// is identical for every thread count.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, int threads = 1);

// Grid helper shared with consumers; pinned arithmetic so refined grids hit
// coarse points exactly: value(i) = min + (i * span) / (steps - 1).
double linspace_point(double min, double max, int steps, int index);

}  // namespace capplan
