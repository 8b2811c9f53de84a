#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "capplan/engset.hpp"
#include "capplan/errors.hpp"
#include "capplan/planner.hpp"
#include "capplan/sla.hpp"
#include "capplan/sweep.hpp"
#include "capplan/timeout.hpp"
#include "capplan/units.hpp"

using namespace capplan;

namespace {

NormalizedConfig baseline(const std::string& extra = "") {
  return normalize(RawConfig::from_text(
      "session_duration = 8 h\n"
      "rho = 1\n"
      "capacity_base = 10 Mbps\n"
      "packet_size = 1250 B\n"
      "background_rate = 900 pkt/s\n"
      "probe_interval = 120 s\n"
      "tau = 0.01 s\n"
      "sites = 15,15\n"
      "alpha = 1\n"
      "beta = 2\n"
      "sla = 0.95\n" +
      extra));
}

std::vector<SweepRow> rows_in_series(const std::vector<SweepRow>& rows,
                                     const std::string& series) {
  std::vector<SweepRow> out;
  for (const auto& row : rows)
    if (row.series == series) out.push_back(row);
  return out;
}

}  // namespace

TEST_CASE("kind names round trip") {
  for (SweepKind kind : {SweepKind::blocking_vs_licenses, SweepKind::timeout_vs_capacity,
                         SweepKind::timeout_vs_utilization, SweepKind::success_surface,
                         SweepKind::cost_contours})
    CHECK(sweep_kind_from_name(sweep_kind_name(kind)) == kind);
  CHECK_THROWS_AS(sweep_kind_from_name("nope"), DomainError);
  CHECK(sweep_has_level(SweepKind::cost_contours));
  CHECK(!sweep_has_level(SweepKind::blocking_vs_licenses));
}

TEST_CASE("linspace endpoints are exact and refinement is a supersequence") {
  CHECK(linspace_point(10.0, 25.0, 31, 0) == 10.0);
  CHECK(linspace_point(10.0, 25.0, 31, 30) == 25.0);
  CHECK(linspace_point(3.0, 3.0, 1, 0) == 3.0);
  for (int i = 0; i < 31; ++i)
    CHECK(linspace_point(10.0, 25.0, 61, 2 * i) == linspace_point(10.0, 25.0, 31, i));
}

TEST_CASE("blocking sweep re-evaluates the engset operations") {
  SweepSpec spec;
  spec.kind = SweepKind::blocking_vs_licenses;
  spec.config = baseline();
  spec.licenses_min = 1;
  spec.licenses_max = 30;
  const std::vector<SweepRow> rows = run_sweep(spec);
  REQUIRE(rows.size() == 60);
  for (int l = 1; l <= 30; ++l) {
    const SweepRow& central = rows[std::size_t(2 * (l - 1))];
    const SweepRow& split = rows[std::size_t(2 * (l - 1) + 1)];
    CHECK(central.series == "centralized");
    CHECK(central.x == double(l));
    CHECK(central.y == blocking_recursive(l, 30, 1.0));
    CHECK(split.series == "distributed_equal_split");
    CHECK(split.y == blocking_distributed(equal_two_pool_split(30, l), 1.0));
    CHECK(split.y >= central.y);
  }
}

TEST_CASE("timeout sweep spans taus and matches the closed form") {
  SweepSpec spec;
  spec.kind = SweepKind::timeout_vs_capacity;
  spec.config = baseline();
  const std::vector<SweepRow> rows = run_sweep(spec);
  REQUIRE(rows.size() == 62);  // 2 taus x 31 capacities
  const auto strict = rows_in_series(rows, "tau=" + units::format_number(0.01));
  const auto loose = rows_in_series(rows, "tau=" + units::format_number(0.05));
  REQUIRE(strict.size() == 31);
  REQUIRE(loose.size() == 31);
  for (std::size_t i = 0; i < 31; ++i) {
    CHECK(strict[i].x == loose[i].x);
    CHECK(loose[i].y < strict[i].y);  // looser threshold, fewer failures
    ChannelParams ch = spec.config.channel;
    ch.capacity_base = strict[i].x * kBitsPerMbps;
    ch.timeout_threshold = 0.01;
    CHECK(strict[i].y == timeout_probability(ch, spec.config.workload.mu));
  }
}

TEST_CASE("utilization sweep shows the faster-link gain at every shared point") {
  SweepSpec spec;
  spec.kind = SweepKind::timeout_vs_utilization;
  spec.config = baseline();
  const std::vector<SweepRow> rows = run_sweep(spec);
  REQUIRE(rows.size() == 52);  // 2 background rates x 26 utilizations
  const auto big = rows_in_series(rows, "background_rate=" + units::format_number(900.0));
  const auto small = rows_in_series(rows, "background_rate=" + units::format_number(90.0));
  REQUIRE(big.size() == 26);
  REQUIRE(small.size() == 26);
  for (std::size_t i = 0; i < 26; ++i) {
    CHECK(big[i].x == small[i].x);
    CHECK(big[i].y < small[i].y);
    // capacity is solved back from the utilization
    ChannelParams ch = spec.config.channel;
    ch.capacity_base = 900.0 / (big[i].x * ch.packet_service_factor);
    CHECK(big[i].y == timeout_probability(ch, spec.config.workload.mu));
  }
}

TEST_CASE("success surface triples licenses and capacity") {
  SweepSpec spec;
  spec.kind = SweepKind::success_surface;
  spec.config = baseline();
  spec.licenses_min = 18;
  spec.licenses_max = 23;
  spec.capacity_steps = 6;
  const std::vector<SweepRow> rows = run_sweep(spec);
  REQUIRE(rows.size() == 36);
  const auto l20 = rows_in_series(rows, "L=20");
  REQUIRE(l20.size() == 6);
  ChannelParams ch = spec.config.channel;
  ch.capacity_base = l20[2].x * kBitsPerMbps;
  CHECK(l20[2].y ==
        success_centralized(spec.config.workload, ch, 20, 30).success);
}

TEST_CASE("cost contours carry lines and both constraint loci") {
  SweepSpec spec;
  spec.kind = SweepKind::cost_contours;
  spec.config = baseline();
  spec.cost_levels = {21.0, 23.0, 35.794468202949};
  const std::vector<SweepRow> rows = run_sweep(spec);

  // the level-23 line hits (L = 23, C' = 0); alpha = 1, beta n = 2
  bool found = false;
  for (const auto& row : rows)
    if (row.series == "cost_line" && row.level == 23.0 && row.x == 23.0) {
      CHECK(row.y == doctest::Approx(10.0).epsilon(1e-12));  // C = C0
      found = true;
    }
  CHECK(found);
  // over-budget corners are dropped
  for (const auto& row : rows)
    if (row.series == "cost_line") CHECK(row.level - row.x + 1e-12 >= 0);

  // centralized locus matches the closed-form inversion at L = 20
  const auto locus = rows_in_series(rows, "sla_centralized");
  bool found20 = false;
  for (const auto& row : locus)
    if (row.x == 20.0) {
      CHECK(row.y == doctest::Approx(17.8972341).epsilon(1e-6));
      found20 = true;
    }
  CHECK(found20);
  // infeasible license counts (1 - b <= s) never emit a locus point
  for (const auto& row : locus)
    CHECK(1.0 - blocking_recursive(int(row.x), 30, 1.0) > 0.95);

  // distributed locus is the vertical line at the exact optimum
  const auto vertical = rows_in_series(rows, "sla_distributed");
  REQUIRE(vertical.size() == 31);
  for (const auto& row : vertical) CHECK(row.x == 21.0);

  SweepSpec no_bandwidth_price = spec;
  no_bandwidth_price.config.cost.beta = 0.0;
  CHECK_THROWS_AS(run_sweep(no_bandwidth_price), DomainError);
}

TEST_CASE("threaded evaluation is identical to sequential") {
  for (SweepKind kind : {SweepKind::blocking_vs_licenses, SweepKind::timeout_vs_capacity,
                         SweepKind::timeout_vs_utilization, SweepKind::cost_contours}) {
    SweepSpec spec;
    spec.kind = kind;
    spec.config = baseline();
    spec.cost_levels = {20.0, 30.0};
    const std::vector<SweepRow> one = run_sweep(spec, 1);
    const std::vector<SweepRow> four = run_sweep(spec, 4);
    CHECK(one == four);
  }
}

TEST_CASE("bad grids are rejected") {
  SweepSpec spec;
  spec.kind = SweepKind::timeout_vs_capacity;
  spec.config = baseline();
  spec.taus.clear();
  CHECK_THROWS_AS(run_sweep(spec), DomainError);

  spec = SweepSpec{};
  spec.kind = SweepKind::blocking_vs_licenses;
  spec.config = baseline();
  spec.licenses_max = spec.licenses_min - 1;
  CHECK_THROWS_AS(run_sweep(spec), DomainError);

  spec = SweepSpec{};
  spec.kind = SweepKind::timeout_vs_utilization;
  spec.config = baseline();
  spec.utilization_max = 1.0;
  CHECK_THROWS_AS(run_sweep(spec), DomainError);

  spec = SweepSpec{};
  spec.config = baseline();
  CHECK_THROWS_AS(run_sweep(spec, 0), DomainError);
}
