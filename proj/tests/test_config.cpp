#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "capplan/config.hpp"
#include "capplan/errors.hpp"

using namespace capplan;

namespace {

const char* kBaseText =
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
    "sla = 0.95\n";

}  // namespace

TEST_CASE("raw parsing: comments, blanks, quotes, duplicates") {
  RawConfig raw = RawConfig::from_text(
      "# leading comment\n"
      "\n"
      "alpha = 1\n"
      "  beta   =   \"2.5\"  \n"
      "alpha = 3\n");
  CHECK(raw.values.size() == 2);
  CHECK(raw.values.at("alpha") == "3");  // last duplicate wins
  CHECK(raw.values.at("beta") == "2.5");
}

TEST_CASE("raw parsing rejects lines without '='") {
  CHECK_THROWS_AS(RawConfig::from_text("alpha 1\n"), UnitError);
}

TEST_CASE("normalize resolves the baseline scenario") {
  const NormalizedConfig cfg = normalize(RawConfig::from_text(kBaseText));
  CHECK(cfg.workload.mu == doctest::Approx(1.0 / 28800.0).epsilon(1e-15));
  CHECK(cfg.workload.rho() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(cfg.channel.capacity_base == 1e7);
  CHECK(cfg.channel.capacity_extra == 0.0);  // default
  CHECK(cfg.channel.packet_service_factor == doctest::Approx(1e-4).epsilon(1e-15));
  CHECK(cfg.channel.background_rate == 900.0);
  CHECK(cfg.channel.probe_rate == doctest::Approx(1.0 / 120.0).epsilon(1e-15));
  CHECK(cfg.channel.timeout_threshold == 0.01);
  REQUIRE(cfg.layout.sites.size() == 2);
  CHECK(cfg.layout.sites[0].population == 15);
  CHECK(cfg.layout.sites[1].population == 15);
  CHECK(cfg.layout.sites[0].licenses == 0);  // default
  CHECK(cfg.cost.alpha == 1.0);
  CHECK(cfg.cost.beta == 2.0);
  CHECK(cfg.cost.links_upgraded == 1);  // default
  CHECK(cfg.sla.success_min == 0.95);
}

TEST_CASE("arrival_rate is the alternative to rho") {
  std::string text = kBaseText;
  text.replace(text.find("rho = 1\n"), 8, "arrival_rate = 3.4722222222222222e-05 1/s\n");
  const NormalizedConfig cfg = normalize(RawConfig::from_text(text));
  CHECK(cfg.workload.lambda == 3.4722222222222222e-05);

  SUBCASE("both given is an error") {
    CHECK_THROWS_AS(normalize(RawConfig::from_text(text + "rho = 1\n")), UnitError);
  }
  SUBCASE("neither given is an error") {
    std::string bare = kBaseText;
    bare.replace(bare.find("rho = 1\n"), 8, "");
    CHECK_THROWS_AS(normalize(RawConfig::from_text(bare)), UnitError);
  }
}

TEST_CASE("unknown and missing keys raise UnitError") {
  CHECK_THROWS_AS(normalize(RawConfig::from_text(std::string(kBaseText) + "bogus = 1\n")),
                  UnitError);
  std::string missing = kBaseText;
  missing.replace(missing.find("sla = 0.95\n"), 11, "");
  CHECK_THROWS_AS(normalize(RawConfig::from_text(missing)), UnitError);
}

TEST_CASE("licenses list must match the sites list") {
  const NormalizedConfig cfg =
      normalize(RawConfig::from_text(std::string(kBaseText) + "licenses = 11,10\n"));
  CHECK(cfg.layout.sites[0].licenses == 11);
  CHECK(cfg.layout.sites[1].licenses == 10);
  CHECK_THROWS_AS(
      normalize(RawConfig::from_text(std::string(kBaseText) + "licenses = 11\n")),
      DomainError);
}

TEST_CASE("normalize validates domain invariants") {
  std::string bad_tau = kBaseText;
  bad_tau.replace(bad_tau.find("tau = 0.01 s\n"), 13, "tau = 300 s\n");  // tau >= 1/r
  CHECK_THROWS_AS(normalize(RawConfig::from_text(bad_tau)), DomainError);

  std::string bad_sla = kBaseText;
  bad_sla.replace(bad_sla.find("sla = 0.95\n"), 11, "sla = 1\n");
  CHECK_THROWS_AS(normalize(RawConfig::from_text(bad_sla)), DomainError);
}

TEST_CASE("denormalize round trips exactly") {
  const NormalizedConfig cfg = normalize(RawConfig::from_text(kBaseText));
  const NormalizedConfig again = normalize(denormalize(cfg));
  CHECK(again.workload.lambda == cfg.workload.lambda);
  CHECK(again.workload.mu == cfg.workload.mu);
  CHECK(again.channel.capacity_base == cfg.channel.capacity_base);
  CHECK(again.channel.capacity_extra == cfg.channel.capacity_extra);
  CHECK(again.channel.packet_service_factor == cfg.channel.packet_service_factor);
  CHECK(again.channel.background_rate == cfg.channel.background_rate);
  CHECK(again.channel.probe_rate == cfg.channel.probe_rate);
  CHECK(again.channel.timeout_threshold == cfg.channel.timeout_threshold);
  CHECK(again.layout.sites.size() == cfg.layout.sites.size());
  CHECK(again.cost.alpha == cfg.cost.alpha);
  CHECK(again.cost.beta == cfg.cost.beta);
  CHECK(again.cost.links_upgraded == cfg.cost.links_upgraded);
  CHECK(again.sla.success_min == cfg.sla.success_min);
}
