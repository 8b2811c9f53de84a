#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "capplan/config.hpp"
#include "capplan/engset.hpp"
#include "capplan/format.hpp"
#include "capplan/montecarlo.hpp"
#include "capplan/planner.hpp"
#include "capplan/sla.hpp"
#include "capplan/timeout.hpp"

using namespace capplan;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

// stdout only; stderr goes to the null device unless the caller merges it
RunResult run_cli(const std::string& args, const std::string& env = "",
                  const std::string& redirect = "2>/dev/null") {
  const std::string command =
      env + (env.empty() ? "" : " ") + CAPPLAN_BIN + " " + args + " " + redirect;
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0)
    result.out.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

const std::string kBaselineConfig = std::string(CAPPLAN_CONFIG_DIR) + "/baseline.cfg";

NormalizedConfig baseline() {
  return normalize(RawConfig::from_file(kBaselineConfig));
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

}  // namespace

TEST_CASE("version and help exit cleanly") {
  const RunResult version = run_cli("--version");
  CHECK(version.exit_code == 0);
  CHECK(version.out == "capplan 1.0.0\n");
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("blocking --help").exit_code == 0);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("blocking --licenses 2").exit_code == 2);  // missing required
  CHECK(run_cli("blocking --licenses 2 --population 30 --rho 0.8 --method bogus").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);  // a subcommand is required
  // domain errors also map to 2, with a diagnostic on stderr
  const RunResult bad = run_cli("blocking --licenses 2 --population 30 --rho -1", "", "2>&1");
  CHECK(bad.exit_code == 2);
  CHECK(bad.out.find("rho") != std::string::npos);
  // missing config file
  CHECK(run_cli("timeout --config /nonexistent.cfg").exit_code == 2);
  // scenario commands with no config at all complain about the first key
  const RunResult none = run_cli("timeout", "CAPPLAN_CONFIG=", "2>&1");
  CHECK(none.exit_code == 2);
  CHECK(none.out.find("session_duration") != std::string::npos);
}

TEST_CASE("blocking subcommands are thin adapters") {
  CHECK(run_cli("blocking --licenses 20 --population 30 --rho 0.8").out ==
        format_sci(blocking_recursive(20, 30, 0.8)) + "\n");
  CHECK(run_cli("blocking --licenses 20 --population 30 --rho 0.8 --method direct").out ==
        format_sci(blocking_direct(20, 30, 0.8)) + "\n");
  PoolLayout layout;
  layout.sites = {SitePool{15, 11}, SitePool{15, 10}};
  CHECK(run_cli("blocking-dist --sites 15,15 --licenses 11,10 --rho 1").out ==
        format_sci(blocking_distributed(layout, 1.0)) + "\n");
  CHECK(run_cli("blocking-dist --sites 15,15 --licenses 11 --rho 1").exit_code == 2);
}

TEST_CASE("timeout and capacity come from the closed forms") {
  const NormalizedConfig cfg = baseline();
  const RunResult timeout = run_cli("timeout --config " + kBaselineConfig +
                                    " --capacity_base \"20 Mbps\"");
  CHECK(timeout.exit_code == 0);
  ChannelParams at20 = cfg.channel;
  at20.capacity_base = 2e7;
  CHECK(timeout.out == format_sci(timeout_probability(at20, cfg.workload.mu)) + "\n");

  const RunResult capacity = run_cli("capacity --config " + kBaselineConfig +
                                     " --p-target 1e-3");
  CHECK(capacity.exit_code == 0);
  const double printed_mbps = std::strtod(capacity.out.c_str(), nullptr);
  CHECK(printed_mbps == doctest::Approx(21.38530965).epsilon(1e-8));

  // feeding the printed capacity back reproduces the target
  char override_flag[64];
  std::snprintf(override_flag, sizeof(override_flag), "%.17g bit/s", printed_mbps * 1e6);
  const RunResult round_trip = run_cli("timeout --config " + kBaselineConfig +
                                       " --capacity_base \"" + override_flag + "\"");
  CHECK(std::strtod(round_trip.out.c_str(), nullptr) == doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("unstable channels warn on stderr but still report the limit") {
  const RunResult quiet = run_cli("timeout --config " + kBaselineConfig +
                                  " --capacity_base \"8 Mbps\"");
  CHECK(quiet.exit_code == 0);
  CHECK(quiet.out.find("warning") == std::string::npos);
  const RunResult loud = run_cli("timeout --config " + kBaselineConfig +
                                 " --capacity_base \"8 Mbps\"", "", "2>&1");
  CHECK(loud.out.find("warning: unstable channel") != std::string::npos);
}

TEST_CASE("success reports match the sla module") {
  const NormalizedConfig cfg = baseline();
  const SuccessReport central = success_centralized(cfg.workload, cfg.channel, 20, 30);
  const RunResult r = run_cli("success --config " + kBaselineConfig +
                              " --arch centralized --pool-licenses 20");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "architecture=centralized\n"
                 "blocking=" + format_sci(central.blocking) + "\n" +
                 "timeout=" + format_sci(central.timeout) + "\n" +
                 "success=" + format_sci(central.success) + "\n" +
                 "channel_unstable=false\n");

  const RunResult d = run_cli("success --config " + kBaselineConfig +
                              " --arch distributed --licenses 11,10");
  CHECK(d.out.find("architecture=distributed\n") == 0);
  PoolLayout layout;
  layout.sites = {SitePool{15, 11}, SitePool{15, 10}};
  CHECK(d.out.find("success=" + format_sci(success_distributed(cfg.workload, layout).success)) !=
        std::string::npos);
}

TEST_CASE("flag overrides beat the config file and the environment default") {
  // fully licensed pools never block, whatever rho the file carries
  const RunResult file_rho = run_cli("success --config " + kBaselineConfig +
                                     " --arch distributed --licenses 15,15");
  CHECK(file_rho.out.find("blocking=0.00000000000e+00") != std::string::npos);

  // $CAPPLAN_CONFIG supplies the file when --config is absent
  const RunResult via_env = run_cli("timeout --capacity_base \"20 Mbps\"",
                                    "CAPPLAN_CONFIG=" + kBaselineConfig);
  const RunResult via_flag = run_cli("timeout --config " + kBaselineConfig +
                                     " --capacity_base \"20 Mbps\"");
  CHECK(via_env.exit_code == 0);
  CHECK(via_env.out == via_flag.out);

  // an override changes the answer
  const RunResult tau_override = run_cli("timeout --config " + kBaselineConfig +
                                         " --capacity_base \"20 Mbps\" --tau \"0.05 s\"");
  CHECK(tau_override.out != via_flag.out);
}

TEST_CASE("optimize prints both arms and the plan choice") {
  const NormalizedConfig cfg = baseline();
  const RunResult r = run_cli("optimize --config " + kBaselineConfig);
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("centralized feasible=true licenses=20") != std::string::npos);
  CHECK(r.out.find("distributed feasible=true licenses=21") != std::string::npos);
  CHECK(r.out.find("chosen architecture=distributed") != std::string::npos);

  const PlanResult direct = plan(cfg.workload, cfg.channel,
                                 std::vector<int>{15, 15}, cfg.cost, cfg.sla);
  CHECK(r.out.find("cost=" + format_sci(direct.cost)) != std::string::npos);

  const RunResult one_arm = run_cli("optimize --config " + kBaselineConfig +
                                    " --arch distributed");
  CHECK(one_arm.out.find("centralized") == std::string::npos);
  CHECK(one_arm.out.find("chosen architecture=distributed") != std::string::npos);
}

TEST_CASE("simulate echoes its run header and matches the library") {
  const std::string args = "simulate --config " + kBaselineConfig +
                           " --what engset --pool-licenses 20 --seed 42"
                           " --replications 5 --horizon 20000";
  const RunResult first = run_cli(args);
  CHECK(first.exit_code == 0);
  const RunResult second = run_cli(args);
  CHECK(first.out == second.out);  // byte-identical reruns

  SimConfig sim;
  sim.seed = 42;
  sim.replications = 5;
  sim.horizon = 20000;
  const NormalizedConfig cfg = baseline();
  const SimEstimate direct = simulate_engset(30, 20, cfg.workload, sim);
  CHECK(first.out.find("what=engset\n") == 0);
  CHECK(first.out.find("rng=xoshiro256starstar\n") != std::string::npos);
  CHECK(first.out.find("seed=42\n") != std::string::npos);
  CHECK(first.out.find("mean=" + format_sci(direct.mean) + "\n") != std::string::npos);
  CHECK(first.out.find("ci99_halfwidth=" + format_sci(direct.ci99_halfwidth) + "\n") !=
        std::string::npos);
  CHECK(first.out.find("samples=" + std::to_string(direct.samples) + "\n") !=
        std::string::npos);

  // unstable channel: refused without the opt-in, accepted with it
  CHECK(run_cli("simulate --config " + kBaselineConfig +
                " --what timeout --capacity_base \"8 Mbps\" --horizon 100")
            .exit_code == 2);
  CHECK(run_cli("simulate --config " + kBaselineConfig +
                " --what timeout --capacity_base \"8 Mbps\" --horizon 100 --allow-unstable")
            .exit_code == 0);
}

TEST_CASE("sweep emits the CSV contract and a faithful manifest") {
  const std::string csv_path = "cli_sweep.csv";
  const std::string args = "sweep --config " + kBaselineConfig +
                           " --kind cost_contours --levels 21,23 --output " + csv_path;
  const RunResult r = run_cli(args);
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("sweep_kind,series,x_name,x,y_name,y,level\n", 0) == 0);
  const std::string file_copy = slurp(csv_path);
  CHECK(file_copy == r.out);

  const nlohmann::json manifest = nlohmann::json::parse(slurp(csv_path + ".manifest.json"));
  CHECK(manifest.at("tool") == "capplan");
  CHECK(manifest.at("version") == "1.0.0");
  CHECK(manifest.at("subcommand") == "sweep");
  CHECK(manifest.at("config").at("sites") == "15,15");
  const auto& output = manifest.at("outputs").at(0);
  CHECK(output.at("path") == csv_path);
  CHECK(output.at("bytes") == file_copy.size());
  char expected_hash[20];
  std::snprintf(expected_hash, sizeof(expected_hash), "0x%016llx",
                static_cast<unsigned long long>(fnv1a64(file_copy)));
  CHECK(output.at("fnv1a64") == expected_hash);

  // non-level kinds omit the trailing column
  const RunResult plain = run_cli("sweep --config " + kBaselineConfig +
                                  " --kind blocking_vs_licenses");
  CHECK(plain.out.rfind("sweep_kind,series,x_name,x,y_name,y\n", 0) == 0);

  // simulate manifests carry the seed and generator
  const RunResult sim = run_cli("simulate --config " + kBaselineConfig +
                                " --what engset --pool-licenses 20 --seed 7"
                                " --replications 2 --horizon 500 --output cli_sim.txt");
  CHECK(sim.exit_code == 0);
  const nlohmann::json sim_manifest = nlohmann::json::parse(slurp("cli_sim.txt.manifest.json"));
  CHECK(sim_manifest.at("seed") == 7);
  CHECK(sim_manifest.at("rng") == "xoshiro256starstar");
}
