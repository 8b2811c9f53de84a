// capplan command line front end: config ingestion, one subcommand per
// library operation, CSV/JSON emission. No numeric logic lives here.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "capplan/config.hpp"
#include "capplan/engset.hpp"
#include "capplan/errors.hpp"
#include "capplan/format.hpp"
#include "capplan/montecarlo.hpp"
#include "capplan/planner.hpp"
#include "capplan/sla.hpp"
#include "capplan/sweep.hpp"
#include "capplan/timeout.hpp"
#include "capplan/units.hpp"
#include "capplan/version.hpp"

using namespace capplan;

namespace {

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string hash_hex(std::uint64_t value) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(value));
  return buf;
}

std::vector<int> split_ints(const std::string& text, const char* what) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    values.push_back(int(units::parse_number(item)));
  if (values.empty()) throw UnitError(std::string(what) + ": empty list");
  return values;
}

// Output routing shared by every subcommand: stdout always, --output for a
// file copy, and a run manifest alongside any file output (or at --manifest).
struct OutputOpts {
  std::string output_path;
  std::string manifest_path;
};

struct RunContext {
  std::vector<std::string> argv;
};

void emit(const RunContext& run, const std::string& subcommand,
          const OutputOpts& out, const std::string& content,
          const RawConfig* resolved_config,
          const std::uint64_t* seed) {
  std::fwrite(content.data(), 1, content.size(), stdout);

  const bool want_manifest = !out.output_path.empty() || !out.manifest_path.empty();
  if (!out.output_path.empty()) {
    std::ofstream file(out.output_path, std::ios::binary);
    if (!file) throw UnitError("cannot write output file '" + out.output_path + "'");
    file.write(content.data(), std::streamsize(content.size()));
  }
  if (!want_manifest) return;

  nlohmann::json manifest;
  manifest["tool"] = kToolName;
  manifest["version"] = kVersion;
  manifest["subcommand"] = subcommand;
  manifest["argv"] = run.argv;
  nlohmann::json cfg = nlohmann::json::object();
  if (resolved_config)
    for (const auto& [key, value] : resolved_config->values) cfg[key] = value;
  manifest["config"] = cfg;
  if (seed) {
    manifest["seed"] = *seed;
    manifest["rng"] = kRngAlgorithm;
  }
  manifest["outputs"] = nlohmann::json::array(
      {{{"path", out.output_path.empty() ? "-" : out.output_path},
        {"fnv1a64", hash_hex(fnv1a64(content))},
        {"bytes", content.size()}}});

  const std::string manifest_path = !out.manifest_path.empty()
                                        ? out.manifest_path
                                        : out.output_path + ".manifest.json";
  std::ofstream file(manifest_path, std::ios::binary);
  if (!file) throw UnitError("cannot write manifest file '" + manifest_path + "'");
  const std::string body = manifest.dump(2) + "\n";
  file.write(body.data(), std::streamsize(body.size()));
}

// Scenario commands read a config file (--config or $CAPPLAN_CONFIG) with
// every config key exposed as an override flag of the same name.
struct ScenarioOpts {
  std::string config_path;
  std::map<std::string, std::string> override_values;
  std::map<std::string, CLI::Option*> override_opts;

  void attach(CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "config file (default: $CAPPLAN_CONFIG)");
    for (const auto& key : kConfigKeys)
      override_opts[key] = sub->add_option(
          "--" + key, override_values[key], "override config key " + key);
  }

  RawConfig resolve() const {
    std::string path = config_path;
    if (path.empty())
      if (const char* env = std::getenv("CAPPLAN_CONFIG")) path = env;
    RawConfig raw;
    if (!path.empty()) raw = RawConfig::from_file(path);
    for (const auto& [key, opt] : override_opts)
      if (opt->count() > 0) raw.values[key] = override_values.at(key);
    return raw;
  }
};

void attach_output(CLI::App* sub, OutputOpts& out) {
  sub->add_option("--output", out.output_path, "also write the output to this file");
  sub->add_option("--manifest", out.manifest_path,
                  "run manifest path (default: <output>.manifest.json)");
}

std::string plan_line(const char* label, const PlanResult& r) {
  std::string allocation;
  for (std::size_t i = 0; i < r.licenses_per_site.size(); ++i) {
    if (i) allocation += ',';
    allocation += std::to_string(r.licenses_per_site[i]);
  }
  std::string line = label;
  line += " feasible=true licenses=" + std::to_string(r.licenses_total);
  line += " allocation=" + allocation;
  line += " capacity_extra_mbps=" + format_sci(r.capacity_extra / kBitsPerMbps);
  line += " cost=" + format_sci(r.cost);
  line += " success=" + format_sci(r.achieved_success);
  line += "\n";
  return line;
}

std::string to_csv(SweepKind kind, const std::vector<SweepRow>& rows) {
  const bool level = sweep_has_level(kind);
  std::string out = "sweep_kind,series,x_name,x,y_name,y";
  if (level) out += ",level";
  out += "\n";
  for (const auto& row : rows) {
    out += sweep_kind_name(kind);
    out += ',';
    out += row.series;
    out += ',';
    out += row.x_name;
    out += ',';
    out += format_sci(row.x);
    out += ',';
    out += row.y_name;
    out += ',';
    out += format_sci(row.y);
    if (level) {
      out += ',';
      out += format_sci(row.level);
    }
    out += "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  RunContext run;
  for (int i = 0; i < argc; ++i) run.argv.push_back(argv[i]);

  CLI::App app{"capacity planner: centralize or distribute a session license pool"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);
  app.require_subcommand(1);

  // blocking
  auto* blocking_cmd = app.add_subcommand("blocking", "Engset blocking probability");
  int b_licenses = 0, b_population = 0;
  double b_rho = 0;
  std::string b_method = "recursive";
  OutputOpts b_out;
  blocking_cmd->add_option("--licenses", b_licenses, "license count L")->required();
  blocking_cmd->add_option("--population", b_population, "user population S")->required();
  blocking_cmd->add_option("--rho", b_rho, "offered load per user")->required();
  blocking_cmd->add_option("--method", b_method, "recursive|direct")
      ->check(CLI::IsMember({"recursive", "direct"}));
  attach_output(blocking_cmd, b_out);
  blocking_cmd->callback([&] {
    const BlockingResult r =
        compute_blocking(b_licenses, b_population, b_rho,
                         b_method == "direct" ? BlockingMethod::direct
                                              : BlockingMethod::recursive);
    emit(run, "blocking", b_out, format_sci(r.probability) + "\n", nullptr, nullptr);
  });

  // blocking-dist
  auto* bdist_cmd = app.add_subcommand("blocking-dist", "population-weighted blocking over pools");
  std::string bd_sites, bd_licenses;
  double bd_rho = 0;
  OutputOpts bd_out;
  bdist_cmd->add_option("--sites", bd_sites, "per-site populations, e.g. 15,15")->required();
  bdist_cmd->add_option("--licenses", bd_licenses, "per-site licenses, e.g. 10,11")->required();
  bdist_cmd->add_option("--rho", bd_rho, "offered load per user")->required();
  attach_output(bdist_cmd, bd_out);
  bdist_cmd->callback([&] {
    const std::vector<int> pops = split_ints(bd_sites, "sites");
    const std::vector<int> lics = split_ints(bd_licenses, "licenses");
    if (pops.size() != lics.size())
      throw DomainError("licenses list length must match sites list length");
    PoolLayout layout;
    for (std::size_t i = 0; i < pops.size(); ++i)
      layout.sites.push_back(SitePool{pops[i], lics[i]});
    emit(run, "blocking-dist", bd_out,
         format_sci(blocking_distributed(layout, bd_rho)) + "\n", nullptr, nullptr);
  });

  // timeout
  auto* timeout_cmd = app.add_subcommand("timeout", "session timeout probability");
  ScenarioOpts timeout_sc;
  OutputOpts timeout_out;
  timeout_sc.attach(timeout_cmd);
  attach_output(timeout_cmd, timeout_out);
  timeout_cmd->callback([&] {
    const RawConfig raw = timeout_sc.resolve();
    const NormalizedConfig cfg = normalize(raw);
    if (channel_unstable(cfg.channel))
      std::fprintf(stderr, "warning: unstable channel (M C <= Lambda); reporting the q = 0 limit\n");
    const RawConfig resolved = denormalize(cfg);
    emit(run, "timeout", timeout_out,
         format_sci(timeout_probability(cfg.channel, cfg.workload.mu)) + "\n",
         &resolved, nullptr);
  });

  // capacity
  auto* capacity_cmd = app.add_subcommand("capacity", "capacity (Mbps) for a timeout target");
  ScenarioOpts capacity_sc;
  OutputOpts capacity_out;
  double p_target = 0;
  capacity_sc.attach(capacity_cmd);
  capacity_cmd->add_option("--p-target", p_target, "timeout probability target")->required();
  attach_output(capacity_cmd, capacity_out);
  capacity_cmd->callback([&] {
    const NormalizedConfig cfg = normalize(capacity_sc.resolve());
    const double capacity = capacity_for_timeout(
        p_target, cfg.workload.mu, cfg.channel.probe_rate,
        cfg.channel.timeout_threshold, cfg.channel.background_rate,
        cfg.channel.packet_service_factor);
    const RawConfig resolved = denormalize(cfg);
    emit(run, "capacity", capacity_out, format_sci(capacity / kBitsPerMbps) + "\n",
         &resolved, nullptr);
  });

  // success
  auto* success_cmd = app.add_subcommand("success", "SLA success probability report");
  ScenarioOpts success_sc;
  OutputOpts success_out;
  std::string success_arch = "centralized";
  int success_licenses = -1;
  success_sc.attach(success_cmd);
  success_cmd->add_option("--arch", success_arch, "centralized|distributed")
      ->check(CLI::IsMember({"centralized", "distributed"}));
  success_cmd->add_option("--pool-licenses", success_licenses,
                          "centralized pool licenses (default: layout total)");
  attach_output(success_cmd, success_out);
  success_cmd->callback([&] {
    const NormalizedConfig cfg = normalize(success_sc.resolve());
    SuccessReport report;
    if (success_arch == "centralized") {
      const int licenses = success_licenses >= 0 ? success_licenses
                                                 : cfg.layout.total_licenses();
      report = success_centralized(cfg.workload, cfg.channel, licenses,
                                   cfg.layout.total_population());
    } else {
      report = success_distributed(cfg.workload, cfg.layout);
    }
    std::string content;
    content += std::string("architecture=") + architecture_name(report.architecture) + "\n";
    content += "blocking=" + format_sci(report.blocking) + "\n";
    content += "timeout=" + format_sci(report.timeout) + "\n";
    content += "success=" + format_sci(report.success) + "\n";
    content += std::string("channel_unstable=") + (report.channel_unstable ? "true" : "false") + "\n";
    const RawConfig resolved = denormalize(cfg);
    emit(run, "success", success_out, content, &resolved, nullptr);
  });

  // optimize
  auto* optimize_cmd = app.add_subcommand("optimize", "minimum-cost architecture plan");
  ScenarioOpts optimize_sc;
  OutputOpts optimize_out;
  std::string optimize_arch = "both";
  optimize_sc.attach(optimize_cmd);
  optimize_cmd->add_option("--arch", optimize_arch, "both|centralized|distributed")
      ->check(CLI::IsMember({"both", "centralized", "distributed"}));
  attach_output(optimize_cmd, optimize_out);
  optimize_cmd->callback([&] {
    const NormalizedConfig cfg = normalize(optimize_sc.resolve());
    ChannelParams base = cfg.channel;
    base.capacity_extra = 0;
    std::vector<int> populations;
    for (const auto& site : cfg.layout.sites) populations.push_back(site.population);
    const int total_population = cfg.layout.total_population();

    std::string content;
    std::optional<PlanResult> chosen;
    if (optimize_arch == "centralized") {
      chosen = optimize_centralized(cfg.workload, base, total_population,
                                    cfg.cost, cfg.sla);
      content += plan_line("centralized", *chosen);
    } else if (optimize_arch == "distributed") {
      chosen = optimize_distributed(cfg.workload, populations, cfg.cost, cfg.sla);
      content += plan_line("distributed", *chosen);
    } else {
      try {
        content += plan_line("centralized",
                             optimize_centralized(cfg.workload, base,
                                                  total_population, cfg.cost,
                                                  cfg.sla));
      } catch (const InfeasibleError&) {
        content += "centralized feasible=false\n";
      }
      content += plan_line("distributed",
                           optimize_distributed(cfg.workload, populations,
                                                cfg.cost, cfg.sla));
      chosen = plan(cfg.workload, base, populations, cfg.cost, cfg.sla);
    }
    std::string chosen_line = "chosen architecture=";
    chosen_line += architecture_name(chosen->architecture);
    content += plan_line(chosen_line.c_str(), *chosen);
    const RawConfig resolved = denormalize(cfg);
    emit(run, "optimize", optimize_out, content, &resolved, nullptr);
  });

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo cross-validation");
  ScenarioOpts simulate_sc;
  OutputOpts simulate_out;
  std::string sim_what;
  SimConfig sim_cfg;
  int sim_licenses = -1;
  bool sim_allow_unstable = false;
  simulate_sc.attach(simulate_cmd);
  simulate_cmd->add_option("--what", sim_what, "engset|timeout|success")
      ->required()
      ->check(CLI::IsMember({"engset", "timeout", "success"}));
  simulate_cmd->add_option("--seed", sim_cfg.seed, "PRNG seed");
  simulate_cmd->add_option("--replications", sim_cfg.replications, "independent replications");
  simulate_cmd->add_option("--horizon", sim_cfg.horizon, "arrivals or sessions per replication");
  simulate_cmd->add_option("--warmup", sim_cfg.warmup_fraction, "warmup fraction of the horizon");
  simulate_cmd->add_option("--pool-licenses", sim_licenses,
                           "centralized pool licenses (default: layout total)");
  simulate_cmd->add_flag("--allow-unstable", sim_allow_unstable,
                         "accept an unstable channel (q = 0 limit)");
  attach_output(simulate_cmd, simulate_out);
  simulate_cmd->callback([&] {
    const NormalizedConfig cfg = normalize(simulate_sc.resolve());
    const int population = cfg.layout.total_population();
    const int licenses = sim_licenses >= 0 ? sim_licenses : cfg.layout.total_licenses();
    SimEstimate estimate;
    if (sim_what == "engset")
      estimate = simulate_engset(population, licenses, cfg.workload, sim_cfg);
    else if (sim_what == "timeout")
      estimate = simulate_timeout(cfg.channel, cfg.workload.mu, sim_cfg, sim_allow_unstable);
    else
      estimate = simulate_success_centralized(population, licenses, cfg.workload,
                                              cfg.channel, sim_cfg, sim_allow_unstable);
    std::string content;
    content += "what=" + sim_what + "\n";
    content += std::string("rng=") + kRngAlgorithm + "\n";
    content += "seed=" + std::to_string(sim_cfg.seed) + "\n";
    content += "replications=" + std::to_string(sim_cfg.replications) + "\n";
    content += "horizon=" + std::to_string(sim_cfg.horizon) + "\n";
    content += "warmup_fraction=" + format_sci(sim_cfg.warmup_fraction) + "\n";
    content += "mean=" + format_sci(estimate.mean) + "\n";
    content += "ci99_halfwidth=" + format_sci(estimate.ci99_halfwidth) + "\n";
    content += "samples=" + std::to_string(estimate.samples) + "\n";
    const RawConfig resolved = denormalize(cfg);
    emit(run, "simulate", simulate_out, content, &resolved, &sim_cfg.seed);
  });

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "parameter grid datasets (CSV)");
  ScenarioOpts sweep_sc;
  OutputOpts sweep_out;
  std::string sweep_kind;
  int sweep_threads = 1;
  SweepSpec spec;
  sweep_sc.attach(sweep_cmd);
  sweep_cmd->add_option("--kind", sweep_kind,
                        "blocking_vs_licenses|timeout_vs_capacity|timeout_vs_utilization|"
                        "success_surface|cost_contours")
      ->required()
      ->check(CLI::IsMember({"blocking_vs_licenses", "timeout_vs_capacity",
                             "timeout_vs_utilization", "success_surface",
                             "cost_contours"}));
  sweep_cmd->add_option("--threads", sweep_threads, "worker threads");
  sweep_cmd->add_option("--licenses-min", spec.licenses_min, "licenses axis start");
  sweep_cmd->add_option("--licenses-max", spec.licenses_max, "licenses axis end");
  sweep_cmd->add_option("--capacity-min", spec.capacity_min_mbps, "capacity axis start (Mbps)");
  sweep_cmd->add_option("--capacity-max", spec.capacity_max_mbps, "capacity axis end (Mbps)");
  sweep_cmd->add_option("--capacity-steps", spec.capacity_steps, "capacity axis points");
  sweep_cmd->add_option("--taus", spec.taus, "tau series (seconds)")->delimiter(',');
  sweep_cmd->add_option("--utilization-min", spec.utilization_min, "utilization axis start");
  sweep_cmd->add_option("--utilization-max", spec.utilization_max, "utilization axis end");
  sweep_cmd->add_option("--utilization-steps", spec.utilization_steps, "utilization axis points");
  sweep_cmd->add_option("--backgrounds", spec.background_rates,
                        "background rate series (pkt/s)")->delimiter(',');
  sweep_cmd->add_option("--levels", spec.cost_levels, "cost contour levels")->delimiter(',');
  attach_output(sweep_cmd, sweep_out);
  sweep_cmd->callback([&] {
    spec.config = normalize(sweep_sc.resolve());
    spec.kind = sweep_kind_from_name(sweep_kind);
    const std::vector<SweepRow> rows = run_sweep(spec, sweep_threads);
    const RawConfig resolved = denormalize(spec.config);
    emit(run, "sweep", sweep_out, to_csv(spec.kind, rows), &resolved, nullptr);
  });

  try {
    app.parse(argc, argv);
    return 0;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
