#include "capplan/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "capplan/errors.hpp"
#include "capplan/units.hpp"

namespace capplan {

const std::vector<std::string> kConfigKeys = {
    "session_duration", "arrival_rate", "rho",
    "capacity_base",    "capacity_extra",
    "packet_size",      "background_rate",
    "probe_interval",   "tau",
    "sites",            "licenses",
    "alpha",            "beta",
    "links_upgraded",   "sla",
};

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

int parse_int(const std::string& text, const char* what) {
  const std::string body = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc{} || ptr != body.data() + body.size())
    throw UnitError(std::string(what) + ": expected an integer, got '" + text + "'");
  return value;
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(parse_int(item, what));
  if (values.empty()) throw UnitError(std::string(what) + ": empty list");
  return values;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

RawConfig RawConfig::from_text(const std::string& text) {
  RawConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw UnitError("config line " + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(body.substr(0, eq));
    std::string value = trim(body.substr(eq + 1));
    if (key.empty())
      throw UnitError("config line " + std::to_string(lineno) + ": empty key");
    if (value.size() >= 2 && value.front() == '"') {
      if (value.back() != '"')
        throw UnitError("config line " + std::to_string(lineno) + ": unterminated quote");
      value = value.substr(1, value.size() - 2);
    }
    if (value.empty())
      throw UnitError("config line " + std::to_string(lineno) + ": empty value for '" + key + "'");
    cfg.values[key] = value;
  }
  return cfg;
}

RawConfig RawConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UnitError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str());
}

NormalizedConfig normalize(const RawConfig& raw) {
  for (const auto& [key, value] : raw.values) {
    (void)value;
    if (std::find(kConfigKeys.begin(), kConfigKeys.end(), key) == kConfigKeys.end())
      throw UnitError("unknown config key '" + key + "'");
  }

  auto find = [&raw](const std::string& key) -> const std::string* {
    const auto it = raw.values.find(key);
    return it == raw.values.end() ? nullptr : &it->second;
  };
  auto need = [&find](const std::string& key) -> const std::string& {
    const std::string* v = find(key);
    if (!v) throw UnitError("missing required config key '" + key + "'");
    return *v;
  };

  NormalizedConfig cfg;

  const double session_duration = units::parse_duration(need("session_duration"));
  if (!(session_duration > 0)) throw DomainError("session_duration must be > 0");
  cfg.workload.mu = 1.0 / session_duration;
  const std::string* arrival = find("arrival_rate");
  const std::string* rho = find("rho");
  if (arrival && rho) throw UnitError("specify exactly one of arrival_rate / rho, not both");
  if (arrival)
    cfg.workload.lambda = units::parse_rate(*arrival);
  else if (rho)
    cfg.workload.lambda = units::parse_number(*rho) * cfg.workload.mu;
  else
    throw UnitError("missing required config key 'rho' (or 'arrival_rate')");

  cfg.channel.capacity_base = units::parse_bandwidth(need("capacity_base"));
  if (const std::string* extra = find("capacity_extra"))
    cfg.channel.capacity_extra = units::parse_bandwidth(*extra);
  const double packet_bits = units::parse_data_size(need("packet_size"));
  if (!(packet_bits > 0)) throw DomainError("packet_size must be > 0");
  cfg.channel.packet_service_factor = 1.0 / packet_bits;
  cfg.channel.background_rate = units::parse_packet_rate(need("background_rate"));
  const double probe_interval = units::parse_duration(need("probe_interval"));
  if (!(probe_interval > 0)) throw DomainError("probe_interval must be > 0");
  cfg.channel.probe_rate = 1.0 / probe_interval;
  cfg.channel.timeout_threshold = units::parse_duration(need("tau"));

  const std::vector<int> populations = parse_int_list(need("sites"), "sites");
  std::vector<int> licenses(populations.size(), 0);
  if (const std::string* lic = find("licenses")) {
    licenses = parse_int_list(*lic, "licenses");
    if (licenses.size() != populations.size())
      throw DomainError("licenses list length must match sites list length");
  }
  cfg.layout.sites.resize(populations.size());
  for (std::size_t i = 0; i < populations.size(); ++i)
    cfg.layout.sites[i] = SitePool{populations[i], licenses[i]};

  cfg.cost.alpha = units::parse_number(need("alpha"));
  cfg.cost.beta = units::parse_number(need("beta"));
  if (const std::string* n = find("links_upgraded"))
    cfg.cost.links_upgraded = parse_int(*n, "links_upgraded");
  cfg.sla.success_min = units::parse_number(need("sla"));

  validate(cfg.workload);
  validate(cfg.channel);
  validate(cfg.layout);
  validate(cfg.cost);
  validate(cfg.sla);
  return cfg;
}

RawConfig denormalize(const NormalizedConfig& cfg) {
  RawConfig raw;
  raw.values["session_duration"] = units::format_duration(1.0 / cfg.workload.mu);
  raw.values["arrival_rate"] = units::format_rate(cfg.workload.lambda);
  raw.values["capacity_base"] = units::format_bandwidth(cfg.channel.capacity_base);
  raw.values["capacity_extra"] = units::format_bandwidth(cfg.channel.capacity_extra);
  raw.values["packet_size"] = units::format_data_size(1.0 / cfg.channel.packet_service_factor);
  raw.values["background_rate"] = units::format_packet_rate(cfg.channel.background_rate);
  raw.values["probe_interval"] = units::format_duration(1.0 / cfg.channel.probe_rate);
  raw.values["tau"] = units::format_duration(cfg.channel.timeout_threshold);
  std::vector<int> populations, licenses;
  for (const auto& site : cfg.layout.sites) {
    populations.push_back(site.population);
    licenses.push_back(site.licenses);
  }
  raw.values["sites"] = join_ints(populations);
  raw.values["licenses"] = join_ints(licenses);
  raw.values["alpha"] = units::format_number(cfg.cost.alpha);
  raw.values["beta"] = units::format_number(cfg.cost.beta);
  raw.values["links_upgraded"] = std::to_string(cfg.cost.links_upgraded);
  raw.values["sla"] = units::format_number(cfg.sla.success_min);
  return raw;
}

}  // namespace capplan
