#include "capplan/units.hpp"

#include <charconv>
#include <string_view>
#include <utility>
#include <vector>

#include "capplan/errors.hpp"
#include "capplan/format.hpp"

namespace capplan::units {

namespace {

using Table = std::vector<std::pair<std::string_view, double>>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

struct Quantity {
  double value;
  std::string_view unit;
};

Quantity split(const std::string& text) {
  const std::string_view body = trim(text);
  if (body.empty()) throw UnitError("empty quantity");
  double value = 0;
  const auto [ptr, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
  if (ec != std::errc{} || ptr == body.data())
    throw UnitError("malformed quantity '" + text + "': expected <number> [unit]");
  return {value, trim(std::string_view(ptr, std::size_t(body.data() + body.size() - ptr)))};
}

double convert(const std::string& text, const Table& table, const char* kind) {
  const Quantity quantity = split(text);
  if (quantity.unit.empty())
    throw UnitError(std::string("missing ") + kind + " unit in '" + text + "'");
  for (const auto& [name, factor] : table)
    if (quantity.unit == name) return quantity.value * factor;
  throw UnitError(std::string("unknown ") + kind + " unit '" +
                  std::string(quantity.unit) + "' in '" + text + "'");
}

const Table kDuration = {
    {"us", 1e-6}, {"ms", 1e-3}, {"s", 1},     {"sec", 1},
    {"min", 60},  {"h", 3600},  {"hr", 3600}, {"d", 86400},
};
const Table kRate = {
    {"1/ms", 1e3},      {"1/s", 1},          {"1/sec", 1},
    {"1/min", 1. / 60}, {"1/h", 1. / 3600},
};
const Table kBandwidth = {
    {"bit/s", 1},     {"bps", 1},    {"kbit/s", 1e3}, {"kbps", 1e3},
    {"Mbit/s", 1e6},  {"Mbps", 1e6}, {"Gbit/s", 1e9}, {"Gbps", 1e9},
};
const Table kDataSize = {
    {"bit", 1}, {"kbit", 1e3}, {"Mbit", 1e6}, {"B", 8}, {"kB", 8e3}, {"MB", 8e6},
};
const Table kPacketRate = {
    {"pkt/s", 1}, {"kpkt/s", 1e3}, {"Mpkt/s", 1e6},
};

}  // namespace

double parse_duration(const std::string& text) { return convert(text, kDuration, "duration"); }
double parse_rate(const std::string& text) { return convert(text, kRate, "rate"); }
double parse_bandwidth(const std::string& text) { return convert(text, kBandwidth, "bandwidth"); }
double parse_data_size(const std::string& text) { return convert(text, kDataSize, "data size"); }
double parse_packet_rate(const std::string& text) { return convert(text, kPacketRate, "packet rate"); }

double parse_number(const std::string& text) {
  const Quantity quantity = split(text);
  if (!quantity.unit.empty())
    throw UnitError("unexpected unit '" + std::string(quantity.unit) + "' in bare number '" + text + "'");
  return quantity.value;
}

std::string format_duration(double seconds) { return format_g17(seconds) + " s"; }
std::string format_rate(double per_second) { return format_g17(per_second) + " 1/s"; }
std::string format_bandwidth(double bits_per_second) { return format_g17(bits_per_second) + " bit/s"; }
std::string format_data_size(double bits) { return format_g17(bits) + " bit"; }
std::string format_packet_rate(double packets_per_second) { return format_g17(packets_per_second) + " pkt/s"; }
std::string format_number(double value) { return format_g17(value); }

}  // namespace capplan::units
