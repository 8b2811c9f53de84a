#pragma once

#include <string>

namespace capplan::units {

// Parsers take "<number> <unit>" and return values in the internal convention:
// seconds, bits, bits/second, packets/second, 1/second. A missing or unknown
// unit tag raises UnitError. Unit tags are case sensitive.

double parse_duration(const std::string& text);     // us ms s sec min h hr d
double parse_rate(const std::string& text);         // 1/ms 1/s 1/sec 1/min 1/h
double parse_bandwidth(const std::string& text);    // bit/s bps kbit/s kbps Mbit/s Mbps Gbit/s Gbps
double parse_data_size(const std::string& text);    // bit kbit Mbit B kB MB
double parse_packet_rate(const std::string& text);  // pkt/s kpkt/s Mpkt/s
double parse_number(const std::string& text);       // bare number, no unit allowed

// Canonical spellings in base units; parse(format(x)) == x exactly.
std::string format_duration(double seconds);
std::string format_rate(double per_second);
std::string format_bandwidth(double bits_per_second);
std::string format_data_size(double bits);
std::string format_packet_rate(double packets_per_second);
std::string format_number(double value);

}  // namespace capplan::units
