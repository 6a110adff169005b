#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "hybridnet/harness.hpp"

namespace hybridnet {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kCsvHeader =
    "sweep_value,mode,mean_throughput_bps,ci95_bps,mean_handovers";

// Six significant digits, mantissa d.ddddd and a bare exponent:
// 13.66e9 -> "1.36600e10", 0.25 -> "2.50000e-1", 0 -> "0.00000e0".
inline std::string format_sig6(double value) {
  if (value == 0.0) return std::signbit(value) ? "-0.00000e0" : "0.00000e0";
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.5e", value);
  std::string s(buf);
  const auto e = s.find('e');
  const int exponent = std::stoi(s.substr(e + 1));
  return s.substr(0, e) + "e" + std::to_string(exponent);
}

inline void emit_csv(std::span<const AggregateCurve> curves, std::ostream& out) {
  if (curves.empty()) throw DomainError("no curves to write");
  struct Row {
    double sweep_value;
    std::string_view mode;
    const CurveRow* data;
  };
  std::vector<Row> rows;
  for (const auto& c : curves) {
    for (const auto& r : c.rows) rows.push_back({r.sweep_value, to_string(c.mode), &r});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.sweep_value, a.mode) < std::tie(b.sweep_value, b.mode);
  });
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << format_sig6(r.sweep_value) << ',' << r.mode << ','
        << format_sig6(r.data->mean_throughput_bps) << ',' << format_sig6(r.data->ci95_bps) << ','
        << format_sig6(r.data->mean_handovers) << '\n';
  }
}

inline std::string csv_string(std::span<const AggregateCurve> curves) {
  std::ostringstream out;
  emit_csv(curves, out);
  return out.str();
}

inline void emit_csv(std::span<const AggregateCurve> curves, const std::string& path) {
  const std::string body = csv_string(curves);
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << body;
  file.flush();
  if (!file) throw IoError("failed writing '" + path + "'");
}

}  // namespace hybridnet
