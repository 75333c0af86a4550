#pragma once

#include <cstdio>
#include <filesystem>
#include <string>

#include "mutiter/image_io.hpp"
#include "mutiter/sweeps.hpp"

namespace mutiter {

inline constexpr const char* kMetricsHeader =
    "axis_value,component_count,area,hausdorff_to_ref,subset_violations";

// %.17g round-trips doubles; the schema only asks for 9 significant digits.
inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string metrics_row(double axis_value, const TopologyReport& report) {
  std::string row = format_real(axis_value);
  row += ',' + std::to_string(report.component_count);
  row += ',' + format_real(report.area);
  row += ',';
  if (report.hausdorff_to_ref) row += format_real(*report.hausdorff_to_ref);
  row += ',' + std::to_string(report.subset_violations);
  return row;
}

inline std::string encode_metrics(const SweepResult& result) {
  std::string out = kMetricsHeader;
  out += '\n';
  for (const auto& p : result.points) out += metrics_row(p.value, p.report) + '\n';
  return out;
}

inline void write_metrics(const SweepResult& result, const std::filesystem::path& path) {
  write_bytes(path, encode_metrics(result));
}

}  // namespace mutiter
