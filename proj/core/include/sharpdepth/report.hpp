#pragma once

#include <optional>
#include <string>

#include "sharpdepth/metrics.hpp"

namespace sharpdepth {

/// One evaluated image. Metric values are stored rounded to 6 decimals so
/// reports diff cleanly; aggregates are exact means of the stored values.
struct EvalEntry {
  std::string name;
  DepthMetrics depth;
  std::optional<BoundaryMetrics> boundary;
};

struct EvalReport {
  std::vector<EvalEntry> entries;
  std::string config_echo;  // effective config JSON text

  void add(EvalEntry entry);  // rounds the metric fields

  DepthMetrics aggregate_depth() const;
  /// Means over entries whose flags mark the value as defined.
  BoundaryMetrics aggregate_boundary() const;

  std::string to_json() const;
};

double round6(double v);

}  // namespace sharpdepth
