#include "sharpdepth/report.hpp"

#include <cmath>

#include <json.hpp>

#include "sharpdepth/version.hpp"

namespace sharpdepth {

using Json = nlohmann::ordered_json;

double round6(double v) { return std::round(v * 1e6) / 1e6; }

void EvalReport::add(EvalEntry entry) {
  entry.depth.a_rel = round6(entry.depth.a_rel);
  entry.depth.rmse = round6(entry.depth.rmse);
  entry.depth.si_log = round6(entry.depth.si_log);
  entry.depth.delta1 = round6(entry.depth.delta1);
  if (entry.boundary) {
    entry.boundary->acc = round6(entry.boundary->acc);
    entry.boundary->compl_ = round6(entry.boundary->compl_);
  }
  entries.push_back(std::move(entry));
}

DepthMetrics EvalReport::aggregate_depth() const {
  DepthMetrics agg;
  if (entries.empty()) return agg;
  for (const EvalEntry& e : entries) {
    agg.a_rel += e.depth.a_rel;
    agg.rmse += e.depth.rmse;
    agg.si_log += e.depth.si_log;
    agg.delta1 += e.depth.delta1;
  }
  const double n = static_cast<double>(entries.size());
  agg.a_rel /= n;
  agg.rmse /= n;
  agg.si_log /= n;
  agg.delta1 /= n;
  return agg;
}

BoundaryMetrics EvalReport::aggregate_boundary() const {
  BoundaryMetrics agg;
  double acc_sum = 0.0, compl_sum = 0.0;
  int acc_n = 0, compl_n = 0;
  for (const EvalEntry& e : entries) {
    if (!e.boundary) continue;
    if (e.boundary->acc_defined) {
      acc_sum += e.boundary->acc;
      ++acc_n;
    }
    if (e.boundary->compl_defined) {
      compl_sum += e.boundary->compl_;
      ++compl_n;
    }
  }
  agg.acc_defined = acc_n > 0;
  agg.compl_defined = compl_n > 0;
  agg.acc = acc_n > 0 ? acc_sum / acc_n : 0.0;
  agg.compl_ = compl_n > 0 ? compl_sum / compl_n : 0.0;
  return agg;
}

std::string EvalReport::to_json() const {
  Json j;
  j["tool_version"] = kVersion;
  Json images = Json::array();
  for (const EvalEntry& e : entries) {
    Json img;
    img["name"] = e.name;
    img["a_rel"] = e.depth.a_rel;
    img["rmse"] = e.depth.rmse;
    img["si_log"] = e.depth.si_log;
    img["delta1"] = e.depth.delta1;
    if (e.boundary) {
      img["dbe_acc"] = e.boundary->acc;
      img["dbe_acc_defined"] = e.boundary->acc_defined;
      img["dbe_compl"] = e.boundary->compl_;
      img["dbe_compl_defined"] = e.boundary->compl_defined;
    }
    images.push_back(std::move(img));
  }
  j["images"] = std::move(images);

  const DepthMetrics depth_agg = aggregate_depth();
  Json agg;
  agg["a_rel"] = depth_agg.a_rel;
  agg["rmse"] = depth_agg.rmse;
  agg["si_log"] = depth_agg.si_log;
  agg["delta1"] = depth_agg.delta1;
  bool any_boundary = false;
  for (const EvalEntry& e : entries) any_boundary = any_boundary || e.boundary.has_value();
  if (any_boundary) {
    const BoundaryMetrics bm = aggregate_boundary();
    agg["dbe_acc"] = bm.acc;
    agg["dbe_acc_defined"] = bm.acc_defined;
    agg["dbe_compl"] = bm.compl_;
    agg["dbe_compl_defined"] = bm.compl_defined;
  }
  j["aggregate"] = std::move(agg);

  if (!config_echo.empty()) j["config"] = Json::parse(config_echo);
  return j.dump(2) + "\n";
}

}  // namespace sharpdepth
