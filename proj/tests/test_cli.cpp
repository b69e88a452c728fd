#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sharpdepth/cli.hpp"
#include "sharpdepth/config.hpp"
#include "sharpdepth/depth_io.hpp"
#include "sharpdepth/scene.hpp"
#include "support/builders.hpp"
#include "support/tempdir.hpp"

using namespace sharpdepth;
using testutil::TempDir;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("cli: align recovers the constructed transform") {
  TempDir dir;
  Rng rng(137);
  const DepthMap target = testutil::random_map(24, 24, rng);
  DepthMap source = target;
  for (double& v : source.values.data) v = (v - 0.25) / 2.0;  // inverse of s=2, t=0.5
  write_depth(source, dir.file("src.pfm"), DepthFileFormat::pfm());
  write_depth(target, dir.file("dst.pfm"), DepthFileFormat::pfm());

  const int code = run_cli({"align", "--source", dir.file("src.pfm"), "--target",
                            dir.file("dst.pfm"), "--output", dir.file("aligned.pfm")});
  CHECK(code == 0);
  const DepthMap aligned = read_depth(dir.file("aligned.pfm"), DepthFileFormat::pfm());
  for (size_t i = 0; i < aligned.values.size(); ++i)
    CHECK(aligned.values.data[i] ==
          doctest::Approx(target.values.data[i]).epsilon(1e-5));
}

TEST_CASE("cli: eval of a map against itself reports zeros and delta1 = 1") {
  TempDir dir;
  Rng rng(139);
  const DepthMap d = testutil::random_map(16, 16, rng);
  write_depth(d, dir.file("d.pfm"), DepthFileFormat::pfm());

  const int code = run_cli({"eval", "--pred", dir.file("d.pfm"), "--gt", dir.file("d.pfm"),
                            "--output", dir.file("report.json")});
  CHECK(code == 0);
  const auto j = nlohmann::json::parse(slurp(dir.file("report.json")));
  CHECK(j.at("aggregate").at("a_rel").get<double>() == 0.0);
  CHECK(j.at("aggregate").at("rmse").get<double>() == 0.0);
  CHECK(j.at("aggregate").at("delta1").get<double>() == 1.0);
}

TEST_CASE("cli: eval manifest with threads matches serial order") {
  TempDir dir;
  Rng rng(149);
  std::ostringstream manifest;
  for (int i = 0; i < 5; ++i) {
    const DepthMap gt = testutil::random_map(12, 12, rng);
    DepthMap pred = gt;
    for (double& v : pred.values.data) v *= 1.0 + 0.01 * i;
    const std::string p = dir.file("p" + std::to_string(i) + ".pfm");
    const std::string g = dir.file("g" + std::to_string(i) + ".pfm");
    write_depth(pred, p, DepthFileFormat::pfm());
    write_depth(gt, g, DepthFileFormat::pfm());
    manifest << p << " pfm " << g << " pfm\n";
  }
  std::ofstream(dir.file("manifest.txt")) << manifest.str();

  CHECK(run_cli({"eval", "--manifest", dir.file("manifest.txt"), "--output",
                 dir.file("serial.json")}) == 0);
  CHECK(run_cli({"--threads", "4", "eval", "--manifest", dir.file("manifest.txt"), "--output",
                 dir.file("parallel.json")}) == 0);

  auto serial = nlohmann::json::parse(slurp(dir.file("serial.json")));
  auto parallel = nlohmann::json::parse(slurp(dir.file("parallel.json")));
  serial.erase("config");
  parallel.erase("config");
  CHECK(serial == parallel);
}

TEST_CASE("cli: missing file exits 3 and names the path") {
  const int code = run_cli({"eval", "--pred", "/tmp/definitely_missing_depth.pfm", "--gt",
                            "/tmp/definitely_missing_depth.pfm"});
  CHECK(code == 3);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run_cli({"align"}) == 2);                 // missing required options
  CHECK(run_cli({"no-such-subcommand"}) == 2);
  CHECK(run_cli({}) == 2);
}

TEST_CASE("cli: diffmap writes a [0,1] map") {
  TempDir dir;
  Rng rng(151);
  const DepthMap metric = testutil::random_map(16, 16, rng);
  DepthMap rel = metric;
  rel.values.at(5, 5) += 2.0;
  write_depth(metric, dir.file("metric.pfm"), DepthFileFormat::pfm());
  write_depth(rel, dir.file("rel.pfm"), DepthFileFormat::pfm());

  CHECK(run_cli({"diffmap", "--relative", dir.file("rel.pfm"), "--metric",
                 dir.file("metric.pfm"), "--output", dir.file("e.pfm")}) == 0);
  const DepthMap e = read_depth(dir.file("e.pfm"), DepthFileFormat::pfm());
  double peak = 0.0;
  for (double v : e.values.data) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    peak = std::max(peak, v);
  }
  CHECK(peak == 1.0);
}

TEST_CASE("cli: edges and unproject produce their artifacts") {
  TempDir dir;
  const SyntheticScene s = gen_scene(3, 64, 64);
  write_depth(s.gt, dir.file("gt.pfm"), DepthFileFormat::pfm());

  CHECK(run_cli({"edges", "--input", dir.file("gt.pfm"), "--output", dir.file("edges.png")}) ==
        0);
  CHECK(std::ifstream(dir.file("edges.png")).good());

  CHECK(run_cli({"unproject", "--input", dir.file("gt.pfm"), "--intrinsics", "60", "60", "32",
                 "32", "--output", dir.file("cloud.ply")}) == 0);
  std::ifstream ply(dir.file("cloud.ply"));
  std::string first;
  std::getline(ply, first);
  CHECK(first == "ply");
}

TEST_CASE("cli: fuse integrates a manifest of frontal planes") {
  TempDir dir;
  DepthMap plane(48, 48, DepthKind::kMetric);
  for (double& v : plane.values.data) v = 2.0;
  write_depth(plane, dir.file("plane.pfm"), DepthFileFormat::pfm());

  std::ostringstream manifest;
  for (int i = 0; i < 3; ++i)
    manifest << dir.file("plane.pfm") << " pfm 60 60 24 24\n";
  std::ofstream(dir.file("frames.txt")) << manifest.str();

  CHECK(run_cli({"fuse", "--manifest", dir.file("frames.txt"), "--output",
                 dir.file("fused.ply")}) == 0);
  std::ifstream ply(dir.file("fused.ply"));
  std::string line;
  std::getline(ply, line);
  CHECK(line == "ply");
  std::getline(ply, line);
  std::getline(ply, line);  // element vertex N
  CHECK(line.rfind("element vertex ", 0) == 0);
  CHECK(line != "element vertex 0");
}

TEST_CASE("cli: config round trip reproduces identical outputs") {
  TempDir dir;
  CHECK(run_cli({"--seed", "1", "--print-config"}) == 0);

  CHECK(run_cli({"--seed", "1", "refine", "--synthetic", "1", "--output", dir.file("a.pfm"),
                 "--report", dir.file("a.json")}) == 0);

  // Echo the effective config to a file, then rerun from that file alone.
  {
    ToolConfig cfg;
    cfg.seed = 1;
    std::ofstream out(dir.file("cfg.json"));
    out << cfg.to_json();
  }
  CHECK(run_cli({"--config", dir.file("cfg.json"), "refine", "--synthetic", "1", "--output",
                 dir.file("b.pfm"), "--report", dir.file("b.json")}) == 0);

  const DepthMap a = read_depth(dir.file("a.pfm"), DepthFileFormat::pfm());
  const DepthMap b = read_depth(dir.file("b.pfm"), DepthFileFormat::pfm());
  CHECK(a.values.data == b.values.data);
}
