#include "sharpdepth/cli.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include <CLI11.hpp>

#include "sharpdepth/config.hpp"
#include "sharpdepth/depth_io.hpp"
#include "sharpdepth/errors.hpp"
#include "sharpdepth/manifest.hpp"
#include "sharpdepth/report.hpp"
#include "sharpdepth/tsdf.hpp"
#include "sharpdepth/version.hpp"

namespace sharpdepth {

namespace {

DepthFileFormat pick_format(const std::string& token, const std::string& path) {
  return token.empty() ? DepthFileFormat::from_extension(path) : DepthFileFormat::parse(token);
}

DepthMap load(const std::string& path, const std::string& format_token,
              DepthKind kind = DepthKind::kMetric) {
  DepthMap map = read_depth(path, pick_format(format_token, path));
  map.kind = kind;
  return map;
}

void save(const DepthMap& map, const std::string& path, const std::string& format_token,
          double default_png_scale = 1e-3) {
  DepthFileFormat fmt = format_token.empty() ? DepthFileFormat::from_extension(path)
                                             : DepthFileFormat::parse(format_token);
  if (fmt.variant == DepthFileFormat::Variant::kPng16 && format_token.empty())
    fmt.png_scale = default_png_scale;
  if (fmt.variant == DepthFileFormat::Variant::kRawF32 && fmt.raw_width == 0)
    fmt = DepthFileFormat::rawf32(map.width(), map.height());
  const WriteStats stats = write_depth(map, path, fmt);
  if (stats.clamped > 0)
    std::cerr << "warning: " << stats.clamped << " samples clamped writing " << path << "\n";
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << text;
}

SyntheticScene scene_from_pair(const DepthMap& metric, const DepthMap& relative,
                               const RefineConfig& cfg) {
  if (!metric.same_dims(relative))
    throw DimensionMismatch("metric and relative depth dims differ");
  SyntheticScene scene;
  scene.metric_input = metric;
  scene.teacher_target = relative;
  scene.teacher_target.kind = DepthKind::kAffineInvariant;
  scene.gt = metric;  // unused by refinement; keeps the scene self-consistent
  scene.image = make_condition_latent(metric.values, cfg.latent_factor, cfg.latent_channels);
  return scene;
}

DifferenceMap compute_difference(const DepthMap& relative, const DepthMap& metric,
                                 const ToolConfig& cfg) {
  return difference_map(relative, metric, cfg.refine.difference);
}

int cmd_align(const std::string& source_path, const std::string& source_format,
              const std::string& target_path, const std::string& target_format,
              const std::string& output, const std::string& output_format, bool masked,
              const ToolConfig& cfg) {
  const DepthMap source = load(source_path, source_format, DepthKind::kAffineInvariant);
  const DepthMap target = load(target_path, target_format);
  AffineTransform fit;
  if (masked) {
    const DifferenceMap e = compute_difference(source, target, cfg);
    fit = masked_fit_scale_shift(source, target, e, cfg.refine.tau);
  } else {
    fit = fit_scale_shift(source, target);
  }
  std::printf("scale %.12g shift %.12g\n", fit.scale, fit.shift);
  if (!output.empty()) save(apply_affine(source, fit), output, output_format);
  return 0;
}

int cmd_diffmap(const std::string& relative_path, const std::string& relative_format,
                const std::string& metric_path, const std::string& metric_format,
                const std::string& output, const std::string& output_format,
                const ToolConfig& cfg) {
  const DepthMap relative = load(relative_path, relative_format, DepthKind::kAffineInvariant);
  const DepthMap metric = load(metric_path, metric_format);
  const DifferenceMap e = compute_difference(relative, metric, cfg);
  DepthMap as_depth(e.width(), e.height(), DepthKind::kAffineInvariant);
  as_depth.values = e.values;
  as_depth.valid = e.valid;
  // Difference values live in [0,1]; spread them over the PNG16 range.
  save(as_depth, output, output_format, 1.0 / 65535.0);
  return 0;
}

int cmd_edges(const std::string& input_path, const std::string& input_format,
              const std::string& output, const ToolConfig& cfg) {
  const DepthMap input = load(input_path, input_format);
  const EdgeMap em = canny(input.values, cfg.canny);
  write_edge_png(em.edges, output);
  std::printf("edges %d\n", em.count());
  return 0;
}

int cmd_unproject(const std::string& input_path, const std::string& input_format,
                  const std::vector<double>& intrinsics, const std::string& output) {
  const DepthMap input = load(input_path, input_format);
  const CameraIntrinsics k{intrinsics[0], intrinsics[1], intrinsics[2], intrinsics[3]};
  const PointCloud cloud = unproject(input, k);
  write_ply(cloud, output);
  std::printf("points %zu\n", cloud.size());
  return 0;
}

int cmd_fuse(const std::string& manifest_path, const std::string& output, const ToolConfig& cfg) {
  const auto records = read_fuse_manifest(manifest_path);
  if (records.empty()) throw DataError("fuse manifest is empty: " + manifest_path);

  // Volume bounds from the union of the unprojected frames, padded by one
  // truncation band.
  Vec3 lo{1e30, 1e30, 1e30}, hi{-1e30, -1e30, -1e30};
  std::vector<DepthMap> frames;
  frames.reserve(records.size());
  for (const FuseRecord& rec : records) {
    frames.push_back(read_depth(rec.depth_path, rec.format));
    const PointCloud cloud = unproject(frames.back(), rec.intrinsics);
    for (const Vec3& p : cloud.points) {
      const Vec3 w = rec.pose.to_world(p);
      lo = {std::min(lo.x, w.x), std::min(lo.y, w.y), std::min(lo.z, w.z)};
      hi = {std::max(hi.x, w.x), std::max(hi.y, w.y), std::max(hi.z, w.z)};
    }
  }
  const double pad = cfg.tsdf_truncation;
  lo = lo - Vec3{pad, pad, pad};
  hi = hi + Vec3{pad, pad, pad};
  const double vs = cfg.tsdf_voxel_size;
  const int nx = std::max(1, static_cast<int>(std::ceil((hi.x - lo.x) / vs)));
  const int ny = std::max(1, static_cast<int>(std::ceil((hi.y - lo.y) / vs)));
  const int nz = std::max(1, static_cast<int>(std::ceil((hi.z - lo.z) / vs)));

  TsdfVolume vol(lo, vs, nx, ny, nz, cfg.tsdf_truncation);
  for (size_t i = 0; i < records.size(); ++i)
    tsdf_integrate(vol, frames[i], records[i].intrinsics, records[i].pose);

  const PointCloud cloud = tsdf_extract_points(vol, cfg.tsdf_surface_band);
  write_ply(cloud, output);
  std::printf("voxels %dx%dx%d points %zu\n", nx, ny, nz, cloud.size());
  return 0;
}

EvalEntry evaluate_pair(const std::string& name, const DepthMap& pred, const DepthMap& gt,
                        bool boundary, const ToolConfig& cfg) {
  EvalEntry entry;
  entry.name = name;
  entry.depth = depth_metrics(pred, gt);
  if (boundary) entry.boundary = pdbe(pred, gt, cfg.canny, cfg.dbe_truncation);
  return entry;
}

int cmd_eval(const std::string& manifest_path, const std::string& pred_path,
             const std::string& pred_format, const std::string& gt_path,
             const std::string& gt_format, bool boundary, const std::string& output,
             const ToolConfig& cfg) {
  std::vector<EvalRecord> records;
  if (!manifest_path.empty()) {
    records = read_eval_manifest(manifest_path);
  } else {
    if (pred_path.empty() || gt_path.empty())
      throw DataError("eval needs either --manifest or both --pred and --gt");
    records.push_back({pred_path, pick_format(pred_format, pred_path), gt_path,
                       pick_format(gt_format, gt_path)});
  }

  std::vector<EvalEntry> slots(records.size());
  const int threads = std::max(1, std::min(cfg.threads, static_cast<int>(records.size())));
  std::atomic<size_t> next{0};
  std::atomic<bool> failed{false};
  std::string error_message;
  std::mutex error_mutex;

  auto worker = [&]() {
    for (size_t i = next.fetch_add(1); i < records.size(); i = next.fetch_add(1)) {
      if (failed.load()) return;
      try {
        const DepthMap pred = read_depth(records[i].pred_path, records[i].pred_format);
        const DepthMap gt = read_depth(records[i].gt_path, records[i].gt_format);
        slots[i] = evaluate_pair(records[i].pred_path, pred, gt, boundary, cfg);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) error_message = e.what();
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failed.load()) throw DataError(error_message);

  EvalReport report;
  report.config_echo = cfg.to_json();
  for (auto& entry : slots) report.add(std::move(entry));  // stable per-image order
  const std::string json = report.to_json();
  if (output.empty()) {
    std::cout << json;
  } else {
    write_text(output, json);
  }
  return 0;
}

int cmd_refine(const std::string& metric_path, const std::string& metric_format,
               const std::string& relative_path, const std::string& relative_format,
               bool synthetic, uint64_t synthetic_seed, const std::string& output,
               const std::string& output_format, const std::string& report_path,
               const ToolConfig& cfg) {
  SyntheticScene scene;
  if (synthetic) {
    scene = gen_scene(synthetic_seed, 128, 128, cfg.refine.latent_factor,
                      cfg.refine.latent_channels);
  } else {
    if (metric_path.empty() || relative_path.empty())
      throw DataError("refine needs --metric and --relative, or --synthetic");
    scene = scene_from_pair(load(metric_path, metric_format),
                            load(relative_path, relative_format, DepthKind::kAffineInvariant),
                            cfg.refine);
  }

  const RefineResult result = refine(scene, cfg.refine);
  if (!output.empty()) save(result.refined, output, output_format);

  if (!report_path.empty() || synthetic) {
    EvalReport report;
    report.config_echo = cfg.to_json();
    if (synthetic) {
      report.add(evaluate_pair("metric_input", scene.metric_input, scene.gt, true, cfg));
      report.add(evaluate_pair("refined", result.refined, scene.gt, true, cfg));
    }
    if (!report_path.empty()) write_text(report_path, report.to_json());
    if (synthetic && !report.entries.empty()) {
      const auto& before = report.entries[0];
      const auto& after = report.entries[1];
      std::printf("%-14s %10s %10s %10s %10s\n", "", "a_rel", "delta1", "dbe_acc", "dbe_compl");
      std::printf("%-14s %10.4f %10.4f %10.4f %10.4f\n", "input", before.depth.a_rel,
                  before.depth.delta1, before.boundary->acc, before.boundary->compl_);
      std::printf("%-14s %10.4f %10.4f %10.4f %10.4f\n", "refined", after.depth.a_rel,
                  after.depth.delta1, after.boundary->acc, after.boundary->compl_);
    }
  }
  return 0;
}

int dispatch(const std::vector<std::string>& args) {
  CLI::App app{"Depth sharpening toolkit: difference-gated latent refinement, "
               "depth/boundary metrics, and TSDF fusion"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);

  ToolConfig cfg;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file overriding defaults");
  app.add_option("--seed", cfg.seed, "Seed for every stochastic stage");
  app.add_option("--threads", cfg.threads, "Worker threads for batch evaluation");
  bool print_config = false;
  app.add_flag("--print-config", print_config, "Print the effective config JSON and exit");

  std::string source_path, source_format, target_path, target_format;
  std::string relative_path, relative_format, metric_path, metric_format;
  std::string input_path, input_format, pred_path, pred_format, gt_path, gt_format;
  std::string output, output_format, report_path, manifest_path;
  bool masked = false, boundary = false, synthetic = false;
  uint64_t synthetic_seed = 0;
  std::vector<double> intrinsics;

  CLI::App* align = app.add_subcommand("align", "Least-squares scale/shift alignment");
  align->add_option("--source", source_path, "Affine-invariant depth")->required();
  align->add_option("--source-format", source_format, "pfm|png16:<scale>|rawf32:<w>:<h>");
  align->add_option("--target", target_path, "Metric depth")->required();
  align->add_option("--target-format", target_format, "Format token");
  align->add_option("--output", output, "Write the aligned map here");
  align->add_option("--output-format", output_format, "Format token");
  align->add_flag("--masked", masked, "Restrict the fit to low-difference pixels");

  CLI::App* diffmap = app.add_subcommand("diffmap", "Normalized difference map");
  diffmap->add_option("--relative", relative_path, "Affine-invariant depth")->required();
  diffmap->add_option("--relative-format", relative_format, "Format token");
  diffmap->add_option("--metric", metric_path, "Metric depth")->required();
  diffmap->add_option("--metric-format", metric_format, "Format token");
  diffmap->add_option("--output", output, "Output path (.png/.pfm/.raw)")->required();
  diffmap->add_option("--output-format", output_format, "Format token");

  CLI::App* refine_cmd = app.add_subcommand("refine", "Difference-gated depth refinement");
  refine_cmd->add_option("--metric", metric_path, "Metric depth input");
  refine_cmd->add_option("--metric-format", metric_format, "Format token");
  refine_cmd->add_option("--relative", relative_path, "Sharp affine-invariant depth");
  refine_cmd->add_option("--relative-format", relative_format, "Format token");
  refine_cmd->add_option("--synthetic", synthetic_seed, "Refine a generated scene with this seed")
      ->expected(1);
  refine_cmd->add_option("--output", output, "Refined depth path");
  refine_cmd->add_option("--output-format", output_format, "Format token");
  refine_cmd->add_option("--report", report_path, "Write before/after metrics JSON here");

  CLI::App* eval = app.add_subcommand("eval", "Depth + boundary metrics to JSON");
  eval->add_option("--manifest", manifest_path, "pred/gt pairs, one per line");
  eval->add_option("--pred", pred_path, "Predicted depth");
  eval->add_option("--pred-format", pred_format, "Format token");
  eval->add_option("--gt", gt_path, "Ground-truth depth");
  eval->add_option("--gt-format", gt_format, "Format token");
  eval->add_flag("--boundary", boundary, "Also compute boundary metrics");
  eval->add_option("--output", output, "Report path (stdout when omitted)");

  CLI::App* edges = app.add_subcommand("edges", "Depth edges to a binary PNG");
  edges->add_option("--input", input_path, "Depth input")->required();
  edges->add_option("--input-format", input_format, "Format token");
  edges->add_option("--output", output, "Edge PNG path")->required();

  CLI::App* unproj = app.add_subcommand("unproject", "Depth to an ASCII PLY point cloud");
  unproj->add_option("--input", input_path, "Depth input")->required();
  unproj->add_option("--input-format", input_format, "Format token");
  unproj->add_option("--intrinsics", intrinsics, "fx fy cx cy")->expected(4)->required();
  unproj->add_option("--output", output, "PLY path")->required();

  CLI::App* fuse = app.add_subcommand("fuse", "TSDF-fuse depth frames, export PLY");
  fuse->add_option("--manifest", manifest_path, "Frames with intrinsics and poses")->required();
  fuse->add_option("--output", output, "PLY path")->required();

  CLI::App* demo = app.add_subcommand("demo", "Generate, refine, and evaluate one scene");
  demo->add_option("--output", output, "Report JSON path");
  demo->add_option("--report", report_path, "Alias of --output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!config_path.empty()) {
    const uint64_t flag_seed = cfg.seed;
    const int flag_threads = cfg.threads;
    cfg = ToolConfig{};
    cfg.load(config_path);
    // Explicit flags beat the config file.
    if (app.count("--seed") > 0) cfg.seed = flag_seed;
    if (app.count("--threads") > 0) cfg.threads = flag_threads;
  }
  cfg.refine.seed = cfg.seed;

  if (print_config) {
    std::cout << cfg.to_json();
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  if (align->parsed())
    return cmd_align(source_path, source_format, target_path, target_format, output,
                     output_format, masked, cfg);
  if (diffmap->parsed())
    return cmd_diffmap(relative_path, relative_format, metric_path, metric_format, output,
                       output_format, cfg);
  if (refine_cmd->parsed()) {
    synthetic = refine_cmd->count("--synthetic") > 0;
    return cmd_refine(metric_path, metric_format, relative_path, relative_format, synthetic,
                      synthetic_seed, output, output_format, report_path, cfg);
  }
  if (eval->parsed())
    return cmd_eval(manifest_path, pred_path, pred_format, gt_path, gt_format, boundary, output,
                    cfg);
  if (edges->parsed()) return cmd_edges(input_path, input_format, output, cfg);
  if (unproj->parsed()) return cmd_unproject(input_path, input_format, intrinsics, output);
  if (fuse->parsed()) return cmd_fuse(manifest_path, output, cfg);
  if (demo->parsed()) {
    const std::string out = output.empty() ? report_path : output;
    return cmd_refine("", "", "", "", true, cfg.seed, "", "", out, cfg);
  }
  return 2;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  try {
    return dispatch(args);
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

int run_cli(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace sharpdepth
