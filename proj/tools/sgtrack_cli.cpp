// Command-line front end for the sgtrack shared library. Everything goes
// through the public C API in sgtrack.h.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "sgtrack.h"

namespace {

int exit_code_for(sgt_status status) {
  switch (status) {
    case SGT_OK: return 0;
    case SGT_ERR_INVALID_ARGUMENT:
    case SGT_ERR_IO: return 1;
    case SGT_ERR_CONFIG: return 2;
    default: return 3;
  }
}

int report_failure(sgt_status status) {
  std::fprintf(stderr, "sgtrack: %s: %s\n", sgt_status_name(status),
               sgt_last_error());
  return exit_code_for(status);
}

struct ConfigHandle {
  sgt_config* ptr = nullptr;
  ~ConfigHandle() { sgt_config_free(ptr); }
};

// Loads the config file when given, otherwise defaults; applies the seed
// override on top.
int prepare_config(const std::string& config_path, bool seed_set, uint64_t seed,
                   ConfigHandle& handle) {
  sgt_status status = config_path.empty()
                          ? sgt_config_create(&handle.ptr)
                          : sgt_config_load(config_path.c_str(), &handle.ptr);
  if (status != SGT_OK) return report_failure(status);
  if (seed_set) {
    status = sgt_config_set(handle.ptr, "seed", std::to_string(seed).c_str());
    if (status != SGT_OK) return report_failure(status);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sgtrack: multi-object tracking with structural graph recovery"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  app.add_option("--config", config_path, "run configuration file");
  app.add_option("--seed", seed, "master random seed (overrides the config)")
      ->each([&](const std::string&) { seed_set = true; });
  app.add_option("--out", out, "output path");

  // track
  auto* track = app.add_subcommand("track", "track an annotated sequence");
  std::string seq_path, annotations_path, overlay_dir, model_dump;
  track->add_option("--seq", seq_path, "frame directory or manifest file")
      ->required();
  track->add_option("--annotations", annotations_path, "first-frame annotation CSV")
      ->required();
  track->add_option("--overlay-dir", overlay_dir, "write overlay frames here");
  track->add_option("--dump-model", model_dump, "write the final model graph here");

  // evaluate
  auto* evaluate = app.add_subcommand("evaluate", "CLEAR-MOT metrics for a track file");
  std::string gt_path, hyp_path;
  double iou_threshold = 0.5;
  bool iou_set = false;
  evaluate->add_option("--gt", gt_path, "ground-truth CSV")->required();
  evaluate->add_option("--hyp", hyp_path, "hypothesis track CSV")->required();
  evaluate->add_option("--iou-threshold", iou_threshold, "match gate (default 0.5)")
      ->each([&](const std::string&) { iou_set = true; });

  // simulate
  auto* simulate = app.add_subcommand("simulate", "render a synthetic scenario");
  std::string scenario;
  int frames_override = 0;
  char names[256] = {0};
  sgt_scenario_names(names, sizeof(names));
  simulate->add_option("--scenario", scenario, std::string("one of: ") + names)
      ->required();
  simulate->add_option("--frames", frames_override, "override the frame count");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "grid sweep over the score weights");
  std::string sweep_seq, sweep_gt, sweep_annotations;
  double sweep_step = 0.2;
  int sweep_repeats = 1;
  sweep->add_option("--seq", sweep_seq, "frame directory or manifest file")
      ->required();
  sweep->add_option("--gt", sweep_gt, "ground-truth CSV")->required();
  sweep->add_option("--annotations", sweep_annotations,
                    "annotation CSV (default: frame 0 of the ground truth)");
  sweep->add_option("--step", sweep_step, "grid step (default 0.2)");
  sweep->add_option("--repeats", sweep_repeats, "runs per cell (default 1)");

  // overlay
  auto* overlay = app.add_subcommand("overlay", "draw track boxes onto frames");
  std::string overlay_seq, overlay_tracks;
  overlay->add_option("--seq", overlay_seq, "frame directory or manifest file")
      ->required();
  overlay->add_option("--tracks", overlay_tracks, "track CSV to draw")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (track->parsed()) {
    if (out.empty()) {
      std::fprintf(stderr, "sgtrack: track requires --out\n");
      return 1;
    }
    ConfigHandle config;
    if (int rc = prepare_config(config_path, seed_set, seed, config)) return rc;
    const sgt_status status = sgt_run_track(
        config.ptr, seq_path.c_str(), annotations_path.c_str(), out.c_str(),
        overlay_dir.empty() ? nullptr : overlay_dir.c_str(),
        model_dump.empty() ? nullptr : model_dump.c_str());
    if (status != SGT_OK) return report_failure(status);
    std::fprintf(stderr, "sgtrack: wrote %s\n", out.c_str());
    return 0;
  }

  if (evaluate->parsed()) {
    double threshold = iou_threshold;
    if (!iou_set && !config_path.empty()) {
      ConfigHandle config;
      if (int rc = prepare_config(config_path, false, 0, config)) return rc;
      char buf[64];
      if (sgt_config_get(config.ptr, "eval.iou_threshold", buf, sizeof(buf)) == SGT_OK)
        threshold = std::stod(buf);
    }
    sgt_metrics metrics;
    const sgt_status status =
        sgt_run_evaluate(gt_path.c_str(), hyp_path.c_str(), threshold,
                         out.empty() ? nullptr : out.c_str(), &metrics);
    if (status != SGT_OK) return report_failure(status);
    std::printf(
        "motp %.6f\nmota %.6f\nmotg %.6f\nidsw %lld\nmisses %lld\n"
        "false_positives %lld\nmismatches %lld\nmatches %lld\ngt_count %lld\n"
        "tp_rate %.6f\nfp_rate %.6f\nmotp_undefined %d\n",
        metrics.motp, metrics.mota, metrics.motg, metrics.id_switches,
        metrics.misses, metrics.false_positives, metrics.mismatches,
        metrics.matches, metrics.gt_count, metrics.tp_rate, metrics.fp_rate,
        metrics.motp_undefined);
    return 0;
  }

  if (simulate->parsed()) {
    if (out.empty()) {
      std::fprintf(stderr, "sgtrack: simulate requires --out\n");
      return 1;
    }
    const sgt_status status = sgt_run_simulate(scenario.c_str(),
                                               seed_set ? seed : 42, out.c_str(),
                                               frames_override);
    if (status != SGT_OK) return report_failure(status);
    std::fprintf(stderr, "sgtrack: wrote scenario '%s' to %s\n", scenario.c_str(),
                 out.c_str());
    return 0;
  }

  if (sweep->parsed()) {
    if (out.empty()) {
      std::fprintf(stderr, "sgtrack: sweep requires --out\n");
      return 1;
    }
    ConfigHandle config;
    if (int rc = prepare_config(config_path, seed_set, seed, config)) return rc;
    const sgt_status status = sgt_run_sweep(
        config.ptr, sweep_seq.c_str(),
        sweep_annotations.empty() ? nullptr : sweep_annotations.c_str(),
        sweep_gt.c_str(), sweep_step, sweep_repeats, out.c_str());
    if (status != SGT_OK) return report_failure(status);
    std::fprintf(stderr, "sgtrack: wrote %s\n", out.c_str());
    return 0;
  }

  if (overlay->parsed()) {
    if (out.empty()) {
      std::fprintf(stderr, "sgtrack: overlay requires --out\n");
      return 1;
    }
    const sgt_status status = sgt_run_overlay(overlay_seq.c_str(),
                                              overlay_tracks.c_str(), out.c_str());
    if (status != SGT_OK) return report_failure(status);
    std::fprintf(stderr, "sgtrack: wrote overlays to %s\n", out.c_str());
    return 0;
  }

  return 1;
}
