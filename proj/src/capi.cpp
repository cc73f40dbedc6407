#include "sgtrack.h"

#include <cstring>
#include <fstream>
#include <memory>
#include <string>

#include "sgtrack/config.hpp"
#include "sgtrack/errors.hpp"
#include "sgtrack/runner.hpp"
#include "sgtrack/scenario.hpp"
#include "sgtrack/tracker.hpp"

namespace {

thread_local std::string g_last_error;

sgt_status fail(sgt_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs a callable, mapping the core's exception types onto status codes.
template <typename Fn>
sgt_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return SGT_OK;
  } catch (const sgtrack::config_error& e) {
    return fail(SGT_ERR_CONFIG, e.what());
  } catch (const sgtrack::io_error& e) {
    return fail(SGT_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(SGT_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(SGT_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(SGT_ERR_RUNTIME, "unknown error");
  }
}

sgt_status copy_string(const std::string& s, char* buf, size_t cap) {
  if (!buf || cap == 0)
    return fail(SGT_ERR_INVALID_ARGUMENT, "output buffer is null or empty");
  const size_t n = std::min(s.size(), cap - 1);
  std::memcpy(buf, s.data(), n);
  buf[n] = '\0';
  if (n < s.size()) return fail(SGT_ERR_INVALID_ARGUMENT, "output buffer too small");
  return SGT_OK;
}

sgtrack::Frame frame_from_rgb(const uint8_t* rgb, int width, int height) {
  if (!rgb) throw std::invalid_argument("frame buffer is null");
  std::vector<uint8_t> data(rgb, rgb + static_cast<size_t>(width) * height * 3);
  return sgtrack::Frame(width, height, std::move(data));
}

sgt_object_state to_c_state(const sgtrack::ObjectState& s) {
  sgt_object_state out;
  out.object_id = s.object_id;
  out.box = sgt_box{s.box.left(), s.box.top(), s.box.width, s.box.height};
  out.confidence = s.confidence;
  return out;
}

}  // namespace

struct sgt_config {
  sgtrack::RunConfig config;
};

struct sgt_tracker {
  std::unique_ptr<sgtrack::MultiObjectTracker> impl;
};

extern "C" {

const char* sgt_version(void) { return "1.0.0"; }

const char* sgt_status_name(sgt_status status) {
  switch (status) {
    case SGT_OK: return "ok";
    case SGT_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SGT_ERR_IO: return "input error";
    case SGT_ERR_CONFIG: return "configuration error";
    case SGT_ERR_RUNTIME: return "runtime failure";
  }
  return "unknown";
}

const char* sgt_last_error(void) { return g_last_error.c_str(); }

sgt_status sgt_config_create(sgt_config** out) {
  if (!out) return fail(SGT_ERR_INVALID_ARGUMENT, "out is null");
  return guarded([&] { *out = new sgt_config(); });
}

sgt_status sgt_config_load(const char* path, sgt_config** out) {
  if (!path || !out) return fail(SGT_ERR_INVALID_ARGUMENT, "path or out is null");
  return guarded([&] { *out = new sgt_config{sgtrack::load_config(path)}; });
}

sgt_status sgt_config_set(sgt_config* config, const char* key, const char* value) {
  if (!config || !key || !value)
    return fail(SGT_ERR_INVALID_ARGUMENT, "config, key or value is null");
  return guarded([&] { sgtrack::set_config_value(config->config, key, value); });
}

sgt_status sgt_config_get(const sgt_config* config, const char* key, char* buf,
                          size_t cap) {
  if (!config || !key) return fail(SGT_ERR_INVALID_ARGUMENT, "config or key is null");
  std::string value;
  const sgt_status status =
      guarded([&] { value = sgtrack::get_config_value(config->config, key); });
  if (status != SGT_OK) return status;
  return copy_string(value, buf, cap);
}

sgt_status sgt_config_save(const sgt_config* config, const char* path) {
  if (!config || !path) return fail(SGT_ERR_INVALID_ARGUMENT, "config or path is null");
  return guarded([&] { sgtrack::save_config(config->config, path); });
}

void sgt_config_free(sgt_config* config) { delete config; }

sgt_status sgt_tracker_create(const sgt_config* config, const uint8_t* rgb,
                              int width, int height,
                              const sgt_object_state* annotations, size_t count,
                              sgt_tracker** out) {
  if (!config || !annotations || !out)
    return fail(SGT_ERR_INVALID_ARGUMENT, "config, annotations or out is null");
  return guarded([&] {
    config->config.validate();
    if (config->config.tracker.adjacency.empty())
      throw sgtrack::config_error("config: graph.adjacency is required for tracking");
    const sgtrack::Frame frame = frame_from_rgb(rgb, width, height);
    std::vector<sgtrack::BBox> boxes(count);
    for (size_t i = 0; i < count; ++i) {
      const sgt_object_state& a = annotations[i];
      if (a.object_id != static_cast<int>(i))
        throw std::invalid_argument("annotations must be ordered by object id 0..n-1");
      boxes[i] = sgtrack::BBox::from_top_left(a.box.x, a.box.y, a.box.w, a.box.h);
    }
    auto impl = std::make_unique<sgtrack::MultiObjectTracker>(
        config->config.tracker, frame, boxes);
    *out = new sgt_tracker{std::move(impl)};
  });
}

sgt_status sgt_tracker_step(sgt_tracker* tracker, const uint8_t* rgb, int width,
                            int height) {
  if (!tracker) return fail(SGT_ERR_INVALID_ARGUMENT, "tracker is null");
  return guarded([&] {
    const sgtrack::Frame frame = frame_from_rgb(rgb, width, height);
    tracker->impl->step(frame);
  });
}

sgt_status sgt_tracker_states(const sgt_tracker* tracker, sgt_object_state* out,
                              size_t cap, size_t* count) {
  if (!tracker || !out || !count)
    return fail(SGT_ERR_INVALID_ARGUMENT, "tracker, out or count is null");
  const auto& states = tracker->impl->states();
  *count = states.size();
  if (cap < states.size())
    return fail(SGT_ERR_INVALID_ARGUMENT, "output buffer too small");
  for (size_t i = 0; i < states.size(); ++i) out[i] = to_c_state(states[i]);
  g_last_error.clear();
  return SGT_OK;
}

sgt_status sgt_tracker_object_count(const sgt_tracker* tracker, size_t* count) {
  if (!tracker || !count)
    return fail(SGT_ERR_INVALID_ARGUMENT, "tracker or count is null");
  *count = static_cast<size_t>(tracker->impl->object_count());
  return SGT_OK;
}

sgt_status sgt_tracker_save_model(const sgt_tracker* tracker, const char* path) {
  if (!tracker || !path)
    return fail(SGT_ERR_INVALID_ARGUMENT, "tracker or path is null");
  return guarded([&] {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw sgtrack::io_error(std::string(path) + ": cannot write file");
    tracker->impl->model().serialize(os);
  });
}

void sgt_tracker_free(sgt_tracker* tracker) { delete tracker; }

sgt_status sgt_run_track(const sgt_config* config, const char* sequence_path,
                         const char* annotations_csv, const char* out_csv,
                         const char* overlay_dir_or_null,
                         const char* model_dump_or_null) {
  if (!config || !sequence_path || !annotations_csv || !out_csv)
    return fail(SGT_ERR_INVALID_ARGUMENT, "required argument is null");
  return guarded([&] {
    sgtrack::FrameSequence sequence(sequence_path);
    const auto annotations = sgtrack::read_track_csv(annotations_csv);
    sgtrack::TrackOptions options;
    if (overlay_dir_or_null) options.overlay_dir = overlay_dir_or_null;
    if (model_dump_or_null) options.model_dump = model_dump_or_null;
    sgtrack::run_track(config->config, sequence, annotations, out_csv, options);
  });
}

sgt_status sgt_run_evaluate(const char* gt_csv, const char* hyp_csv,
                            double iou_threshold, const char* report_path_or_null,
                            sgt_metrics* out) {
  if (!gt_csv || !hyp_csv || !out)
    return fail(SGT_ERR_INVALID_ARGUMENT, "required argument is null");
  return guarded([&] {
    const sgtrack::MetricsReport r = sgtrack::run_evaluate(
        gt_csv, hyp_csv, iou_threshold,
        report_path_or_null ? report_path_or_null : "");
    *out = sgt_metrics{r.motp,          r.mota,
                       r.motg,          r.id_switches,
                       r.misses,        r.false_positives,
                       r.mismatches,    r.matches,
                       r.gt_count,      r.tp_rate,
                       r.fp_rate,       r.motp_undefined ? 1 : 0};
  });
}

sgt_status sgt_run_simulate(const char* scenario, uint64_t seed,
                            const char* out_dir, int frame_override) {
  if (!scenario || !out_dir)
    return fail(SGT_ERR_INVALID_ARGUMENT, "scenario or out_dir is null");
  return guarded([&] {
    sgtrack::ScenarioConfig config = sgtrack::standard_scenario(scenario);
    if (frame_override > 0) config.frame_count = frame_override;
    sgtrack::run_simulate(config, seed, out_dir);
  });
}

sgt_status sgt_scenario_names(char* buf, size_t cap) {
  std::string names;
  for (const std::string& n : sgtrack::standard_scenario_names()) {
    if (!names.empty()) names += ',';
    names += n;
  }
  return copy_string(names, buf, cap);
}

sgt_status sgt_run_sweep(const sgt_config* config, const char* sequence_path,
                         const char* annotations_csv_or_null, const char* gt_csv,
                         double step, int repeats, const char* out_csv) {
  if (!config || !sequence_path || !gt_csv || !out_csv)
    return fail(SGT_ERR_INVALID_ARGUMENT, "required argument is null");
  return guarded([&] {
    sgtrack::FrameSequence sequence(sequence_path);
    const auto gt = sgtrack::read_track_csv(gt_csv);
    std::vector<sgtrack::TrackRecord> annotations;
    if (annotations_csv_or_null) {
      annotations = sgtrack::read_track_csv(annotations_csv_or_null);
    } else {
      for (const auto& r : gt)
        if (r.frame == 0) annotations.push_back(r);
    }
    const sgtrack::SweepResult result = sgtrack::run_sweep(
        config->config, [&](int f) -> const sgtrack::Frame& { return sequence.frame(f); },
        sequence.frame_count(), annotations, gt, step, repeats);
    sgtrack::write_sweep_csv(result, out_csv);
    sgtrack::write_sweep_marginals(result, step,
                                   sgtrack::sweep_marginals_path(out_csv));
  });
}

sgt_status sgt_run_overlay(const char* sequence_path, const char* track_csv,
                           const char* out_dir) {
  if (!sequence_path || !track_csv || !out_dir)
    return fail(SGT_ERR_INVALID_ARGUMENT, "required argument is null");
  return guarded([&] {
    sgtrack::FrameSequence sequence(sequence_path);
    const auto tracks = sgtrack::read_track_csv(track_csv);
    sgtrack::run_overlay(sequence, tracks, out_dir);
  });
}

}  // extern "C"
