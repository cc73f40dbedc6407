#include "sgtrack/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>

#include "sgtrack/errors.hpp"
#include "sgtrack/image_io.hpp"

namespace fs = std::filesystem;

namespace sgtrack {

std::vector<TrackRecord> first_frame_annotations(const std::vector<TrackRecord>& records,
                                                 int object_count) {
  std::map<int, TrackRecord> by_id;
  for (const TrackRecord& r : records) {
    if (r.frame != 0) continue;
    if (!by_id.emplace(r.object_id, r).second)
      throw io_error("annotations: duplicate first-frame record for object " +
                     std::to_string(r.object_id));
  }
  std::vector<TrackRecord> out;
  for (int i = 0; i < object_count; ++i) {
    const auto it = by_id.find(i);
    if (it == by_id.end())
      throw io_error("annotations: object " + std::to_string(i) +
                     " missing from the first frame");
    out.push_back(it->second);
  }
  return out;
}

namespace {

TrackRecord quantized_record(int frame, const ObjectState& state) {
  TrackRecord r;
  r.frame = frame;
  r.object_id = state.object_id;
  r.box = BBox::from_top_left(quantize_centi(state.box.left()),
                              quantize_centi(state.box.top()), state.box.width,
                              state.box.height);
  r.confidence = std::round(state.confidence * 10000.0) / 10000.0;
  return r;
}

}  // namespace

std::vector<TrackRecord> track_frames(const RunConfig& config,
                                      const FrameProvider& frames, int frame_count,
                                      const std::vector<TrackRecord>& annotations,
                                      const FrameCallback& on_frame,
                                      const TrackerCallback& on_complete) {
  config.validate();
  if (config.tracker.adjacency.empty())
    throw config_error("config: graph.adjacency is required for tracking");
  const int n = static_cast<int>(config.tracker.adjacency.size());
  const std::vector<TrackRecord> first = first_frame_annotations(annotations, n);

  std::vector<BBox> boxes;
  for (const TrackRecord& r : first) boxes.push_back(r.box);

  MultiObjectTracker tracker(config.tracker, frames(0), boxes);

  std::vector<TrackRecord> out;
  out.reserve(static_cast<size_t>(frame_count) * n);
  std::vector<ObjectState> states(n);
  for (int i = 0; i < n; ++i) states[i] = ObjectState{i, boxes[i], 1.0};
  for (int i = 0; i < n; ++i) out.push_back(quantized_record(0, states[i]));
  if (on_frame) on_frame(0, states);

  for (int f = 1; f < frame_count; ++f) {
    states = tracker.step(frames(f));
    for (const ObjectState& s : states) out.push_back(quantized_record(f, s));
    if (on_frame) on_frame(f, states);
  }
  if (on_complete) on_complete(tracker);
  return out;
}

namespace {

void write_overlay_frame(const Frame& input, const std::vector<ObjectState>& states,
                         const std::string& dir, int frame_index) {
  Frame overlay = input;
  for (const ObjectState& s : states)
    draw_box_outline(overlay, s.box, object_color(s.object_id));
  char name[32];
  std::snprintf(name, sizeof(name), "frame_%06d.png", frame_index);
  save_image(overlay, (fs::path(dir) / name).string());
}

}  // namespace

std::vector<TrackRecord> run_track(const RunConfig& config, FrameSequence& sequence,
                                   const std::vector<TrackRecord>& annotations,
                                   const std::string& out_csv,
                                   const TrackOptions& options) {
  std::ofstream os(out_csv, std::ios::binary);
  if (!os) throw io_error(out_csv + ": cannot write file");
  os << "frame,id,x,y,w,h,conf\n";
  if (!options.overlay_dir.empty()) fs::create_directories(options.overlay_dir);

  std::vector<TrackRecord> all;
  const auto on_frame = [&](int f, const std::vector<ObjectState>& states) {
    char buf[160];
    for (const ObjectState& s : states) {
      const TrackRecord r = quantized_record(f, s);
      all.push_back(r);
      std::snprintf(buf, sizeof(buf), "%d,%d,%.2f,%.2f,%.2f,%.2f,%.4f\n", r.frame,
                    r.object_id, r.box.left(), r.box.top(), r.box.width,
                    r.box.height, r.confidence);
      os << buf;
    }
    os.flush();  // partial output survives a failing frame
    if (!options.overlay_dir.empty())
      write_overlay_frame(sequence.frame(f), states, options.overlay_dir, f);
  };

  TrackerCallback on_complete = nullptr;
  if (!options.model_dump.empty()) {
    on_complete = [&](const MultiObjectTracker& tracker) {
      std::ofstream model_os(options.model_dump, std::ios::binary);
      if (!model_os) throw io_error(options.model_dump + ": cannot write file");
      tracker.model().serialize(model_os);
    };
  }

  track_frames(config, [&](int f) -> const Frame& { return sequence.frame(f); },
               sequence.frame_count(), annotations, on_frame, on_complete);
  return all;
}

MetricsReport run_evaluate(const std::string& gt_csv, const std::string& hyp_csv,
                           double iou_threshold, const std::string& out_path) {
  const std::vector<TrackRecord> gt = read_track_csv(gt_csv);
  const std::vector<TrackRecord> hyp = read_track_csv(hyp_csv);
  const MetricsReport report = compute_metrics(gt, hyp, iou_threshold);
  if (!out_path.empty()) {
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw io_error(out_path + ": cannot write file");
    os << format_report(report);
  }
  return report;
}

void run_simulate(const ScenarioConfig& scenario, uint64_t seed,
                  const std::string& out_dir) {
  const SyntheticSequence seq = generate_scenario(scenario, seed);
  const fs::path root(out_dir);
  fs::create_directories(root / "frames");

  char name[32];
  for (size_t f = 0; f < seq.frames.size(); ++f) {
    std::snprintf(name, sizeof(name), "frame_%06d.png", static_cast<int>(f));
    save_image(seq.frames[f], (root / "frames" / name).string());
  }

  write_track_csv((root / "gt.csv").string(), seq.ground_truth, false);

  std::vector<TrackRecord> annotations;
  for (const TrackRecord& r : seq.ground_truth)
    if (r.frame == 0) annotations.push_back(r);
  write_track_csv((root / "annotations.csv").string(), annotations, false);

  {
    std::ofstream os(root / "events.csv", std::ios::binary);
    os << "frame,type,a,b\n";
    for (const SceneEvent& e : seq.events)
      os << e.frame << ',' << e.type << ',' << e.a << ',' << e.b << '\n';
  }

  RunConfig config;
  config.tracker = scenario_tracker_config(scenario);
  config.tracker.seed = seed;
  save_config(config, (root / "config.cfg").string());
}

SweepResult run_sweep(const RunConfig& config, const FrameProvider& frames,
                      int frame_count, const std::vector<TrackRecord>& annotations,
                      const std::vector<TrackRecord>& ground_truth, double step,
                      int repeats) {
  if (step <= 0.0 || step > 1.0) throw config_error("sweep: step must be in (0, 1]");
  if (repeats <= 0) throw config_error("sweep: repeats must be positive");
  const int steps = static_cast<int>(std::lround(1.0 / step));
  SweepResult result;
  for (int ia = 0; ia <= steps; ++ia) {
    for (int is = 0; is <= steps; ++is) {
      for (int io = 0; io <= steps; ++io) {
        if (ia + is + io > steps) {
          ++result.skipped_invalid;
          continue;
        }
        SweepCell cell;
        cell.rho_A = static_cast<double>(ia) / steps;
        cell.rho_S = static_cast<double>(is) / steps;
        cell.rho_O = static_cast<double>(io) / steps;
        cell.rho_C = static_cast<double>(steps - ia - is - io) / steps;
        cell.runs = repeats;
        double motg_sum = 0.0;
        for (int rep = 0; rep < repeats; ++rep) {
          RunConfig run = config;
          run.tracker.weights.rho_A = cell.rho_A;
          run.tracker.weights.rho_S = cell.rho_S;
          run.tracker.weights.rho_O = cell.rho_O;
          run.tracker.seed = derive_seed(config.tracker.seed, 0x53EBULL,
                                         static_cast<uint64_t>(ia),
                                         static_cast<uint64_t>(is),
                                         static_cast<uint64_t>(io),
                                         static_cast<uint64_t>(rep));
          const std::vector<TrackRecord> tracks =
              track_frames(run, frames, frame_count, annotations);
          const MetricsReport report =
              compute_metrics(ground_truth, tracks, config.eval_iou_threshold);
          motg_sum += report.motg;
        }
        cell.mean_motg = motg_sum / repeats;
        result.cells.push_back(cell);
      }
    }
  }
  if (result.skipped_invalid > 0)
    std::fprintf(stderr, "sgtrack: sweep skipped %d invalid weight combinations\n",
                 result.skipped_invalid);
  return result;
}

void write_sweep_csv(const SweepResult& result, const std::string& out_csv) {
  std::ofstream os(out_csv, std::ios::binary);
  if (!os) throw io_error(out_csv + ": cannot write file");
  os << "rho_A,rho_S,rho_O,rho_C,runs,mean_motg\n";
  char buf[160];
  for (const SweepCell& c : result.cells) {
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f,%.2f,%.2f,%d,%.6f\n", c.rho_A,
                  c.rho_S, c.rho_O, c.rho_C, c.runs, c.mean_motg);
    os << buf;
  }
}

std::string sweep_marginals_path(const std::string& out_csv) {
  const std::string suffix = ".csv";
  if (out_csv.size() > suffix.size() &&
      out_csv.compare(out_csv.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out_csv.substr(0, out_csv.size() - suffix.size()) + ".marginals.csv";
  return out_csv + ".marginals.csv";
}

void write_sweep_marginals(const SweepResult& result, double step,
                           const std::string& out_path) {
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw io_error(out_path + ": cannot write file");
  os << "parameter,value,cells,mean_motg\n";
  const int steps = static_cast<int>(std::lround(1.0 / step));
  const char* names[4] = {"rho_A", "rho_S", "rho_O", "rho_C"};
  char buf[96];
  for (int p = 0; p < 4; ++p) {
    for (int v = 0; v <= steps; ++v) {
      const double value = static_cast<double>(v) / steps;
      int count = 0;
      double sum = 0.0;
      for (const SweepCell& c : result.cells) {
        const double cell_value = p == 0   ? c.rho_A
                                  : p == 1 ? c.rho_S
                                  : p == 2 ? c.rho_O
                                           : c.rho_C;
        if (std::fabs(cell_value - value) < 1e-9) {
          ++count;
          sum += c.mean_motg;
        }
      }
      if (count == 0) continue;
      std::snprintf(buf, sizeof(buf), "%s,%.2f,%d,%.6f\n", names[p], value, count,
                    sum / count);
      os << buf;
    }
  }
}

void run_overlay(FrameSequence& sequence, const std::vector<TrackRecord>& tracks,
                 const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::map<int, std::vector<TrackRecord>> by_frame;
  for (const TrackRecord& r : tracks) by_frame[r.frame].push_back(r);
  for (int f = 0; f < sequence.frame_count(); ++f) {
    Frame overlay = sequence.frame(f);
    const auto it = by_frame.find(f);
    if (it != by_frame.end())
      for (const TrackRecord& r : it->second)
        draw_box_outline(overlay, r.box, object_color(r.object_id));
    char name[32];
    std::snprintf(name, sizeof(name), "frame_%06d.png", f);
    save_image(overlay, (fs::path(out_dir) / name).string());
  }
}

}  // namespace sgtrack
