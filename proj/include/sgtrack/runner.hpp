#ifndef SGTRACK_RUNNER_HPP_
#define SGTRACK_RUNNER_HPP_

#include <functional>
#include <string>
#include <vector>

#include "sgtrack/config.hpp"
#include "sgtrack/metrics.hpp"
#include "sgtrack/scenario.hpp"
#include "sgtrack/track_io.hpp"

namespace sgtrack {

using FrameProvider = std::function<const Frame&(int)>;
using FrameCallback = std::function<void(int, const std::vector<ObjectState>&)>;
using TrackerCallback = std::function<void(const MultiObjectTracker&)>;

// Runs the tracker over `frame_count` frames. Frame 0 initializes from the
// annotations and is emitted verbatim; the callback fires once per frame
// with the emitted states. Returned records are centipixel-quantized.
std::vector<TrackRecord> track_frames(const RunConfig& config,
                                      const FrameProvider& frames, int frame_count,
                                      const std::vector<TrackRecord>& annotations,
                                      const FrameCallback& on_frame = nullptr,
                                      const TrackerCallback& on_complete = nullptr);

struct TrackOptions {
  std::string overlay_dir;  // empty: no overlays
  std::string model_dump;   // empty: no model file
};

// track subcommand: CSV output flushed frame by frame.
std::vector<TrackRecord> run_track(const RunConfig& config, FrameSequence& sequence,
                                   const std::vector<TrackRecord>& annotations,
                                   const std::string& out_csv,
                                   const TrackOptions& options = {});

// evaluate subcommand: returns the report; optionally writes it to a file.
MetricsReport run_evaluate(const std::string& gt_csv, const std::string& hyp_csv,
                           double iou_threshold, const std::string& out_path = "");

// simulate subcommand: frames/, gt.csv, annotations.csv, events.csv and a
// ready-to-run config.cfg under out_dir.
void run_simulate(const ScenarioConfig& scenario, uint64_t seed,
                  const std::string& out_dir);

struct SweepCell {
  double rho_A;
  double rho_S;
  double rho_O;
  double rho_C;
  int runs;
  double mean_motg;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  int skipped_invalid = 0;
};

// sweep subcommand over the weight grid with the given step; each cell is
// tracked `repeats` times with derived seeds and scored with MOTG.
SweepResult run_sweep(const RunConfig& config, const FrameProvider& frames,
                      int frame_count, const std::vector<TrackRecord>& annotations,
                      const std::vector<TrackRecord>& ground_truth, double step,
                      int repeats);

void write_sweep_csv(const SweepResult& result, const std::string& out_csv);
std::string sweep_marginals_path(const std::string& out_csv);
void write_sweep_marginals(const SweepResult& result, double step,
                           const std::string& out_path);

// overlay subcommand: input frames with track boxes drawn on top.
void run_overlay(FrameSequence& sequence, const std::vector<TrackRecord>& tracks,
                 const std::string& out_dir);

// Pulls the frame-0 records out of an annotation file, ordered by object
// id, and checks they cover objects 0..n-1.
std::vector<TrackRecord> first_frame_annotations(const std::vector<TrackRecord>& records,
                                                 int object_count);

}  // namespace sgtrack

#endif  // SGTRACK_RUNNER_HPP_
