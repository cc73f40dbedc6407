#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "sgtrack/errors.hpp"
#include "sgtrack/image_io.hpp"
#include "sgtrack/runner.hpp"
#include "sgtrack/scenario.hpp"

using namespace sgtrack;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / "sgtrack_runner_tests";
  fs::create_directories(dir);
  return dir;
}

RunConfig small_config() {
  RunConfig config;
  config.tracker = scenario_tracker_config(standard_scenario("occlusion-cross"));
  config.tracker.seed = 3;
  return config;
}

}  // namespace

TEST_CASE("first_frame_annotations validates coverage and duplicates") {
  std::vector<TrackRecord> records;
  TrackRecord r;
  r.frame = 0;
  r.object_id = 0;
  r.box = BBox{{10, 10}, 5, 5};
  records.push_back(r);
  r.object_id = 1;
  records.push_back(r);
  CHECK(first_frame_annotations(records, 2).size() == 2);
  CHECK_THROWS_AS(first_frame_annotations(records, 3), io_error);
  records.push_back(r);  // duplicate id 1 at frame 0
  CHECK_THROWS_AS(first_frame_annotations(records, 2), io_error);
}

TEST_CASE("track_frames emits annotations verbatim at frame zero") {
  const ScenarioConfig scenario = standard_scenario("occlusion-cross");
  const SyntheticSequence seq = generate_scenario(scenario, 77);
  std::vector<TrackRecord> annotations;
  for (const TrackRecord& r : seq.ground_truth)
    if (r.frame == 0) annotations.push_back(r);

  const auto tracks = track_frames(
      small_config(), [&](int f) -> const Frame& { return seq.frames[f]; }, 10,
      annotations);
  REQUIRE(tracks.size() == 30);  // 3 objects x 10 frames
  for (int i = 0; i < 3; ++i) {
    CHECK(tracks[i].frame == 0);
    CHECK(tracks[i].box.left() == annotations[i].box.left());
    CHECK(tracks[i].box.top() == annotations[i].box.top());
  }
}

TEST_CASE("run_track flushes records up to a failing frame") {
  const fs::path root = temp_dir() / "partial";
  fs::remove_all(root);
  fs::create_directories(root / "frames");

  const ScenarioConfig scenario = standard_scenario("occlusion-cross");
  const SyntheticSequence seq = generate_scenario(scenario, 5);
  char name[32];
  for (int f = 0; f < 6; ++f) {
    std::snprintf(name, sizeof(name), "frame_%06d.png", f);
    if (f < 4) {
      save_image(seq.frames[f], (root / "frames" / name).string());
    } else {
      std::ofstream os(root / "frames" / name);
      os << "corrupt";
    }
  }
  std::vector<TrackRecord> annotations;
  for (const TrackRecord& r : seq.ground_truth)
    if (r.frame == 0) annotations.push_back(r);

  FrameSequence sequence((root / "frames").string());
  const fs::path out = root / "tracks.csv";
  CHECK_THROWS_AS(run_track(small_config(), sequence, annotations, out.string()),
                  io_error);

  // Frames 0..3 made it to disk before the failure.
  const auto written = read_track_csv(out.string());
  CHECK(written.size() == 4 * 3);
  CHECK(written.back().frame == 3);
}

TEST_CASE("run_sweep enumerates the valid grid and averages repeats") {
  const ScenarioConfig scenario = standard_scenario("occlusion-cross");
  SyntheticSequence seq = generate_scenario(scenario, 9);
  seq.frames.resize(8);
  std::vector<TrackRecord> annotations, gt;
  for (const TrackRecord& r : seq.ground_truth) {
    if (r.frame == 0) annotations.push_back(r);
    if (r.frame < 8) gt.push_back(r);
  }
  const SweepResult result = run_sweep(
      small_config(), [&](int f) -> const Frame& { return seq.frames[f]; }, 8,
      annotations, gt, 0.5, 2);
  CHECK(result.cells.size() == 10);  // triples over {0, 0.5, 1} with sum <= 1
  CHECK(result.skipped_invalid == 17);
  for (const SweepCell& c : result.cells) {
    CHECK(c.rho_A + c.rho_S + c.rho_O <= 1.0 + 1e-9);
    CHECK(c.runs == 2);
    CHECK(c.mean_motg <= 1.0);
  }
  CHECK_THROWS_AS(run_sweep(small_config(), nullptr, 0, {}, {}, 0.0, 1),
                  config_error);
  CHECK_THROWS_AS(run_sweep(small_config(), nullptr, 0, {}, {}, 0.2, 0),
                  config_error);

  const fs::path out = temp_dir() / "sweep.csv";
  write_sweep_csv(result, out.string());
  write_sweep_marginals(result, 0.5, sweep_marginals_path(out.string()));
  CHECK(sweep_marginals_path(out.string()) ==
        (temp_dir() / "sweep.marginals.csv").string());
  std::ifstream is(sweep_marginals_path(out.string()));
  std::string line;
  int rows = 0;
  bool has_rho_c = false;
  while (std::getline(is, line)) {
    if (line.rfind("rho_C", 0) == 0) has_rho_c = true;
    ++rows;
  }
  CHECK(rows == 13);  // header + 4 parameters x 3 grid values
  CHECK(has_rho_c);
}
