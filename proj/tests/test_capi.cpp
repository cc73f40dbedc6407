// Exercises the shared-library surface exactly as an embedding client
// would: only sgtrack.h, no core headers.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "sgtrack.h"

namespace fs = std::filesystem;

namespace {

struct Config {
  sgt_config* ptr = nullptr;
  ~Config() { sgt_config_free(ptr); }
};

struct Tracker {
  sgt_tracker* ptr = nullptr;
  ~Tracker() { sgt_tracker_free(ptr); }
};

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "sgtrack_capi_tests";
  fs::create_directories(dir);
  return dir;
}

// 160x100 scene: a red square and a blue bar on gray.
std::vector<uint8_t> mini_frame(double player_x, double player_y) {
  std::vector<uint8_t> rgb(160 * 100 * 3);
  auto set = [&](int x, int y, uint8_t r, uint8_t g, uint8_t b) {
    uint8_t* p = rgb.data() + (y * 160 + x) * 3;
    p[0] = r;
    p[1] = g;
    p[2] = b;
  };
  for (int y = 0; y < 100; ++y)
    for (int x = 0; x < 160; ++x) set(x, y, 96, 96, 96);
  for (int y = static_cast<int>(player_y) - 8; y < static_cast<int>(player_y) + 8; ++y)
    for (int x = static_cast<int>(player_x) - 8; x < static_cast<int>(player_x) + 8; ++x)
      if (x >= 0 && x < 160 && y >= 0 && y < 100) set(x, y, 220, 40, 40);
  for (int y = 76; y < 84; ++y)
    for (int x = 40; x < 120; ++x) set(x, y, 40, 60, 220);
  return rgb;
}

void make_tracking_config(Config& config) {
  REQUIRE(sgt_config_create(&config.ptr) == SGT_OK);
  REQUIRE(sgt_config_set(config.ptr, "graph.adjacency", "[[0, 1], [1, 0]]") == SGT_OK);
  REQUIRE(sgt_config_set(config.ptr, "candidates.matrix", "[[0, 0], [5, 0]]") == SGT_OK);
  REQUIRE(sgt_config_set(config.ptr, "filter.sigma_b", "0.5") == SGT_OK);
  REQUIRE(sgt_config_set(config.ptr, "filter.tau_lambda", "0.5") == SGT_OK);
}

}  // namespace

TEST_CASE("version and status strings") {
  CHECK(sgt_version() != nullptr);
  CHECK(std::strcmp(sgt_status_name(SGT_OK), "ok") == 0);
  CHECK(sgt_status_name(SGT_ERR_CONFIG) != nullptr);
}

TEST_CASE("config lifecycle, accessors and errors") {
  Config config;
  REQUIRE(sgt_config_create(&config.ptr) == SGT_OK);
  CHECK(sgt_config_set(config.ptr, "graph.rho_A", "0.3") == SGT_OK);
  char buf[64];
  CHECK(sgt_config_get(config.ptr, "graph.rho_A", buf, sizeof(buf)) == SGT_OK);
  CHECK(std::string(buf) == "0.3");

  CHECK(sgt_config_set(config.ptr, "no.such.key", "1") == SGT_ERR_CONFIG);
  CHECK(std::string(sgt_last_error()).find("no.such.key") != std::string::npos);
  CHECK(sgt_config_set(nullptr, "seed", "1") == SGT_ERR_INVALID_ARGUMENT);

  const fs::path path = work_dir() / "config.cfg";
  CHECK(sgt_config_save(config.ptr, path.string().c_str()) == SGT_OK);
  Config loaded;
  CHECK(sgt_config_load(path.string().c_str(), &loaded.ptr) == SGT_OK);
  CHECK(sgt_config_get(loaded.ptr, "graph.rho_A", buf, sizeof(buf)) == SGT_OK);
  CHECK(std::string(buf) == "0.3");

  Config missing;
  CHECK(sgt_config_load((work_dir() / "absent.cfg").string().c_str(),
                        &missing.ptr) == SGT_ERR_IO);
}

TEST_CASE("streaming tracker over raw frames") {
  Config config;
  make_tracking_config(config);

  const std::vector<uint8_t> first = mini_frame(50, 30);
  const sgt_object_state annotations[2] = {
      {0, {42, 22, 16, 16}, 1.0},
      {1, {40, 76, 80, 8}, 1.0},
  };

  Tracker missing_adjacency;
  Config plain;
  REQUIRE(sgt_config_create(&plain.ptr) == SGT_OK);
  CHECK(sgt_tracker_create(plain.ptr, first.data(), 160, 100, annotations, 2,
                           &missing_adjacency.ptr) == SGT_ERR_CONFIG);

  Tracker tracker;
  REQUIRE(sgt_tracker_create(config.ptr, first.data(), 160, 100, annotations, 2,
                             &tracker.ptr) == SGT_OK);

  size_t count = 0;
  CHECK(sgt_tracker_object_count(tracker.ptr, &count) == SGT_OK);
  CHECK(count == 2);

  sgt_object_state states[2];
  REQUIRE(sgt_tracker_states(tracker.ptr, states, 2, &count) == SGT_OK);
  CHECK(count == 2);
  CHECK(states[0].box.x == 42.0);  // frame 0 echoes the annotations
  CHECK(states[0].confidence == 1.0);

  // The target drifts right 1 px per frame; the tracker must follow.
  for (int t = 1; t <= 10; ++t) {
    const std::vector<uint8_t> frame = mini_frame(50.0 + t, 30);
    REQUIRE(sgt_tracker_step(tracker.ptr, frame.data(), 160, 100) == SGT_OK);
  }
  REQUIRE(sgt_tracker_states(tracker.ptr, states, 2, &count) == SGT_OK);
  const double cx = states[0].box.x + states[0].box.w / 2.0;
  CHECK(cx > 55.0);
  CHECK(cx < 65.0);

  sgt_object_state one[1];
  CHECK(sgt_tracker_states(tracker.ptr, one, 1, &count) == SGT_ERR_INVALID_ARGUMENT);

  const fs::path model_path = work_dir() / "model.txt";
  CHECK(sgt_tracker_save_model(tracker.ptr, model_path.string().c_str()) == SGT_OK);
  CHECK(fs::file_size(model_path) > 100);
}

TEST_CASE("identical seeds give identical streamed states") {
  auto run = [&](uint64_t seed) {
    Config config;
    make_tracking_config(config);
    REQUIRE(sgt_config_set(config.ptr, "seed", std::to_string(seed).c_str()) == SGT_OK);
    const std::vector<uint8_t> first = mini_frame(50, 30);
    const sgt_object_state annotations[2] = {
        {0, {42, 22, 16, 16}, 1.0},
        {1, {40, 76, 80, 8}, 1.0},
    };
    Tracker tracker;
    REQUIRE(sgt_tracker_create(config.ptr, first.data(), 160, 100, annotations, 2,
                               &tracker.ptr) == SGT_OK);
    std::vector<double> xs;
    for (int t = 1; t <= 8; ++t) {
      const std::vector<uint8_t> frame = mini_frame(50.0 + t, 30);
      REQUIRE(sgt_tracker_step(tracker.ptr, frame.data(), 160, 100) == SGT_OK);
      sgt_object_state states[2];
      size_t count = 0;
      REQUIRE(sgt_tracker_states(tracker.ptr, states, 2, &count) == SGT_OK);
      for (size_t i = 0; i < count; ++i) {
        xs.push_back(states[i].box.x);
        xs.push_back(states[i].box.y);
        xs.push_back(states[i].confidence);
      }
    }
    return xs;
  };
  CHECK(run(5) == run(5));
  CHECK(run(5) != run(6));
}

TEST_CASE("batch runs cover the whole CLI surface") {
  const fs::path root = work_dir() / "batch";
  fs::remove_all(root);
  fs::create_directories(root);

  char names[128];
  REQUIRE(sgt_scenario_names(names, sizeof(names)) == SGT_OK);
  CHECK(std::string(names).find("occlusion-cross") != std::string::npos);

  const fs::path sim = root / "sim";
  REQUIRE(sgt_run_simulate("occlusion-cross", 11, sim.string().c_str(), 25) == SGT_OK);
  CHECK(fs::exists(sim / "frames" / "frame_000000.png"));
  CHECK(fs::exists(sim / "frames" / "frame_000024.png"));
  CHECK(fs::exists(sim / "gt.csv"));
  CHECK(fs::exists(sim / "annotations.csv"));
  CHECK(fs::exists(sim / "events.csv"));
  CHECK(fs::exists(sim / "config.cfg"));
  CHECK(sgt_run_simulate("bogus", 1, sim.string().c_str(), 0) ==
        SGT_ERR_INVALID_ARGUMENT);

  Config config;
  REQUIRE(sgt_config_load((sim / "config.cfg").string().c_str(), &config.ptr) ==
          SGT_OK);
  const fs::path tracks = root / "tracks.csv";
  const fs::path overlays = root / "overlays";
  const fs::path model_dump = root / "model.txt";
  REQUIRE(sgt_run_track(config.ptr, (sim / "frames").string().c_str(),
                        (sim / "annotations.csv").string().c_str(),
                        tracks.string().c_str(), overlays.string().c_str(),
                        model_dump.string().c_str()) == SGT_OK);
  CHECK(fs::exists(tracks));
  CHECK(fs::exists(overlays / "frame_000024.png"));
  CHECK(fs::exists(model_dump));

  sgt_metrics self;
  REQUIRE(sgt_run_evaluate((sim / "gt.csv").string().c_str(),
                           (sim / "gt.csv").string().c_str(), 0.5, nullptr,
                           &self) == SGT_OK);
  CHECK(self.mota == 1.0);
  CHECK(self.motp == 1.0);
  CHECK(self.id_switches == 0);

  sgt_metrics tracked;
  const fs::path report = root / "report.txt";
  REQUIRE(sgt_run_evaluate((sim / "gt.csv").string().c_str(),
                           tracks.string().c_str(), 0.5,
                           report.string().c_str(), &tracked) == SGT_OK);
  CHECK(fs::exists(report));
  CHECK(tracked.mota <= 1.0);
  CHECK(tracked.gt_count == 25 * 3);

  sgt_metrics unused;
  CHECK(sgt_run_evaluate("missing.csv", tracks.string().c_str(), 0.5, nullptr,
                         &unused) == SGT_ERR_IO);

  const fs::path redrawn = root / "redrawn";
  REQUIRE(sgt_run_overlay((sim / "frames").string().c_str(),
                          tracks.string().c_str(),
                          redrawn.string().c_str()) == SGT_OK);
  CHECK(fs::exists(redrawn / "frame_000000.png"));

  const fs::path sweep_csv = root / "sweep.csv";
  REQUIRE(sgt_run_sweep(config.ptr, (sim / "frames").string().c_str(), nullptr,
                        (sim / "gt.csv").string().c_str(), 0.5, 1,
                        sweep_csv.string().c_str()) == SGT_OK);
  CHECK(fs::exists(sweep_csv));
  CHECK(fs::exists(root / "sweep.marginals.csv"));
  // step 0.5: triples over {0, 0.5, 1} with sum <= 1 -> 10 cells.
  std::ifstream is(sweep_csv);
  std::string line;
  int rows = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 11);  // header + 10 cells
}
