#ifndef SGTRACK_SCENARIO_HPP_
#define SGTRACK_SCENARIO_HPP_

#include <array>
#include <string>
#include <vector>

#include "sgtrack/frame.hpp"
#include "sgtrack/metrics.hpp"
#include "sgtrack/tracker.hpp"

namespace sgtrack {

struct Waypoint {
  int frame;
  double x;
  double y;
};

struct ObjectSpec {
  int id = 0;
  double box_width = 24.0;
  double box_height = 36.0;
  std::array<uint8_t, 3> color{255, 0, 0};
  int team = 0;
  std::vector<Waypoint> waypoints;  // piecewise-linear path of the centroid
  bool is_static_reference = false; // middle line: exempt from cut events
};

// Two objects driven onto each other: the follower's centroid is pinned to
// the leader plus a small offset during [start, end], with linear blends of
// `ramp` frames on both sides.
struct OcclusionEvent {
  int start = 0;
  int end = 0;
  int follower = 0;
  int leader = 1;
  double offset_x = 2.0;
  double offset_y = 2.0;
  int ramp = 8;
};

// Instantaneous repositioning of all non-reference objects by a common
// translation, preserving their pairwise structure.
struct CutEvent {
  int frame = 0;
  double dx = 0.0;
  double dy = 0.0;
};

struct ScenarioConfig {
  std::string name;
  int width = 480;
  int height = 270;
  int frame_count = 150;
  std::array<uint8_t, 3> background{96, 96, 96};
  // Seeded static value-noise on the background; 0 keeps it solid.
  double background_noise = 0.0;
  double jitter_sigma = 1.0;
  std::vector<ObjectSpec> objects;
  std::vector<OcclusionEvent> occlusions;
  std::vector<CutEvent> cuts;

  void validate() const;
};

struct SceneEvent {
  int frame;
  std::string type;  // "occlusion" or "cut"
  int a = -1;        // objects involved (occlusions)
  int b = -1;
};

struct SyntheticSequence {
  std::vector<Frame> frames;
  std::vector<TrackRecord> ground_truth;  // one record per object per frame
  std::vector<SceneEvent> events;
};

// Deterministic rendering of the scripted scene: flat-colored rectangles
// over a flat background, higher object id drawn on top.
SyntheticSequence generate_scenario(const ScenarioConfig& config, uint64_t seed);

// The bundled scenarios: "occlusion-cross", "camera-cut", "clutter-12".
std::vector<std::string> standard_scenario_names();
ScenarioConfig standard_scenario(const std::string& name);

// Tracking configuration matched to a scenario: adjacency over its
// objects, middle-line candidate budgets, default parameters elsewhere.
TrackerConfig scenario_tracker_config(const ScenarioConfig& config);

}  // namespace sgtrack

#endif  // SGTRACK_SCENARIO_HPP_
