#ifndef SGTRACK_TRACKER_HPP_
#define SGTRACK_TRACKER_HPP_

#include <optional>
#include <vector>

#include "sgtrack/candidates.hpp"
#include "sgtrack/model_graph.hpp"
#include "sgtrack/particle_filter.hpp"

namespace sgtrack {

// Weights of the instantaneous score. The changing weight is the residual
// 1 - rho_A - rho_S - rho_O.
struct ScoreWeights {
  double rho_A = 0.4;
  double rho_S = 0.0;
  double rho_O = 0.6;
  double rho_T = 0.8;

  double rho_C() const { return 1.0 - rho_A - rho_S - rho_O; }
  void validate() const;
};

// Per-frame scoring snapshot of one tracker: everything the graph score
// needs, decoupled from particle internals.
struct TrackerView {
  int tracker_id = -1;
  double temporal_weight = 0.0;
  double zeta = 0.0;  // appearance confidence of the cloud
  Point2 position;
  BBox box;
  std::optional<ColorHistogram> box_hist;  // current-frame content of box
};

struct SceneSelection {
  std::vector<int> chosen;  // per object: index into that object's views
  double score = 0.0;
};

// Evaluates scene-graph configurations over a fixed per-frame set of
// tracker views. Pairwise appearance distances are computed lazily and
// cached, since the optimizer revisits the same pairs many times.
class SceneScorer {
 public:
  SceneScorer(const std::vector<std::vector<TrackerView>>& views,
              const ModelGraph& model, const ScoreWeights& weights,
              const std::vector<int>& previous_tracker_ids, double image_width);

  int object_count() const { return static_cast<int>(views_->size()); }
  int view_count(int object) const {
    return static_cast<int>((*views_)[object].size());
  }
  const TrackerView& view(int object, int index) const {
    return (*views_)[object][index];
  }

  double appearance_score(int object, const std::vector<int>& selection) const;
  double structural_score(int object, const std::vector<int>& selection) const;
  double overlap_score(int object, const std::vector<int>& selection) const;
  double change_score(int object, int view_index) const;

  // f = rho_A phi_A + rho_S phi_S - rho_O phi_O - rho_C phi_C
  double instantaneous_score(int object, const std::vector<int>& selection) const;

  // sum_i (rho_T w_i + f_i); stored weights are not mutated.
  double graph_score(const std::vector<int>& selection) const;

 private:
  double pair_term(int object_i, int vi, int object_j, int vj) const;
  double bhattacharyya_cached(int a, int b) const;

  const std::vector<std::vector<TrackerView>>* views_;
  const ModelGraph* model_;
  ScoreWeights weights_;
  std::vector<int> previous_tracker_ids_;
  double image_width_;
  std::vector<int> offsets_;
  int total_views_ = 0;
  mutable std::vector<double> db_cache_;
};

// Iterated conditional improvement over one score-guided run plus
// `restarts` fully random runs; returns the best selection seen.
SceneSelection greedy_optimize(const SceneScorer& scorer,
                               const std::vector<int>& guided_initial,
                               const std::vector<int>& guided_order,
                               int max_sweeps, int restarts, RandomStream& rng);

struct TrackerConfig {
  FilterParams filter;
  HistogramSpec angle_spec = default_angle_spec();
  HistogramSpec distance_spec = default_distance_spec();
  ScoreWeights weights;
  double tau_score = 0.4;     // candidate appearance gate
  double tau_remove = 0.2;    // temporal-weight pruning threshold
  double tau_overlap = 0.25;  // candidate overlap gate
  int max_sweeps = 10;        // optimization iteration limit
  int restarts = 10;          // random optimization runs
  CandidateNoise noise;
  KernelSet kernels = KernelSet::defaults();
  std::vector<std::vector<int>> adjacency;
  std::vector<std::vector<int>> candidate_counts;  // empty means none
  uint64_t seed = 42;
};

struct ObjectState {
  int object_id = -1;
  BBox box;
  double confidence = 0.0;
};

// One tracked object's hypothesis set. Never empty: pruning keeps the
// best entry when everything falls below the removal threshold.
struct TrackerEntry {
  int tracker_id;
  ParticleCloud cloud;
  double temporal_weight = 0.0;
  RandomStream rng;
  // refreshed every frame after reweighting
  Point2 estimate;
  double zeta = 0.0;
  double estimate_like = 0.0;
};

struct TrackerSet {
  int object_id;
  std::vector<TrackerEntry> entries;
};

// Full per-frame pipeline: spawn structural candidates, advance every
// cloud, pick the best scene graph, update temporal weights, prune, and
// update the model.
class MultiObjectTracker {
 public:
  MultiObjectTracker(const TrackerConfig& config, const Frame& first_frame,
                     const std::vector<BBox>& annotations);

  std::vector<ObjectState> step(const Frame& frame);

  const std::vector<ObjectState>& states() const { return last_states_; }
  const ModelGraph& model() const { return model_; }
  const std::vector<TrackerSet>& tracker_sets() const { return sets_; }
  int object_count() const { return static_cast<int>(sets_.size()); }
  int frame_index() const { return frame_; }

 private:
  TrackerEntry make_entry(int object_id, const Point2& center);

  TrackerConfig config_;
  CandidateMatrix budgets_;
  ModelGraph model_;
  std::vector<TrackerSet> sets_;
  std::vector<double> box_widths_;
  std::vector<double> box_heights_;
  std::vector<int> previous_selection_;  // tracker ids chosen last frame
  std::vector<ObjectState> last_states_;
  std::vector<int> next_tracker_id_;
  int frame_ = 0;
  int image_width_ = 0;
  int image_height_ = 0;
};

}  // namespace sgtrack

#endif  // SGTRACK_TRACKER_HPP_
