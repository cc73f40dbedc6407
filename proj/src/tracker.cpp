#include "sgtrack/tracker.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace sgtrack {

void ScoreWeights::validate() const {
  if (rho_A < 0.0 || rho_S < 0.0 || rho_O < 0.0)
    throw std::invalid_argument("weights: rho_A, rho_S, rho_O must be non-negative");
  if (rho_A + rho_S + rho_O > 1.0 + 1e-12)
    throw std::invalid_argument("weights: rho_A + rho_S + rho_O must not exceed 1");
  if (rho_T < 0.0 || rho_T > 1.0)
    throw std::invalid_argument("weights: rho_T must be in [0, 1]");
}

SceneScorer::SceneScorer(const std::vector<std::vector<TrackerView>>& views,
                         const ModelGraph& model, const ScoreWeights& weights,
                         const std::vector<int>& previous_tracker_ids,
                         double image_width)
    : views_(&views), model_(&model), weights_(weights),
      previous_tracker_ids_(previous_tracker_ids), image_width_(image_width) {
  weights_.validate();
  if (image_width_ <= 0.0)
    throw std::invalid_argument("scorer: image width must be positive");
  if (static_cast<int>(views.size()) != model.object_count())
    throw std::invalid_argument("scorer: one view list per object required");
  offsets_.resize(views.size());
  for (size_t i = 0; i < views.size(); ++i) {
    if (views[i].empty())
      throw std::invalid_argument("scorer: every object needs at least one view");
    offsets_[i] = total_views_;
    total_views_ += static_cast<int>(views[i].size());
  }
  db_cache_.assign(static_cast<size_t>(total_views_) * total_views_,
                   std::numeric_limits<double>::quiet_NaN());
}

double SceneScorer::appearance_score(int object,
                                     const std::vector<int>& selection) const {
  return view(object, selection[object]).zeta;
}

double SceneScorer::structural_score(int object,
                                     const std::vector<int>& selection) const {
  const int n = object_count();
  const int degree = model_->adjacency().out_degree(object);
  if (degree == 0) return 0.0;
  const Point2& pi = view(object, selection[object]).position;
  double sum = 0.0;
  for (int j = 0; j < n; ++j) {
    if (!model_->adjacency().edge(object, j)) continue;
    const Point2& pj = view(j, selection[j]).position;
    const auto& e = model_->edge(object, j);
    const EdgeMeasurement m = measure_edge(pi, pj, image_width_);
    sum += e.angle.lookup_likelihood(m.angle) +
           e.distance.lookup_likelihood(m.distance);
  }
  return sum / (2.0 * degree);
}

double SceneScorer::bhattacharyya_cached(int a, int b) const {
  const size_t idx = static_cast<size_t>(a) * total_views_ + b;
  double d = db_cache_[idx];
  if (!std::isnan(d)) return d;
  d = 1.0;  // treat un-extractable content as fully dissimilar
  const int n = object_count();
  int obj_a = 0, obj_b = 0;
  while (obj_a + 1 < n && offsets_[obj_a + 1] <= a) ++obj_a;
  while (obj_b + 1 < n && offsets_[obj_b + 1] <= b) ++obj_b;
  const TrackerView& va = (*views_)[obj_a][a - offsets_[obj_a]];
  const TrackerView& vb = (*views_)[obj_b][b - offsets_[obj_b]];
  if (va.box_hist && vb.box_hist) d = bhattacharyya(*va.box_hist, *vb.box_hist);
  db_cache_[idx] = d;
  db_cache_[static_cast<size_t>(b) * total_views_ + a] = d;
  return d;
}

double SceneScorer::pair_term(int object_i, int vi, int object_j, int vj) const {
  const TrackerView& a = view(object_i, vi);
  const TrackerView& b = view(object_j, vj);
  const double ratio = overlap_ratio(a.box, b.box);
  if (ratio <= 0.0) return 0.0;
  const double d = bhattacharyya_cached(offsets_[object_i] + vi,
                                        offsets_[object_j] + vj);
  return (1.0 - d) * ratio;
}

double SceneScorer::overlap_score(int object,
                                  const std::vector<int>& selection) const {
  double sum = 0.0;
  for (int j = 0; j < object_count(); ++j) {
    if (j == object) continue;
    sum += pair_term(object, selection[object], j, selection[j]);
  }
  return sum;
}

double SceneScorer::change_score(int object, int view_index) const {
  if (previous_tracker_ids_.empty()) return 0.0;
  const int prev = previous_tracker_ids_[object];
  if (prev < 0) return 0.0;
  return view(object, view_index).tracker_id == prev ? 0.0 : 1.0;
}

double SceneScorer::instantaneous_score(int object,
                                        const std::vector<int>& selection) const {
  const double f = weights_.rho_A * appearance_score(object, selection) +
                   weights_.rho_S * structural_score(object, selection) -
                   weights_.rho_O * overlap_score(object, selection) -
                   weights_.rho_C() * change_score(object, selection[object]);
  assert(f <= weights_.rho_A + weights_.rho_S + 1e-9);
  assert(f >= -(weights_.rho_O * (object_count() - 1) + weights_.rho_C()) - 1e-9);
  return f;
}

double SceneScorer::graph_score(const std::vector<int>& selection) const {
  double total = 0.0;
  for (int i = 0; i < object_count(); ++i) {
    total += weights_.rho_T * view(i, selection[i]).temporal_weight +
             instantaneous_score(i, selection);
  }
  return total;
}

namespace {

// One run of iterated single-object improvement. Accepts strict
// improvements only, so it terminates without cycling.
SceneSelection improve(const SceneScorer& scorer, std::vector<int> selection,
                       const std::vector<int>& order, int max_sweeps) {
  double best = scorer.graph_score(selection);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool changed = false;
    for (int object : order) {
      for (int v = 0; v < scorer.view_count(object); ++v) {
        if (v == selection[object]) continue;
        std::vector<int> trial = selection;
        trial[object] = v;
        const double s = scorer.graph_score(trial);
        if (s > best) {
          best = s;
          selection = std::move(trial);
          changed = true;
        }
      }
    }
    if (!changed) break;
  }
  return SceneSelection{std::move(selection), best};
}

}  // namespace

SceneSelection greedy_optimize(const SceneScorer& scorer,
                               const std::vector<int>& guided_initial,
                               const std::vector<int>& guided_order,
                               int max_sweeps, int restarts, RandomStream& rng) {
  const int n = scorer.object_count();
  SceneSelection best = improve(scorer, guided_initial, guided_order, max_sweeps);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int run = 0; run < restarts; ++run) {
    std::vector<int> initial(n);
    for (int i = 0; i < n; ++i)
      initial[i] = static_cast<int>(rng.uniform_index(scorer.view_count(i)));
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.uniform_index(i + 1));
      std::swap(order[i], order[j]);
    }
    SceneSelection result = improve(scorer, initial, order, max_sweeps);
    if (result.score > best.score) best = std::move(result);
  }
  return best;
}

MultiObjectTracker::MultiObjectTracker(const TrackerConfig& config,
                                       const Frame& first_frame,
                                       const std::vector<BBox>& annotations)
    : config_(config) {
  config_.filter.validate();
  config_.weights.validate();
  if (config_.tau_score < 0.0 || config_.tau_score > 1.0 ||
      config_.tau_overlap < 0.0 || config_.tau_overlap > 1.0)
    throw std::invalid_argument("tracker: thresholds must be in [0, 1]");
  if (config_.max_sweeps <= 0 || config_.restarts < 0)
    throw std::invalid_argument("tracker: iteration limits must be positive");

  AdjacencyMatrix adjacency(config_.adjacency);
  const int n = adjacency.object_count();
  if (static_cast<int>(annotations.size()) != n)
    throw std::invalid_argument("tracker: first frame must annotate every object");

  std::vector<std::vector<int>> counts = config_.candidate_counts;
  if (counts.empty()) counts.assign(n, std::vector<int>(n, 0));
  budgets_ = CandidateMatrix(counts, adjacency);

  image_width_ = first_frame.width();
  image_height_ = first_frame.height();

  model_ = ModelGraph::init_from_annotations(annotations, first_frame, adjacency,
                                             config_.angle_spec,
                                             config_.distance_spec,
                                             config_.kernels);

  sets_.resize(n);
  next_tracker_id_.assign(n, 0);
  previous_selection_.assign(n, 0);
  box_widths_.resize(n);
  box_heights_.resize(n);
  last_states_.resize(n);
  for (int i = 0; i < n; ++i) {
    box_widths_[i] = annotations[i].width;
    box_heights_[i] = annotations[i].height;
    sets_[i].object_id = i;
    TrackerEntry entry = make_entry(i, annotations[i].center);
    previous_selection_[i] = entry.tracker_id;
    sets_[i].entries.push_back(std::move(entry));
    last_states_[i] = ObjectState{i, annotations[i], 1.0};
  }
}

TrackerEntry MultiObjectTracker::make_entry(int object_id, const Point2& center) {
  const int tracker_id = next_tracker_id_[object_id]++;
  RandomStream rng(derive_seed(config_.seed, 0xC10DULL,
                               static_cast<uint64_t>(object_id),
                               static_cast<uint64_t>(tracker_id)));
  ParticleCloud cloud(center, box_widths_[object_id], box_heights_[object_id],
                      model_.vertex_appearance(object_id), config_.filter, rng);
  TrackerEntry entry{tracker_id, std::move(cloud), 0.0, std::move(rng),
                     center, 0.0, 0.0};
  return entry;
}

std::vector<ObjectState> MultiObjectTracker::step(const Frame& frame) {
  if (frame.width() != image_width_ || frame.height() != image_height_)
    throw std::invalid_argument("step: frame dimensions changed mid-sequence");
  ++frame_;
  const HsvPlane plane(frame);
  const int n = object_count();

  // Structural candidates, generated from the current best references
  // before any cloud moves this frame.
  if (budgets_.total() > 0) {
    std::vector<Point2> references(n);
    for (int i = 0; i < n; ++i) {
      const auto& entries = sets_[i].entries;
      const auto best = std::max_element(
          entries.begin(), entries.end(),
          [](const TrackerEntry& a, const TrackerEntry& b) {
            return a.temporal_weight < b.temporal_weight;
          });
      references[i] = best->estimate;
    }
    std::vector<BBox> existing;
    for (const TrackerSet& set : sets_)
      for (const TrackerEntry& e : set.entries)
        existing.push_back(BBox{e.estimate, box_widths_[set.object_id],
                                box_heights_[set.object_id]});

    RandomStream cand_rng(derive_seed(config_.seed, 0xCA4DULL,
                                      static_cast<uint64_t>(frame_)));
    std::vector<Candidate> candidates =
        sample_candidates(model_, references, budgets_, config_.noise,
                          image_width_, cand_rng);
    candidates = filter_candidates(std::move(candidates), existing, box_widths_,
                                   box_heights_, model_, plane,
                                   config_.filter.sigma_b, config_.tau_overlap,
                                   config_.tau_score);
    for (const Candidate& c : candidates)
      sets_[c.object_id].entries.push_back(make_entry(c.object_id, c.position));
  }

  // Advance every cloud: resample, propagate, reweight, refresh caches.
  for (TrackerSet& set : sets_) {
    for (TrackerEntry& e : set.entries) {
      e.cloud.resample(e.rng);
      e.cloud.propagate(config_.filter, e.rng);
      e.cloud.reweight(plane, config_.filter);
      e.estimate = e.cloud.estimate_state();
      e.zeta = e.cloud.confidence();
      e.estimate_like = e.cloud.estimate_likelihood(plane, config_.filter);
    }
  }

  // Scoring views for this frame.
  std::vector<std::vector<TrackerView>> views(n);
  for (int i = 0; i < n; ++i) {
    for (const TrackerEntry& e : sets_[i].entries) {
      TrackerView v;
      v.tracker_id = e.tracker_id;
      v.temporal_weight = e.temporal_weight;
      v.zeta = e.zeta;
      v.position = e.estimate;
      v.box = BBox{e.estimate, box_widths_[i], box_heights_[i]};
      v.box_hist = try_extract_histogram(plane, v.box);
      views[i].push_back(std::move(v));
    }
  }
  SceneScorer scorer(views, model_, config_.weights, previous_selection_,
                     image_width_);

  // Score-guided initialization: last frame's selection, worst object first.
  std::vector<int> guided_initial(n, 0);
  std::vector<double> best_weight(n, 0.0);
  for (int i = 0; i < n; ++i) {
    int fallback = 0;
    double max_w = -std::numeric_limits<double>::infinity();
    int chosen = -1;
    for (int v = 0; v < static_cast<int>(views[i].size()); ++v) {
      if (views[i][v].temporal_weight > max_w) {
        max_w = views[i][v].temporal_weight;
        fallback = v;
      }
      if (views[i][v].tracker_id == previous_selection_[i]) chosen = v;
    }
    guided_initial[i] = chosen >= 0 ? chosen : fallback;
    best_weight[i] = max_w;
  }
  std::vector<int> guided_order(n);
  std::iota(guided_order.begin(), guided_order.end(), 0);
  std::stable_sort(guided_order.begin(), guided_order.end(),
                   [&](int a, int b) { return best_weight[a] < best_weight[b]; });

  RandomStream opt_rng(derive_seed(config_.seed, 0x0b7bULL,
                                   static_cast<uint64_t>(frame_)));
  const SceneSelection best =
      greedy_optimize(scorer, guided_initial, guided_order, config_.max_sweeps,
                      config_.restarts, opt_rng);

  // Commit: temporal weights for every tracker with the other objects
  // fixed at the best selection, then pruning, then the model update.
  for (int i = 0; i < n; ++i) {
    std::vector<int> selection = best.chosen;
    for (int v = 0; v < static_cast<int>(views[i].size()); ++v) {
      selection[i] = v;
      const double f = scorer.instantaneous_score(i, selection);
      sets_[i].entries[v].temporal_weight =
          config_.weights.rho_T * sets_[i].entries[v].temporal_weight + f;
    }
  }

  std::vector<ObjectState> out(n);
  std::vector<Point2> selected_positions(n);
  std::vector<double> selected_confidences(n);
  std::vector<int> selected_ids(n);
  for (int i = 0; i < n; ++i) {
    const TrackerEntry& e = sets_[i].entries[best.chosen[i]];
    out[i] = ObjectState{i, BBox{e.estimate, box_widths_[i], box_heights_[i]},
                         e.zeta};
    selected_positions[i] = e.estimate;
    selected_confidences[i] = e.estimate_like;
    selected_ids[i] = e.tracker_id;
  }

  for (TrackerSet& set : sets_) {
    auto& entries = set.entries;
    std::vector<TrackerEntry> kept;
    int best_idx = 0;
    for (int v = 1; v < static_cast<int>(entries.size()); ++v)
      if (entries[v].temporal_weight > entries[best_idx].temporal_weight)
        best_idx = v;
    for (int v = 0; v < static_cast<int>(entries.size()); ++v)
      if (entries[v].temporal_weight >= config_.tau_remove)
        kept.push_back(std::move(entries[v]));
    if (kept.empty()) kept.push_back(std::move(entries[best_idx]));
    entries = std::move(kept);
  }

  model_.update(selected_positions, selected_confidences, image_width_,
                config_.kernels);
  previous_selection_ = selected_ids;
  last_states_ = out;
  return out;
}

}  // namespace sgtrack
