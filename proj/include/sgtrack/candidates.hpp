#ifndef SGTRACK_CANDIDATES_HPP_
#define SGTRACK_CANDIDATES_HPP_

#include <vector>

#include "sgtrack/model_graph.hpp"
#include "sgtrack/particle_filter.hpp"

namespace sgtrack {

// Non-negative candidate budgets: entry (i, j) is the number of hypotheses
// object i generates for object j when used as reference. Nonzero entries
// require a model edge (i, j).
class CandidateMatrix {
 public:
  CandidateMatrix() = default;
  CandidateMatrix(std::vector<std::vector<int>> rows, const AdjacencyMatrix& adjacency);

  int object_count() const { return static_cast<int>(rows_.size()); }
  int count(int from, int to) const { return rows_[from][to]; }
  int total() const;
  const std::vector<std::vector<int>>& rows() const { return rows_; }

 private:
  std::vector<std::vector<int>> rows_;
};

struct Candidate {
  int object_id = -1;
  Point2 position;
  int source_object = -1;
  double appearance_score = 0.0;  // filled by filter_candidates
};

struct CandidateNoise {
  double sigma_theta = M_PI / 18.0;  // half an angle bin
  double sigma_d = 0.02;             // half a distance bin
};

// Draws structural position hypotheses from the model's edge histograms:
// a (theta, d) pair sampled per candidate, Gaussian-perturbed, then placed
// relative to the reference object (distance denormalized by image width).
std::vector<Candidate> sample_candidates(const ModelGraph& model,
                                         const std::vector<Point2>& reference_positions,
                                         const CandidateMatrix& budgets,
                                         const CandidateNoise& noise,
                                         double image_width, RandomStream& rng);

// Drops candidates that overlap an existing tracker box beyond tau_O,
// then those whose appearance likelihood against their object's reference
// histogram is below tau_S. Out-of-frame candidates are dropped as
// unscoreable. Survivors carry their appearance scores.
std::vector<Candidate> filter_candidates(std::vector<Candidate> candidates,
                                         const std::vector<BBox>& existing_boxes,
                                         const std::vector<double>& box_sizes_w,
                                         const std::vector<double>& box_sizes_h,
                                         const ModelGraph& model,
                                         const HsvPlane& frame, double sigma_b,
                                         double tau_overlap, double tau_score);

}  // namespace sgtrack

#endif  // SGTRACK_CANDIDATES_HPP_
