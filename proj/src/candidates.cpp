#include "sgtrack/candidates.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace sgtrack {

CandidateMatrix::CandidateMatrix(std::vector<std::vector<int>> rows,
                                 const AdjacencyMatrix& adjacency)
    : rows_(std::move(rows)) {
  const size_t n = rows_.size();
  if (static_cast<int>(n) != adjacency.object_count())
    throw std::invalid_argument("candidate matrix: size must match adjacency");
  for (size_t i = 0; i < n; ++i) {
    if (rows_[i].size() != n)
      throw std::invalid_argument("candidate matrix: matrix must be square");
    for (size_t j = 0; j < n; ++j) {
      if (rows_[i][j] < 0)
        throw std::invalid_argument("candidate matrix: counts must be non-negative");
      if (i == j && rows_[i][j] != 0)
        throw std::invalid_argument("candidate matrix: diagonal must be zero");
      if (rows_[i][j] > 0 && !adjacency.edge(static_cast<int>(i), static_cast<int>(j)))
        throw std::invalid_argument("candidate matrix: count on a missing edge");
    }
  }
}

int CandidateMatrix::total() const {
  int n = 0;
  for (const auto& row : rows_)
    for (int v : row) n += v;
  return n;
}

std::vector<Candidate> sample_candidates(const ModelGraph& model,
                                         const std::vector<Point2>& reference_positions,
                                         const CandidateMatrix& budgets,
                                         const CandidateNoise& noise,
                                         double image_width, RandomStream& rng) {
  if (static_cast<int>(reference_positions.size()) != model.object_count())
    throw std::invalid_argument("sample_candidates: one reference per object required");
  std::vector<Candidate> out;
  const int n = model.object_count();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int budget = budgets.count(i, j);
      if (budget <= 0) continue;
      const auto& e = model.edge(i, j);
      if (e.angle.total_mass() <= 0.0 || e.distance.total_mass() <= 0.0) {
        std::fprintf(stderr, "sgtrack: edge (%d,%d) has no votes, skipping %d candidates\n",
                     i, j, budget);
        continue;
      }
      for (int k = 0; k < budget; ++k) {
        const double theta = e.angle.sample(rng) + rng.gaussian(0.0, noise.sigma_theta);
        double d = e.distance.sample(rng) + rng.gaussian(0.0, noise.sigma_d);
        if (d < 0.0) d = 0.0;
        Candidate c;
        c.object_id = j;
        c.source_object = i;
        c.position.x = reference_positions[i].x + d * image_width * std::cos(theta);
        c.position.y = reference_positions[i].y + d * image_width * std::sin(theta);
        out.push_back(c);
      }
    }
  }
  return out;
}

std::vector<Candidate> filter_candidates(std::vector<Candidate> candidates,
                                         const std::vector<BBox>& existing_boxes,
                                         const std::vector<double>& box_sizes_w,
                                         const std::vector<double>& box_sizes_h,
                                         const ModelGraph& model,
                                         const HsvPlane& frame, double sigma_b,
                                         double tau_overlap, double tau_score) {
  std::vector<Candidate> out;
  for (Candidate& c : candidates) {
    const BBox box{c.position, box_sizes_w[c.object_id], box_sizes_h[c.object_id]};

    bool overlaps_existing = false;
    for (const BBox& other : existing_boxes) {
      if (overlap_ratio(box, other) > tau_overlap) {
        overlaps_existing = true;
        break;
      }
    }
    if (overlaps_existing) continue;

    const auto obs = try_extract_histogram(frame, box);
    if (!obs) continue;  // entirely outside the frame
    const double score = likelihood(model.vertex_appearance(c.object_id), *obs, sigma_b);
    if (score < tau_score) continue;

    c.appearance_score = score;
    out.push_back(c);
  }
  return out;
}

}  // namespace sgtrack
