#ifndef SGTRACK_MODEL_GRAPH_HPP_
#define SGTRACK_MODEL_GRAPH_HPP_

#include <iosfwd>
#include <vector>

#include "sgtrack/attribute_histogram.hpp"
#include "sgtrack/color_histogram.hpp"
#include "sgtrack/frame.hpp"
#include "sgtrack/geometry.hpp"

namespace sgtrack {

// Binary directed adjacency with zero diagonal.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(std::vector<std::vector<int>> rows);

  int object_count() const { return static_cast<int>(rows_.size()); }
  bool edge(int from, int to) const { return rows_[from][to] != 0; }
  int edge_count() const;
  int out_degree(int from) const;
  const std::vector<std::vector<int>>& rows() const { return rows_; }

 private:
  std::vector<std::vector<int>> rows_;
};

struct HistogramSpec {
  int bins;
  double min;
  double max;
  AttributeHistogram::Topology topology;
};

inline HistogramSpec default_angle_spec() {
  return {18, 0.0, 2.0 * M_PI, AttributeHistogram::Topology::kCircular};
}
inline HistogramSpec default_distance_spec() {
  return {25, 0.0, 1.0, AttributeHistogram::Topology::kBounded};
}

// Attributed relational graph learned online: vertices hold reference
// appearance histograms, edges hold angle/distance PDFs estimated by
// confidence-weighted histogram votes.
class ModelGraph {
 public:
  struct EdgeAttributes {
    int from;
    int to;
    AttributeHistogram angle;
    AttributeHistogram distance;
  };

  ModelGraph() = default;
  ModelGraph(AdjacencyMatrix adjacency, const HistogramSpec& angle_spec,
             const HistogramSpec& distance_spec);

  // Learns vertex appearance from the first-frame boxes and casts one
  // confidence-1 vote per edge from the measured first-frame structure.
  static ModelGraph init_from_annotations(const std::vector<BBox>& boxes,
                                          const Frame& frame,
                                          AdjacencyMatrix adjacency,
                                          const HistogramSpec& angle_spec,
                                          const HistogramSpec& distance_spec,
                                          const KernelSet& kernels = KernelSet::defaults());

  const AdjacencyMatrix& adjacency() const { return adjacency_; }
  int object_count() const { return adjacency_.object_count(); }

  bool has_edge(int from, int to) const { return edge_index_at(from, to) >= 0; }
  const EdgeAttributes& edge(int from, int to) const;
  EdgeAttributes& edge(int from, int to);
  const std::vector<EdgeAttributes>& edges() const { return edges_; }
  std::vector<EdgeAttributes>& edges() { return edges_; }

  const ColorHistogram& vertex_appearance(int object) const {
    return vertex_appearance_[object];
  }
  void set_vertex_appearance(int object, ColorHistogram hist);

  // One vote per edge from the selected positions, kernel chosen by the
  // confidence of the edge's origin object.
  void update(const std::vector<Point2>& selected_positions,
              const std::vector<double>& confidences, double image_width,
              const KernelSet& kernels = KernelSet::defaults());

  void vote_edge(int from, int to, const EdgeMeasurement& m, const Kernel& k);

  void serialize(std::ostream& os) const;
  static ModelGraph deserialize(std::istream& is);

 private:
  int edge_index_at(int from, int to) const;

  AdjacencyMatrix adjacency_;
  std::vector<ColorHistogram> vertex_appearance_;
  std::vector<EdgeAttributes> edges_;
  std::vector<int> edge_index_;  // object_count^2 lookup, -1 where no edge
};

}  // namespace sgtrack

#endif  // SGTRACK_MODEL_GRAPH_HPP_
