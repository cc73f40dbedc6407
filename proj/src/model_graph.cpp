#include "sgtrack/model_graph.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace sgtrack {

AdjacencyMatrix::AdjacencyMatrix(std::vector<std::vector<int>> rows)
    : rows_(std::move(rows)) {
  const size_t n = rows_.size();
  if (n == 0) throw std::invalid_argument("adjacency: empty matrix");
  int ones = 0;
  for (size_t i = 0; i < n; ++i) {
    if (rows_[i].size() != n)
      throw std::invalid_argument("adjacency: matrix must be square");
    for (size_t j = 0; j < n; ++j) {
      const int v = rows_[i][j];
      if (v != 0 && v != 1)
        throw std::invalid_argument("adjacency: entries must be 0 or 1");
      if (i == j && v != 0)
        throw std::invalid_argument("adjacency: diagonal must be zero");
      ones += v;
    }
  }
  if (ones == 0) throw std::invalid_argument("adjacency: no edges");
}

int AdjacencyMatrix::edge_count() const {
  int n = 0;
  for (const auto& row : rows_)
    for (int v : row) n += v;
  return n;
}

int AdjacencyMatrix::out_degree(int from) const {
  int n = 0;
  for (int v : rows_[from]) n += v;
  return n;
}

ModelGraph::ModelGraph(AdjacencyMatrix adjacency, const HistogramSpec& angle_spec,
                       const HistogramSpec& distance_spec)
    : adjacency_(std::move(adjacency)) {
  const int n = adjacency_.object_count();
  vertex_appearance_.resize(n);
  edge_index_.assign(static_cast<size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!adjacency_.edge(i, j)) continue;
      edge_index_[static_cast<size_t>(i) * n + j] = static_cast<int>(edges_.size());
      edges_.push_back(EdgeAttributes{
          i, j,
          AttributeHistogram(angle_spec.bins, angle_spec.min, angle_spec.max,
                             angle_spec.topology),
          AttributeHistogram(distance_spec.bins, distance_spec.min,
                             distance_spec.max, distance_spec.topology)});
    }
  }
}

ModelGraph ModelGraph::init_from_annotations(const std::vector<BBox>& boxes,
                                             const Frame& frame,
                                             AdjacencyMatrix adjacency,
                                             const HistogramSpec& angle_spec,
                                             const HistogramSpec& distance_spec,
                                             const KernelSet& kernels) {
  if (static_cast<int>(boxes.size()) != adjacency.object_count())
    throw std::invalid_argument("init_model: one annotation box per object required");
  ModelGraph model(std::move(adjacency), angle_spec, distance_spec);
  for (int i = 0; i < model.object_count(); ++i)
    model.vertex_appearance_[i] = extract_histogram(frame, boxes[i]);
  // First-frame annotations carry confidence 1.
  const Kernel& k = kernels.select(1.0);
  for (EdgeAttributes& e : model.edges_) {
    const EdgeMeasurement m = measure_edge(boxes[e.from].center,
                                           boxes[e.to].center, frame.width());
    e.angle.vote(m.angle, k);
    e.distance.vote(m.distance, k);
  }
  return model;
}

int ModelGraph::edge_index_at(int from, int to) const {
  const int n = adjacency_.object_count();
  if (from < 0 || from >= n || to < 0 || to >= n) return -1;
  return edge_index_[static_cast<size_t>(from) * n + to];
}

const ModelGraph::EdgeAttributes& ModelGraph::edge(int from, int to) const {
  const int idx = edge_index_at(from, to);
  if (idx < 0) throw std::invalid_argument("ModelGraph: no such edge");
  return edges_[idx];
}

ModelGraph::EdgeAttributes& ModelGraph::edge(int from, int to) {
  const int idx = edge_index_at(from, to);
  if (idx < 0) throw std::invalid_argument("ModelGraph: no such edge");
  return edges_[idx];
}

void ModelGraph::set_vertex_appearance(int object, ColorHistogram hist) {
  vertex_appearance_[object] = std::move(hist);
}

void ModelGraph::vote_edge(int from, int to, const EdgeMeasurement& m,
                           const Kernel& k) {
  EdgeAttributes& e = edge(from, to);
  e.angle.vote(m.angle, k);
  e.distance.vote(m.distance, k);
}

void ModelGraph::update(const std::vector<Point2>& selected_positions,
                        const std::vector<double>& confidences,
                        double image_width, const KernelSet& kernels) {
  if (static_cast<int>(selected_positions.size()) != object_count() ||
      static_cast<int>(confidences.size()) != object_count())
    throw std::invalid_argument("update_model: one position and confidence per object");
  for (EdgeAttributes& e : edges_) {
    const EdgeMeasurement m = measure_edge(selected_positions[e.from],
                                           selected_positions[e.to], image_width);
    const Kernel& k = kernels.select(confidences[e.from]);
    e.angle.vote(m.angle, k);
    e.distance.vote(m.distance, k);
  }
}

namespace {

void write_histogram(std::ostream& os, const char* label,
                     const AttributeHistogram& h) {
  os << label << "_range " << h.min() << ' ' << h.max() << '\n';
  os << label << "_topology "
     << (h.topology() == AttributeHistogram::Topology::kCircular ? "circular"
                                                                 : "bounded")
     << '\n';
  os << label << "_bins " << h.bin_count();
  for (int i = 0; i < h.bin_count(); ++i) os << ' ' << h.bin_mass(i);
  os << '\n';
}

AttributeHistogram read_histogram(std::istream& is, const std::string& label) {
  std::string key, topology_name;
  double min = 0.0, max = 0.0;
  if (!(is >> key >> min >> max) || key != label + "_range")
    throw std::runtime_error("model parse: expected " + label + "_range");
  if (!(is >> key >> topology_name) || key != label + "_topology")
    throw std::runtime_error("model parse: expected " + label + "_topology");
  int bins = 0;
  if (!(is >> key >> bins) || key != label + "_bins" || bins <= 0)
    throw std::runtime_error("model parse: expected " + label + "_bins");
  AttributeHistogram h(bins, min, max,
                       topology_name == "circular"
                           ? AttributeHistogram::Topology::kCircular
                           : AttributeHistogram::Topology::kBounded);
  for (int i = 0; i < bins; ++i) {
    double mass = 0.0;
    if (!(is >> mass)) throw std::runtime_error("model parse: truncated bins");
    h.set_bin_mass(i, mass);
  }
  return h;
}

}  // namespace

void ModelGraph::serialize(std::ostream& os) const {
  os.precision(17);
  const int n = object_count();
  os << "sgtrack_model 1\n";
  os << "objects " << n << '\n';
  os << "adjacency\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) os << (j ? " " : "") << (adjacency_.edge(i, j) ? 1 : 0);
    os << '\n';
  }
  for (int i = 0; i < n; ++i) {
    os << "vertex " << i;
    for (int b = 0; b < ColorHistogram::kBins; ++b)
      os << ' ' << vertex_appearance_[i][b];
    os << '\n';
  }
  for (const EdgeAttributes& e : edges_) {
    os << "edge " << e.from << ' ' << e.to << '\n';
    write_histogram(os, "angle", e.angle);
    write_histogram(os, "distance", e.distance);
  }
}

ModelGraph ModelGraph::deserialize(std::istream& is) {
  std::string key;
  int version = 0;
  if (!(is >> key >> version) || key != "sgtrack_model" || version != 1)
    throw std::runtime_error("model parse: bad header");
  int n = 0;
  if (!(is >> key >> n) || key != "objects" || n <= 0)
    throw std::runtime_error("model parse: bad object count");
  if (!(is >> key) || key != "adjacency")
    throw std::runtime_error("model parse: expected adjacency");
  std::vector<std::vector<int>> rows(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (!(is >> rows[i][j])) throw std::runtime_error("model parse: truncated adjacency");

  ModelGraph model(AdjacencyMatrix(std::move(rows)), default_angle_spec(),
                   default_distance_spec());
  model.edges_.clear();
  model.edge_index_.assign(static_cast<size_t>(n) * n, -1);

  for (int i = 0; i < n; ++i) {
    int idx = -1;
    if (!(is >> key >> idx) || key != "vertex" || idx != i)
      throw std::runtime_error("model parse: expected vertex block");
    for (int b = 0; b < ColorHistogram::kBins; ++b)
      if (!(is >> model.vertex_appearance_[i][b]))
        throw std::runtime_error("model parse: truncated vertex histogram");
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!model.adjacency_.edge(i, j)) continue;
      int from = -1, to = -1;
      if (!(is >> key >> from >> to) || key != "edge" || from != i || to != j)
        throw std::runtime_error("model parse: expected edge block");
      AttributeHistogram angle = read_histogram(is, "angle");
      AttributeHistogram distance = read_histogram(is, "distance");
      model.edge_index_[static_cast<size_t>(i) * n + j] =
          static_cast<int>(model.edges_.size());
      model.edges_.push_back(EdgeAttributes{i, j, std::move(angle), std::move(distance)});
    }
  }
  return model;
}

}  // namespace sgtrack
