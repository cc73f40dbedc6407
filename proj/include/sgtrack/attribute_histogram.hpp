#ifndef SGTRACK_ATTRIBUTE_HISTOGRAM_HPP_
#define SGTRACK_ATTRIBUTE_HISTOGRAM_HPP_

#include <vector>

#include "sgtrack/random.hpp"

namespace sgtrack {

// Unit-mass convolution kernel used to smear attribute votes. The built-in
// kernels are exact hundredths, so their mathematical sum is exactly 1 even
// though the individual taps are not exactly representable in binary.
class Kernel {
 public:
  explicit Kernel(std::vector<double> taps);

  static Kernel from_hundredths(std::vector<int> hundredths);

  // Confidence-selected kernels: tight when the tracking result is
  // trusted, wide when it is not.
  static const Kernel& high_confidence();  // [0.3, 0.4, 0.3]
  static const Kernel& mid_confidence();   // [0.15, 0.2, 0.3, 0.2, 0.15]
  static const Kernel& low_confidence();   // [0.1, 0.13, 0.17, 0.2, 0.17, 0.13, 0.1]

  const std::vector<double>& taps() const { return taps_; }
  int radius() const { return (static_cast<int>(taps_.size()) - 1) / 2; }

  // True when the tap sum equals 1 in exact arithmetic (integer hundredths)
  // or exactly 1.0 in floating point.
  bool sums_to_one_exactly() const;

 private:
  std::vector<double> taps_;
  std::vector<int> hundredths_;  // empty unless built from hundredths
};

// Select the vote kernel from the tracking confidence of the result that
// produced the measurement.
const Kernel& select_kernel(double confidence);

// The three confidence tiers as a configurable bundle.
struct KernelSet {
  Kernel high;
  Kernel mid;
  Kernel low;

  static KernelSet defaults() {
    return {Kernel::high_confidence(), Kernel::mid_confidence(),
            Kernel::low_confidence()};
  }

  const Kernel& select(double confidence) const {
    if (confidence > 0.7) return high;
    if (confidence > 0.3) return mid;
    return low;
  }
};

// Fixed-range binned PDF estimate for one edge attribute. Circular
// topology wraps kernel taps around the bin ring (angles); bounded
// topology clamps out-of-range taps into the terminal bins (distances),
// so every vote deposits exactly unit mass either way.
class AttributeHistogram {
 public:
  enum class Topology { kCircular, kBounded };

  AttributeHistogram(int bins, double min, double max, Topology topology);

  int bin_count() const { return static_cast<int>(bins_.size()); }
  double min() const { return min_; }
  double max() const { return max_; }
  Topology topology() const { return topology_; }
  double bin_mass(int i) const { return bins_[i]; }
  double total_mass() const;

  int bin_index(double value) const;
  double bin_center(int index) const;

  // Direct bin assignment, for deserialization.
  void set_bin_mass(int index, double mass) { bins_[index] = mass; }

  void vote(double value, const Kernel& kernel);

  // Mass of the bin containing `value`, normalized by the maximum bin mass
  // so the modal observation scores 1.
  double lookup_likelihood(double value) const;

  // Center of a bin drawn proportionally to bin mass.
  double sample(RandomStream& rng) const;

 private:
  std::vector<double> bins_;
  double min_;
  double max_;
  Topology topology_;
};

}  // namespace sgtrack

#endif  // SGTRACK_ATTRIBUTE_HISTOGRAM_HPP_
