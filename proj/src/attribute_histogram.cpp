#include "sgtrack/attribute_histogram.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace sgtrack {

Kernel::Kernel(std::vector<double> taps) : taps_(std::move(taps)) {
  if (taps_.empty() || taps_.size() % 2 == 0)
    throw std::invalid_argument("Kernel: tap count must be odd");
  double sum = 0.0;
  for (double t : taps_) {
    if (t < 0.0) throw std::invalid_argument("Kernel: negative tap");
    sum += t;
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("Kernel: taps must sum to 1");
}

Kernel Kernel::from_hundredths(std::vector<int> hundredths) {
  std::vector<double> taps(hundredths.size());
  for (size_t i = 0; i < hundredths.size(); ++i) taps[i] = hundredths[i] / 100.0;
  Kernel k(std::move(taps));
  k.hundredths_ = std::move(hundredths);
  return k;
}

bool Kernel::sums_to_one_exactly() const {
  if (!hundredths_.empty())
    return std::accumulate(hundredths_.begin(), hundredths_.end(), 0) == 100;
  double sum = 0.0;
  for (double t : taps_) sum += t;
  return sum == 1.0;
}

const Kernel& Kernel::high_confidence() {
  static const Kernel k = Kernel::from_hundredths({30, 40, 30});
  return k;
}

const Kernel& Kernel::mid_confidence() {
  static const Kernel k = Kernel::from_hundredths({15, 20, 30, 20, 15});
  return k;
}

const Kernel& Kernel::low_confidence() {
  static const Kernel k = Kernel::from_hundredths({10, 13, 17, 20, 17, 13, 10});
  return k;
}

const Kernel& select_kernel(double confidence) {
  if (confidence > 0.7) return Kernel::high_confidence();
  if (confidence > 0.3) return Kernel::mid_confidence();
  return Kernel::low_confidence();
}

AttributeHistogram::AttributeHistogram(int bins, double min, double max,
                                       Topology topology)
    : bins_(bins, 0.0), min_(min), max_(max), topology_(topology) {
  if (bins <= 0)
    throw std::invalid_argument("AttributeHistogram: bin count must be positive");
  if (!(max > min))
    throw std::invalid_argument("AttributeHistogram: empty range");
}

int AttributeHistogram::bin_index(double value) const {
  const int n = bin_count();
  int i = static_cast<int>(std::floor((value - min_) / (max_ - min_) * n));
  if (i < 0) i = 0;
  if (i > n - 1) i = n - 1;
  return i;
}

double AttributeHistogram::bin_center(int index) const {
  return min_ + (index + 0.5) * (max_ - min_) / bin_count();
}

double AttributeHistogram::total_mass() const {
  double s = 0.0;
  for (double b : bins_) s += b;
  return s;
}

void AttributeHistogram::vote(double value, const Kernel& kernel) {
  if (std::isnan(value))
    throw std::invalid_argument("AttributeHistogram: NaN vote");
  const int n = bin_count();
  const int center = bin_index(value);
  const int radius = kernel.radius();
  const auto& taps = kernel.taps();
  for (int t = -radius; t <= radius; ++t) {
    int i = center + t;
    if (topology_ == Topology::kCircular) {
      i = ((i % n) + n) % n;
    } else {
      if (i < 0) i = 0;
      if (i > n - 1) i = n - 1;
    }
    bins_[i] += taps[t + radius];
  }
}

double AttributeHistogram::lookup_likelihood(double value) const {
  double max_mass = 0.0;
  for (double b : bins_) max_mass = std::max(max_mass, b);
  if (max_mass <= 0.0)
    throw std::invalid_argument("AttributeHistogram: lookup on empty histogram");
  return bins_[bin_index(value)] / max_mass;
}

double AttributeHistogram::sample(RandomStream& rng) const {
  const double total = total_mass();
  if (total <= 0.0)
    throw std::invalid_argument("AttributeHistogram: sample from empty histogram");
  const double u = rng.uniform01() * total;
  double cumulative = 0.0;
  for (int i = 0; i < bin_count(); ++i) {
    cumulative += bins_[i];
    if (u < cumulative) return bin_center(i);
  }
  return bin_center(bin_count() - 1);
}

}  // namespace sgtrack
