#ifndef SGTRACK_COLOR_HISTOGRAM_HPP_
#define SGTRACK_COLOR_HISTOGRAM_HPP_

#include <array>
#include <optional>

#include "sgtrack/frame.hpp"
#include "sgtrack/geometry.hpp"

namespace sgtrack {

// HSV appearance descriptor: a 10x10 Hue x Saturation grid followed by 10
// Value bins. Pixels whose saturation and value clear the chromatic
// thresholds vote into the HS grid; the rest vote into the Value bins.
class ColorHistogram {
 public:
  static constexpr int kHueBins = 10;
  static constexpr int kSatBins = 10;
  static constexpr int kValBins = 10;
  static constexpr int kBins = kHueBins * kSatBins + kValBins;  // 110

  static constexpr float kSaturationThreshold = 0.1f;
  static constexpr float kValueThreshold = 0.2f;

  ColorHistogram() { bins_.fill(0.0); }

  double& operator[](int i) { return bins_[i]; }
  double operator[](int i) const { return bins_[i]; }
  int size() const { return kBins; }

  double sum() const;
  bool is_normalized(double tol = 1e-9) const;
  void normalize();

  void add_pixel(const Hsv& px);

  static int bin_of(const Hsv& px);

 private:
  std::array<double, kBins> bins_;
};

// Histogram over the pixels of `box` clipped to the frame. Throws
// std::invalid_argument when the clipped region is empty.
ColorHistogram extract_histogram(const Frame& frame, const BBox& box);
ColorHistogram extract_histogram(const HsvPlane& plane, const BBox& box);

// Same, but an out-of-frame box yields nullopt instead of throwing.
std::optional<ColorHistogram> try_extract_histogram(const HsvPlane& plane,
                                                    const BBox& box);

// Bhattacharyya distance between two normalized histograms, in [0, 1].
double bhattacharyya(const ColorHistogram& h1, const ColorHistogram& h2);

// Appearance likelihood exp(-d_B^2 / (2 sigma_b^2)), in (0, 1].
double likelihood(const ColorHistogram& h_model, const ColorHistogram& h_obs,
                  double sigma_b);
double likelihood_from_distance(double d_b, double sigma_b);

}  // namespace sgtrack

#endif  // SGTRACK_COLOR_HISTOGRAM_HPP_
