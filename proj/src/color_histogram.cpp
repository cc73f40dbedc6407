#include "sgtrack/color_histogram.hpp"

#include <cmath>
#include <stdexcept>

namespace sgtrack {

double ColorHistogram::sum() const {
  double s = 0.0;
  for (double b : bins_) s += b;
  return s;
}

bool ColorHistogram::is_normalized(double tol) const {
  return std::fabs(sum() - 1.0) <= tol;
}

void ColorHistogram::normalize() {
  const double s = sum();
  if (s <= 0.0) throw std::invalid_argument("ColorHistogram: empty histogram");
  for (double& b : bins_) b /= s;
}

int ColorHistogram::bin_of(const Hsv& px) {
  if (px.s > kSaturationThreshold && px.v > kValueThreshold) {
    int h = static_cast<int>(px.h * kHueBins);
    int s = static_cast<int>(px.s * kSatBins);
    if (h > kHueBins - 1) h = kHueBins - 1;
    if (s > kSatBins - 1) s = kSatBins - 1;
    return h * kSatBins + s;
  }
  int v = static_cast<int>(px.v * kValBins);
  if (v > kValBins - 1) v = kValBins - 1;
  return kHueBins * kSatBins + v;
}

void ColorHistogram::add_pixel(const Hsv& px) { bins_[bin_of(px)] += 1.0; }

namespace {

struct PixelRect {
  int x0, y0, x1, y1;  // half-open
  bool empty() const { return x0 >= x1 || y0 >= y1; }
};

// A pixel belongs to the box when its center does; an integer-sized box
// then always covers exactly width x height pixels wherever it sits.
PixelRect clip_box(const BBox& box, int width, int height) {
  int x0 = static_cast<int>(std::ceil(box.left() - 0.5));
  int y0 = static_cast<int>(std::ceil(box.top() - 0.5));
  int x1 = static_cast<int>(std::ceil(box.right() - 0.5));
  int y1 = static_cast<int>(std::ceil(box.bottom() - 0.5));
  x0 = std::max(x0, 0);
  y0 = std::max(y0, 0);
  x1 = std::min(x1, width);
  y1 = std::min(y1, height);
  return {x0, y0, x1, y1};
}

template <typename HsvAt>
ColorHistogram extract_rect(const PixelRect& r, HsvAt&& hsv_at) {
  ColorHistogram hist;
  for (int y = r.y0; y < r.y1; ++y)
    for (int x = r.x0; x < r.x1; ++x) hist.add_pixel(hsv_at(x, y));
  hist.normalize();
  return hist;
}

}  // namespace

ColorHistogram extract_histogram(const Frame& frame, const BBox& box) {
  const PixelRect r = clip_box(box, frame.width(), frame.height());
  if (r.empty())
    throw std::invalid_argument("extract_histogram: box outside frame");
  return extract_rect(r, [&](int x, int y) { return frame.hsv(x, y); });
}

ColorHistogram extract_histogram(const HsvPlane& plane, const BBox& box) {
  const PixelRect r = clip_box(box, plane.width(), plane.height());
  if (r.empty())
    throw std::invalid_argument("extract_histogram: box outside frame");
  return extract_rect(r, [&](int x, int y) { return plane.at(x, y); });
}

std::optional<ColorHistogram> try_extract_histogram(const HsvPlane& plane,
                                                    const BBox& box) {
  const PixelRect r = clip_box(box, plane.width(), plane.height());
  if (r.empty()) return std::nullopt;
  return extract_rect(r, [&](int x, int y) { return plane.at(x, y); });
}

double bhattacharyya(const ColorHistogram& h1, const ColorHistogram& h2) {
  if (!h1.is_normalized() || !h2.is_normalized())
    throw std::invalid_argument("bhattacharyya: histograms must be normalized");
  double coeff = 0.0;
  for (int i = 0; i < ColorHistogram::kBins; ++i)
    coeff += std::sqrt(h1[i] * h2[i]);
  double d2 = 1.0 - coeff;
  if (d2 < 0.0) d2 = 0.0;  // floating-point drift
  double d = std::sqrt(d2);
  if (d > 1.0) d = 1.0;
  return d;
}

double likelihood_from_distance(double d_b, double sigma_b) {
  if (sigma_b <= 0.0)
    throw std::invalid_argument("likelihood: sigma_b must be positive");
  return std::exp(-(d_b * d_b) / (2.0 * sigma_b * sigma_b));
}

double likelihood(const ColorHistogram& h_model, const ColorHistogram& h_obs,
                  double sigma_b) {
  return likelihood_from_distance(bhattacharyya(h_model, h_obs), sigma_b);
}

}  // namespace sgtrack
