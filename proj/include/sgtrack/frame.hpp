#ifndef SGTRACK_FRAME_HPP_
#define SGTRACK_FRAME_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sgtrack {

struct Hsv {
  float h;  // [0, 1)
  float s;  // [0, 1]
  float v;  // [0, 1]
};

inline Hsv rgb_to_hsv(uint8_t r8, uint8_t g8, uint8_t b8) {
  const float r = r8 / 255.0f;
  const float g = g8 / 255.0f;
  const float b = b8 / 255.0f;
  const float mx = std::max(r, std::max(g, b));
  const float mn = std::min(r, std::min(g, b));
  const float delta = mx - mn;
  Hsv out;
  out.v = mx;
  out.s = mx > 0.0f ? delta / mx : 0.0f;
  if (delta <= 0.0f) {
    out.h = 0.0f;
    return out;
  }
  float h;
  if (mx == r)
    h = (g - b) / delta;
  else if (mx == g)
    h = (b - r) / delta + 2.0f;
  else
    h = (r - g) / delta + 4.0f;
  h /= 6.0f;
  if (h < 0.0f) h += 1.0f;
  if (h >= 1.0f) h -= 1.0f;
  out.h = h;
  return out;
}

// Row-major RGB8 image.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height)
      : width_(width), height_(height),
        rgb_(static_cast<size_t>(width) * height * 3, 0) {
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("Frame: dimensions must be positive");
  }
  Frame(int width, int height, std::vector<uint8_t> rgb)
      : width_(width), height_(height), rgb_(std::move(rgb)) {
    if (width <= 0 || height <= 0)
      throw std::invalid_argument("Frame: dimensions must be positive");
    if (rgb_.size() != static_cast<size_t>(width) * height * 3)
      throw std::invalid_argument("Frame: buffer size mismatch");
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return rgb_.empty(); }

  const uint8_t* data() const { return rgb_.data(); }
  uint8_t* data() { return rgb_.data(); }
  size_t size_bytes() const { return rgb_.size(); }

  const uint8_t* pixel(int x, int y) const {
    return rgb_.data() + (static_cast<size_t>(y) * width_ + x) * 3;
  }

  void set_pixel(int x, int y, uint8_t r, uint8_t g, uint8_t b) {
    uint8_t* p = rgb_.data() + (static_cast<size_t>(y) * width_ + x) * 3;
    p[0] = r;
    p[1] = g;
    p[2] = b;
  }

  Hsv hsv(int x, int y) const {
    const uint8_t* p = pixel(x, y);
    return rgb_to_hsv(p[0], p[1], p[2]);
  }

  bool operator==(const Frame& other) const {
    return width_ == other.width_ && height_ == other.height_ && rgb_ == other.rgb_;
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<uint8_t> rgb_;
};

// Precomputed HSV plane for a frame; pays off when the same frame is
// sampled by hundreds of particle boxes.
class HsvPlane {
 public:
  explicit HsvPlane(const Frame& frame)
      : width_(frame.width()), height_(frame.height()),
        values_(static_cast<size_t>(width_) * height_) {
    for (int y = 0; y < height_; ++y)
      for (int x = 0; x < width_; ++x)
        values_[static_cast<size_t>(y) * width_ + x] = frame.hsv(x, y);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  const Hsv& at(int x, int y) const {
    return values_[static_cast<size_t>(y) * width_ + x];
  }

 private:
  int width_;
  int height_;
  std::vector<Hsv> values_;
};

}  // namespace sgtrack

#endif  // SGTRACK_FRAME_HPP_
