#include "sgtrack/image_io.hpp"

#include <cmath>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "sgtrack/errors.hpp"

namespace sgtrack {

Frame load_image(const std::string& path) {
  cv::Mat bgr = cv::imread(path, cv::IMREAD_COLOR);
  if (bgr.empty()) throw io_error(path + ": unreadable image");
  Frame frame(bgr.cols, bgr.rows);
  for (int y = 0; y < bgr.rows; ++y) {
    const cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < bgr.cols; ++x)
      frame.set_pixel(x, y, row[x][2], row[x][1], row[x][0]);
  }
  return frame;
}

void save_image(const Frame& frame, const std::string& path) {
  cv::Mat bgr(frame.height(), frame.width(), CV_8UC3);
  for (int y = 0; y < frame.height(); ++y) {
    cv::Vec3b* row = bgr.ptr<cv::Vec3b>(y);
    for (int x = 0; x < frame.width(); ++x) {
      const uint8_t* p = frame.pixel(x, y);
      row[x] = cv::Vec3b(p[2], p[1], p[0]);
    }
  }
  if (!cv::imwrite(path, bgr)) throw io_error(path + ": cannot write image");
}

void draw_box_outline(Frame& frame, const BBox& box,
                      const std::array<uint8_t, 3>& color, int thickness) {
  const int x0 = static_cast<int>(std::lround(box.left()));
  const int y0 = static_cast<int>(std::lround(box.top()));
  const int x1 = static_cast<int>(std::lround(box.right()));
  const int y1 = static_cast<int>(std::lround(box.bottom()));
  auto put = [&](int x, int y) {
    if (x >= 0 && x < frame.width() && y >= 0 && y < frame.height())
      frame.set_pixel(x, y, color[0], color[1], color[2]);
  };
  for (int t = 0; t < thickness; ++t) {
    for (int x = x0; x <= x1; ++x) {
      put(x, y0 + t);
      put(x, y1 - t);
    }
    for (int y = y0; y <= y1; ++y) {
      put(x0 + t, y);
      put(x1 - t, y);
    }
  }
}

std::array<uint8_t, 3> object_color(int object_id) {
  // Golden-angle hue walk keeps nearby ids visually distinct.
  const double h = std::fmod(object_id * 0.618033988749895, 1.0) * 6.0;
  const int i = static_cast<int>(h);
  const double f = h - i;
  const uint8_t q = static_cast<uint8_t>(255 * (1.0 - f));
  const uint8_t t = static_cast<uint8_t>(255 * f);
  switch (i % 6) {
    case 0: return {255, t, 0};
    case 1: return {q, 255, 0};
    case 2: return {0, 255, t};
    case 3: return {0, q, 255};
    case 4: return {t, 0, 255};
    default: return {255, 0, q};
  }
}

}  // namespace sgtrack
