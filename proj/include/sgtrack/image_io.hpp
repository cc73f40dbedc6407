#ifndef SGTRACK_IMAGE_IO_HPP_
#define SGTRACK_IMAGE_IO_HPP_

#include <array>
#include <string>

#include "sgtrack/frame.hpp"
#include "sgtrack/geometry.hpp"

namespace sgtrack {

Frame load_image(const std::string& path);
void save_image(const Frame& frame, const std::string& path);

// Box outline, clipped to the frame; only border pixels are touched.
void draw_box_outline(Frame& frame, const BBox& box,
                      const std::array<uint8_t, 3>& color, int thickness = 2);

// Stable per-object overlay color.
std::array<uint8_t, 3> object_color(int object_id);

}  // namespace sgtrack

#endif  // SGTRACK_IMAGE_IO_HPP_
