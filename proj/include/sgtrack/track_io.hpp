#ifndef SGTRACK_TRACK_IO_HPP_
#define SGTRACK_TRACK_IO_HPP_

#include <string>
#include <vector>

#include "sgtrack/frame.hpp"
#include "sgtrack/metrics.hpp"

namespace sgtrack {

// CSV schema: header `frame,id,x,y,w,h[,conf]`, one record per line,
// box stored as top-left corner plus size.
std::vector<TrackRecord> read_track_csv(const std::string& path);
void write_track_csv(const std::string& path, const std::vector<TrackRecord>& records,
                     bool include_confidence);

// Rounds a value to centipixels so that %.2f output parses back exactly.
double quantize_centi(double v);

// Ordered frame access over a directory of images (zero-padded names) or a
// manifest file listing one image path per line. Frames load lazily and
// stay cached; mismatched dimensions and unreadable files are reported
// with the offending frame index.
class FrameSequence {
 public:
  explicit FrameSequence(const std::string& path);

  int frame_count() const { return static_cast<int>(paths_.size()); }
  const Frame& frame(int index);
  const std::string& frame_path(int index) const { return paths_[index]; }

 private:
  std::vector<std::string> paths_;
  std::vector<Frame> cache_;
  int width_ = 0;
  int height_ = 0;
};

}  // namespace sgtrack

#endif  // SGTRACK_TRACK_IO_HPP_
