#include "sgtrack/track_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sgtrack/errors.hpp"
#include "sgtrack/image_io.hpp"

namespace fs = std::filesystem;

namespace sgtrack {

double quantize_centi(double v) { return std::round(v * 100.0) / 100.0; }

std::vector<TrackRecord> read_track_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw io_error(path + ": cannot open file");
  std::vector<TrackRecord> records;
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!saw_header) {
      if (line.rfind("frame", 0) != 0)
        throw io_error(path + ":" + std::to_string(line_no) +
                       ": expected header starting with 'frame'");
      saw_header = true;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 6 && fields.size() != 7)
      throw io_error(path + ":" + std::to_string(line_no) +
                     ": expected 6 or 7 comma-separated fields, got " +
                     std::to_string(fields.size()));
    TrackRecord r;
    try {
      r.frame = std::stoi(fields[0]);
      r.object_id = std::stoi(fields[1]);
      const double x = std::stod(fields[2]);
      const double y = std::stod(fields[3]);
      const double w = std::stod(fields[4]);
      const double h = std::stod(fields[5]);
      if (w <= 0.0 || h <= 0.0) throw std::invalid_argument("non-positive box size");
      r.box = BBox::from_top_left(x, y, w, h);
      r.confidence = fields.size() == 7 ? std::stod(fields[6]) : 1.0;
    } catch (const std::exception& e) {
      throw io_error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
    if (r.frame < 0)
      throw io_error(path + ":" + std::to_string(line_no) + ": negative frame id");
    records.push_back(r);
  }
  if (!saw_header) throw io_error(path + ": empty file");
  return records;
}

void write_track_csv(const std::string& path, const std::vector<TrackRecord>& records,
                     bool include_confidence) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw io_error(path + ": cannot write file");
  os << (include_confidence ? "frame,id,x,y,w,h,conf\n" : "frame,id,x,y,w,h\n");
  char buf[160];
  for (const TrackRecord& r : records) {
    if (include_confidence) {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.2f,%.2f,%.2f,%.2f,%.4f\n", r.frame,
                    r.object_id, r.box.left(), r.box.top(), r.box.width,
                    r.box.height, r.confidence);
    } else {
      std::snprintf(buf, sizeof(buf), "%d,%d,%.2f,%.2f,%.2f,%.2f\n", r.frame,
                    r.object_id, r.box.left(), r.box.top(), r.box.width,
                    r.box.height);
    }
    os << buf;
  }
  if (!os) throw io_error(path + ": write failed");
}

namespace {

bool has_image_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace

FrameSequence::FrameSequence(const std::string& path) {
  if (fs::is_directory(path)) {
    for (const auto& entry : fs::directory_iterator(path))
      if (entry.is_regular_file() && has_image_extension(entry.path()))
        paths_.push_back(entry.path().string());
    std::sort(paths_.begin(), paths_.end());
  } else {
    std::ifstream is(path);
    if (!is) throw io_error(path + ": cannot open sequence");
    const fs::path base = fs::path(path).parent_path();
    std::string line;
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      fs::path p(line);
      if (p.is_relative()) p = base / p;
      paths_.push_back(p.string());
    }
  }
  if (paths_.empty()) throw io_error(path + ": no frames found");
  cache_.resize(paths_.size());
}

const Frame& FrameSequence::frame(int index) {
  if (index < 0 || index >= frame_count())
    throw io_error("sequence: frame index " + std::to_string(index) +
                   " out of range");
  Frame& slot = cache_[index];
  if (!slot.empty()) return slot;
  Frame loaded;
  try {
    loaded = load_image(paths_[index]);
  } catch (const std::exception& e) {
    throw io_error("sequence: frame " + std::to_string(index) + " (" +
                   paths_[index] + "): " + e.what());
  }
  if (width_ == 0) {
    width_ = loaded.width();
    height_ = loaded.height();
  } else if (loaded.width() != width_ || loaded.height() != height_) {
    throw io_error("sequence: frame " + std::to_string(index) +
                   " has mismatched dimensions");
  }
  slot = std::move(loaded);
  return slot;
}

}  // namespace sgtrack
