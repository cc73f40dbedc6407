#ifndef SGTRACK_METRICS_HPP_
#define SGTRACK_METRICS_HPP_

#include <map>
#include <string>
#include <vector>

#include "sgtrack/geometry.hpp"

namespace sgtrack {

struct TrackRecord {
  int frame = 0;
  int object_id = 0;
  BBox box;
  double confidence = 1.0;
};

struct MetricsReport {
  double motp = 0.0;
  double mota = 0.0;
  double motg = 0.0;
  long long id_switches = 0;
  long long misses = 0;
  long long false_positives = 0;
  long long mismatches = 0;
  long long matches = 0;
  long long gt_count = 0;
  double tp_rate = 0.0;
  double fp_rate = 0.0;
  bool motp_undefined = false;  // no matches at all
};

struct FrameCounts {
  int matches = 0;
  int misses = 0;
  int false_positives = 0;
  int mismatches = 0;
  double iou_sum = 0.0;
};

// Frame-by-frame correspondence state. Pairs kept from the previous frame
// survive as long as they still clear the IoU gate; new pairs come from a
// minimum-cost assignment; a ground truth whose matched hypothesis id
// changes counts as a mismatch and an identity switch.
class MotMatcher {
 public:
  explicit MotMatcher(double iou_threshold);

  FrameCounts match_frame(const std::vector<TrackRecord>& gt,
                          const std::vector<TrackRecord>& hyp);

  const std::map<int, int>& correspondence() const { return correspondence_; }

 private:
  double iou_threshold_;
  std::map<int, int> correspondence_;  // gt id -> hypothesis id
};

MetricsReport compute_metrics(const std::vector<TrackRecord>& gt,
                              const std::vector<TrackRecord>& hyp,
                              double iou_threshold);

std::string format_report(const MetricsReport& report);

// Minimum-cost assignment (Hungarian); returns per-row column or -1.
std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost);

}  // namespace sgtrack

#endif  // SGTRACK_METRICS_HPP_
