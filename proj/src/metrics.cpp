#include "sgtrack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <stdexcept>

namespace sgtrack {

namespace {
constexpr double kForbidden = 1e9;
}

// Hungarian algorithm with potentials, O(n^2 m). Requires rows <= cols;
// the public wrapper transposes when needed.
static std::vector<int> assign_rows(const std::vector<std::vector<double>>& cost) {
  const int n = static_cast<int>(cost.size());
  const int m = static_cast<int>(cost[0].size());
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, std::numeric_limits<double>::infinity());
    std::vector<char> used(m + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      double delta = std::numeric_limits<double>::infinity();
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

std::vector<int> solve_assignment(const std::vector<std::vector<double>>& cost) {
  if (cost.empty()) return {};
  const int n = static_cast<int>(cost.size());
  const int m = static_cast<int>(cost[0].size());
  if (n <= m) return assign_rows(cost);
  std::vector<std::vector<double>> transposed(m, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) transposed[j][i] = cost[i][j];
  const std::vector<int> col_to_row = assign_rows(transposed);
  std::vector<int> row_to_col(n, -1);
  for (int j = 0; j < m; ++j)
    if (col_to_row[j] >= 0) row_to_col[col_to_row[j]] = j;
  return row_to_col;
}

MotMatcher::MotMatcher(double iou_threshold) : iou_threshold_(iou_threshold) {
  if (iou_threshold <= 0.0 || iou_threshold > 1.0)
    throw std::invalid_argument("metrics: IoU threshold must be in (0, 1]");
}

FrameCounts MotMatcher::match_frame(const std::vector<TrackRecord>& gt,
                                    const std::vector<TrackRecord>& hyp) {
  FrameCounts counts;
  std::vector<char> gt_matched(gt.size(), false);
  std::vector<char> hyp_matched(hyp.size(), false);

  auto find_hyp = [&](int id) -> int {
    for (size_t k = 0; k < hyp.size(); ++k)
      if (hyp[k].object_id == id) return static_cast<int>(k);
    return -1;
  };

  // Keep surviving correspondences from the previous frame.
  for (size_t gi = 0; gi < gt.size(); ++gi) {
    const auto it = correspondence_.find(gt[gi].object_id);
    if (it == correspondence_.end()) continue;
    const int hi = find_hyp(it->second);
    if (hi < 0 || hyp_matched[hi]) continue;
    const double overlap = iou(gt[gi].box, hyp[hi].box);
    if (overlap < iou_threshold_) continue;
    gt_matched[gi] = true;
    hyp_matched[hi] = true;
    ++counts.matches;
    counts.iou_sum += overlap;
  }

  // Optimal assignment over the rest.
  std::vector<int> free_gt, free_hyp;
  for (size_t gi = 0; gi < gt.size(); ++gi)
    if (!gt_matched[gi]) free_gt.push_back(static_cast<int>(gi));
  for (size_t hi = 0; hi < hyp.size(); ++hi)
    if (!hyp_matched[hi]) free_hyp.push_back(static_cast<int>(hi));

  if (!free_gt.empty() && !free_hyp.empty()) {
    std::vector<std::vector<double>> cost(free_gt.size(),
                                          std::vector<double>(free_hyp.size()));
    for (size_t a = 0; a < free_gt.size(); ++a) {
      for (size_t b = 0; b < free_hyp.size(); ++b) {
        const double overlap = iou(gt[free_gt[a]].box, hyp[free_hyp[b]].box);
        cost[a][b] = overlap >= iou_threshold_ ? 1.0 - overlap : kForbidden;
      }
    }
    const std::vector<int> assignment = solve_assignment(cost);
    for (size_t a = 0; a < free_gt.size(); ++a) {
      const int b = assignment[a];
      if (b < 0 || cost[a][b] >= kForbidden) continue;
      const int gi = free_gt[a];
      const int hi = free_hyp[b];
      gt_matched[gi] = true;
      hyp_matched[hi] = true;
      ++counts.matches;
      counts.iou_sum += 1.0 - cost[a][b];

      const int gt_id = gt[gi].object_id;
      const int hyp_id = hyp[hi].object_id;
      const auto it = correspondence_.find(gt_id);
      if (it != correspondence_.end() && it->second != hyp_id)
        ++counts.mismatches;
      correspondence_[gt_id] = hyp_id;
    }
  }

  for (char m : gt_matched)
    if (!m) ++counts.misses;
  for (char m : hyp_matched)
    if (!m) ++counts.false_positives;
  return counts;
}

MetricsReport compute_metrics(const std::vector<TrackRecord>& gt,
                              const std::vector<TrackRecord>& hyp,
                              double iou_threshold) {
  std::map<int, std::vector<TrackRecord>> gt_frames, hyp_frames;
  for (const TrackRecord& r : gt) gt_frames[r.frame].push_back(r);
  for (const TrackRecord& r : hyp) hyp_frames[r.frame].push_back(r);

  auto check_duplicates = [](const std::map<int, std::vector<TrackRecord>>& frames,
                             const char* what) {
    for (const auto& [frame, records] : frames) {
      std::set<int> ids;
      for (const TrackRecord& r : records)
        if (!ids.insert(r.object_id).second)
          throw std::invalid_argument(
              std::string(what) + ": duplicate record for object " +
              std::to_string(r.object_id) + " at frame " + std::to_string(frame));
    }
  };
  check_duplicates(gt_frames, "ground truth");
  check_duplicates(hyp_frames, "hypotheses");

  if (gt.empty())
    throw std::invalid_argument("metrics: ground truth is empty, metrics undefined");

  std::set<int> frames;
  for (const auto& [f, _] : gt_frames) frames.insert(f);
  for (const auto& [f, _] : hyp_frames) frames.insert(f);

  MotMatcher matcher(iou_threshold);
  MetricsReport report;
  static const std::vector<TrackRecord> kEmpty;
  double iou_sum = 0.0;
  for (int f : frames) {
    const auto git = gt_frames.find(f);
    const auto hit = hyp_frames.find(f);
    const FrameCounts c = matcher.match_frame(git == gt_frames.end() ? kEmpty : git->second,
                                              hit == hyp_frames.end() ? kEmpty : hit->second);
    report.matches += c.matches;
    report.misses += c.misses;
    report.false_positives += c.false_positives;
    report.mismatches += c.mismatches;
    iou_sum += c.iou_sum;
  }
  report.id_switches = report.mismatches;
  report.gt_count = static_cast<long long>(gt.size());

  if (report.matches > 0) {
    report.motp = iou_sum / static_cast<double>(report.matches);
  } else {
    report.motp = 0.0;
    report.motp_undefined = true;
  }
  report.mota = 1.0 - static_cast<double>(report.misses + report.false_positives +
                                          report.mismatches) /
                          static_cast<double>(report.gt_count);
  report.motg = (report.motp + report.mota) / 2.0;
  report.tp_rate = static_cast<double>(report.matches) /
                   static_cast<double>(report.gt_count);
  report.fp_rate = static_cast<double>(report.false_positives) /
                   static_cast<double>(report.gt_count);
  return report;
}

std::string format_report(const MetricsReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "motp %.6f\n"
                "mota %.6f\n"
                "motg %.6f\n"
                "idsw %lld\n"
                "misses %lld\n"
                "false_positives %lld\n"
                "mismatches %lld\n"
                "matches %lld\n"
                "gt_count %lld\n"
                "tp_rate %.6f\n"
                "fp_rate %.6f\n"
                "motp_undefined %d\n",
                r.motp, r.mota, r.motg, r.id_switches, r.misses,
                r.false_positives, r.mismatches, r.matches, r.gt_count,
                r.tp_rate, r.fp_rate, r.motp_undefined ? 1 : 0);
  return std::string(buf);
}

}  // namespace sgtrack
