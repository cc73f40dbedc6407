#ifndef SGTRACK_CONFIG_HPP_
#define SGTRACK_CONFIG_HPP_

#include <iosfwd>
#include <string>

#include "sgtrack/tracker.hpp"

namespace sgtrack {

// Complete run configuration: tracking parameters plus evaluation knobs.
// Serialized as flat `key = value` lines with dotted keys; kernels and
// matrices are bracketed numeric lists.
struct RunConfig {
  TrackerConfig tracker;
  double eval_iou_threshold = 0.5;

  void validate() const;
};

RunConfig parse_config(std::istream& is);
RunConfig parse_config_string(const std::string& text);
RunConfig load_config(const std::string& path);

std::string serialize_config(const RunConfig& config);
void save_config(const RunConfig& config, const std::string& path);

// Apply one `key = value` style assignment (value in file syntax).
void set_config_value(RunConfig& config, const std::string& key,
                      const std::string& value);
std::string get_config_value(const RunConfig& config, const std::string& key);

}  // namespace sgtrack

#endif  // SGTRACK_CONFIG_HPP_
