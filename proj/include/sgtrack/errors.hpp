#ifndef SGTRACK_ERRORS_HPP_
#define SGTRACK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sgtrack {

// Unreadable or malformed input data (sequences, CSV files).
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid run configuration.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace sgtrack

#endif  // SGTRACK_ERRORS_HPP_
