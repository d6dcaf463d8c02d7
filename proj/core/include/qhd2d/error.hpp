#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace qhd2d {

/// Invalid parameter or configuration value.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Fields living on different grids, or a file whose header does not match.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input data (negative densities, unreadable files, ...).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A request the library declines to serve: cost guards, meaningless identities,
/// test functions the stored trajectory cannot resolve.
class RefusalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite or runaway values detected during time stepping.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double last_good_time,
              std::optional<int> strip = std::nullopt)
      : std::runtime_error(what), last_good_time_(last_good_time), strip_(strip) {}

  double last_good_time() const noexcept { return last_good_time_; }
  std::optional<int> strip() const noexcept { return strip_; }

 private:
  double last_good_time_;
  std::optional<int> strip_;
};

}  // namespace qhd2d
