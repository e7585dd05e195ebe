#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace multifluid {

/// Rejected input or configuration. Maps to CLI exit status 1.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Configuration error carrying the offending key path (e.g. "alpha.constants")
/// and, for syntax errors, the 1-based line number (0 when not applicable).
class ConfigError : public InvalidInput {
 public:
  ConfigError(std::string key_path, const std::string& what, std::size_t line = 0);

  const std::string& key_path() const noexcept { return key_path_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string key_path_;
  std::size_t line_;
};

/// A partial density fell below the velocity-recovery floor. Maps to CLI exit
/// status 2.
class FloorBreach : public std::runtime_error {
 public:
  FloorBreach(std::size_t cell, std::size_t constituent, double value, double time);

  std::size_t cell() const noexcept { return cell_; }
  std::size_t constituent() const noexcept { return constituent_; }
  double value() const noexcept { return value_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t cell_;
  std::size_t constituent_;
  double value_;
  double time_;
};

/// Any other failure during time integration (non-finite fields, step above the
/// stability bound). Maps to CLI exit status 2.
class RuntimeFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace multifluid
