#include "multifluid/error.hpp"

#include <sstream>

namespace multifluid {

namespace {

std::string format_config_message(const std::string& key_path, const std::string& what,
                                  std::size_t line) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  if (!key_path.empty()) os << key_path << ": ";
  os << what;
  return os.str();
}

std::string format_breach(std::size_t cell, std::size_t constituent, double value,
                          double time) {
  std::ostringstream os;
  os.precision(17);
  os << "density floor breach at t=" << time << ": constituent " << constituent + 1
     << " in cell " << cell << " has density " << value;
  return os.str();
}

}  // namespace

ConfigError::ConfigError(std::string key_path, const std::string& what, std::size_t line)
    : InvalidInput(format_config_message(key_path, what, line)),
      key_path_(std::move(key_path)),
      line_(line) {}

FloorBreach::FloorBreach(std::size_t cell, std::size_t constituent, double value, double time)
    : std::runtime_error(format_breach(cell, constituent, value, time)),
      cell_(cell),
      constituent_(constituent),
      value_(value),
      time_(time) {}

}  // namespace multifluid
