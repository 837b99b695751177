#pragma once

#include <stdexcept>
#include <string>

namespace hetnet {

/// Argument outside an operation's domain (bad length, non-positive distance, index out of range).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// All-zero channel handed to a precoder that must normalize by its energy.
class DegenerateChannel : public std::runtime_error {
 public:
  explicit DegenerateChannel(const std::string& what) : std::runtime_error(what) {}
};

/// Stacked ZF system without full row rank; the drop cannot be zero-forced.
class RankDeficient : public std::runtime_error {
 public:
  explicit RankDeficient(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent scenario configuration / profile file.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hetnet
