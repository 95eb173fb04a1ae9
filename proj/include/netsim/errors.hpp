#pragma once

#include <stdexcept>
#include <string>

namespace netsim {

// Invalid configuration; `field` names the offending key.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// State left the sane envelope (non-finite values or |position| beyond the limit).
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(long step, const std::string& what)
      : std::runtime_error("diverged at step " + std::to_string(step) + ": " + what),
        step_(step) {}

  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace netsim
