#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace rdv {

/// Malformed arguments to a library call (dimension mismatch, out-of-range id, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A dynamics model left its domain of validity (stall, gimbal lock).
class DynamicsError : public std::runtime_error {
 public:
  enum class Kind { Stall, Gimbal };
  DynamicsError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A simulation run aborted; carries the offending agent and time.
class SimulationAbort : public std::runtime_error {
 public:
  SimulationAbort(std::size_t agent, double time, const std::string& cause)
      : std::runtime_error("agent " + std::to_string(agent) + " at t=" + std::to_string(time) + ": " + cause),
        agent_(agent),
        time_(time) {}
  std::size_t agent() const noexcept { return agent_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t agent_;
  double time_;
};

}  // namespace rdv

namespace rdv {

/// A scenario or sweep description is invalid. `field` names the offending key
/// as "[section].key"; `line` is 0 when the error is not tied to a source line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message, int line = 0)
      : std::runtime_error(format(field, message, line)), field_(std::move(field)), line_(line) {}
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, const std::string& message, int line) {
    std::string out = line > 0 ? "line " + std::to_string(line) + ": " : std::string{};
    if (!field.empty()) out += field + ": ";
    return out + message;
  }
  std::string field_;
  int line_;
};

}  // namespace rdv

namespace rdv {

/// A CSV file does not match the expected schema. `row` is 1-based, counting
/// the header as row 1; 0 when the problem is not tied to a row.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& message, std::size_t row = 0)
      : std::runtime_error(row > 0 ? "row " + std::to_string(row) + ": " + message : message), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace rdv
