#pragma once

#include <stdexcept>
#include <string>

namespace doitk {

// Process exit codes used by the CLI.
enum class ExitCode : int {
  ok = 0,
  config = 2,
  data = 3,
  numerical = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ExitCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ExitCode code() const noexcept { return code_; }

 private:
  ExitCode code_;
};

/// Bad or inconsistent configuration, invalid arguments.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ExitCode::config, what) {}
};

/// Malformed input files or input that violates a data invariant.
class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(ExitCode::data, what) {}
};

/// Non-finite values or degenerate numerical states.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ExitCode::numerical, what) {}
};

}  // namespace doitk
