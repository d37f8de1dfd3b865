#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace pfq {

enum class ErrorCode {
  kInvalidArgument,
  kDegenerateState,
  kCircuit,
  kConfiguration,
  kRange,
  kPrecondition,
  kSampling,
  kAmbiguousPattern,
  // Netlist / program diagnostics.
  kSyntax,
  kUnknownKeyword,
  kUndeclaredPath,
  kArity,
  kBadParameter,
  kDuplicatePath,
  kIdenticalPorts,
  kIo,
};

const char* to_string(ErrorCode code);

struct SourceLocation {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  Error(ErrorCode code, const std::string& message, SourceLocation where)
      : std::runtime_error(message), code_(code), location_(where) {}

  ErrorCode code() const noexcept { return code_; }
  const std::optional<SourceLocation>& location() const noexcept { return location_; }

  // Message prefixed with "line:col: " when a location is known.
  std::string describe() const;

 private:
  ErrorCode code_;
  std::optional<SourceLocation> location_;
};

}  // namespace pfq
