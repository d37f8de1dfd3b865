#include "pfq/error.hpp"

namespace pfq {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kDegenerateState: return "degenerate-state";
    case ErrorCode::kCircuit: return "circuit";
    case ErrorCode::kConfiguration: return "configuration";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kPrecondition: return "precondition";
    case ErrorCode::kSampling: return "sampling";
    case ErrorCode::kAmbiguousPattern: return "ambiguous-pattern";
    case ErrorCode::kSyntax: return "syntax";
    case ErrorCode::kUnknownKeyword: return "unknown-keyword";
    case ErrorCode::kUndeclaredPath: return "undeclared-path";
    case ErrorCode::kArity: return "arity";
    case ErrorCode::kBadParameter: return "bad-parameter";
    case ErrorCode::kDuplicatePath: return "duplicate-path";
    case ErrorCode::kIdenticalPorts: return "identical-ports";
    case ErrorCode::kIo: return "io";
  }
  return "unknown";
}

std::string Error::describe() const {
  std::string out;
  if (location_) {
    out += std::to_string(location_->line) + ":" + std::to_string(location_->column) + ": ";
  }
  out += to_string(code_);
  out += ": ";
  out += what();
  return out;
}

}  // namespace pfq
