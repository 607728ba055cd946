#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace reallocation {

enum class ErrorCode {
  kInvalidDocument,
  kMissingField,
  kDuplicateId,
  kUnknownWarehouse,
  kUnknownProduct,
  kAssumptionViolated,
  kSelfLoop,
  kEmptyInstance,
  kPreconditionFailed,
  kUnbalanced,
  kDegreeExceedsDelta,
  kNotRegular,
  kNonUniformSize,
  kNonUniformTransit,
  kHorizonTooSmall,
  kInfeasible,
  kStuck,
  kMissingTransit,
  kHorizonExceeded,
  kBudgetInfeasible,
  kInvariantViolated,
  kShapeMismatch,
};

// Machine-readable name, e.g. "NonUniformSize".
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace reallocation
