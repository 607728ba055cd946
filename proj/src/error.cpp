#include "reallocation/error.hpp"

namespace reallocation {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDocument: return "InvalidDocument";
    case ErrorCode::kMissingField: return "MissingField";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kUnknownWarehouse: return "UnknownWarehouse";
    case ErrorCode::kUnknownProduct: return "UnknownProduct";
    case ErrorCode::kAssumptionViolated: return "AssumptionViolated";
    case ErrorCode::kSelfLoop: return "SelfLoop";
    case ErrorCode::kEmptyInstance: return "EmptyInstance";
    case ErrorCode::kPreconditionFailed: return "PreconditionFailed";
    case ErrorCode::kUnbalanced: return "Unbalanced";
    case ErrorCode::kDegreeExceedsDelta: return "DegreeExceedsDelta";
    case ErrorCode::kNotRegular: return "NotRegular";
    case ErrorCode::kNonUniformSize: return "NonUniformSize";
    case ErrorCode::kNonUniformTransit: return "NonUniformTransit";
    case ErrorCode::kHorizonTooSmall: return "HorizonTooSmall";
    case ErrorCode::kInfeasible: return "Infeasible";
    case ErrorCode::kStuck: return "Stuck";
    case ErrorCode::kMissingTransit: return "MissingTransit";
    case ErrorCode::kHorizonExceeded: return "HorizonExceeded";
    case ErrorCode::kBudgetInfeasible: return "BudgetInfeasible";
    case ErrorCode::kInvariantViolated: return "InvariantViolated";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace reallocation
