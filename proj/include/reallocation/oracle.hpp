#pragma once

#include <cstdint>
#include <optional>

#include "reallocation/core_model.hpp"

namespace reallocation {

enum class Objective { kMinCompletion, kFeasibilityOnly };

struct SearchConfig {
  Time horizon = 0;
  std::uint64_t node_budget = 20'000'000;
  Objective objective = Objective::kMinCompletion;
};

enum class OutcomeKind { kOptimal, kInfeasibleWithinHorizon, kBudgetExceeded };

std::string_view to_string(OutcomeKind kind);

struct OracleOutcome {
  OutcomeKind kind = OutcomeKind::kInfeasibleWithinHorizon;
  // Valid when kind == kOptimal. With kFeasibilityOnly the schedule is some
  // feasible witness and `completion` is its completion time.
  Time completion = 0;
  Schedule schedule;
  std::uint64_t nodes = 0;
};

// Exhaustive search over departure times in [0, horizon - transit(p)].
// Deterministic. At most 64 products.
OracleOutcome exact_min_completion(const Instance& inst, const SearchConfig& config);

struct FeasibilityOutcome {
  bool feasible = false;
  bool budget_exceeded = false;
  std::optional<Schedule> witness;
};

FeasibilityOutcome is_feasible_within(const Instance& inst, Time horizon,
                                      std::uint64_t node_budget = 20'000'000);

// Horizon used for feasibility questions when none is given.
Time default_horizon(const Instance& inst);

}  // namespace reallocation
