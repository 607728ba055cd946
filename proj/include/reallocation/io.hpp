#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "reallocation/binpack.hpp"
#include "reallocation/core_model.hpp"
#include "reallocation/lp_rounding.hpp"
#include "reallocation/reductions.hpp"

namespace reallocation {

using Json = nlohmann::json;

// Reads and parses a document; unreadable files and malformed text raise
// InvalidDocument.
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& doc);

// Numbers may be JSON integers, decimals, "a/b" strings or (for limits) "inf".
Rational rational_from_json(const Json& value);
ExtRational ext_rational_from_json(const Json& value);

Instance instance_from_json(const Json& doc);
Json instance_to_json(const Instance& inst);

Schedule schedule_from_json(const Instance& inst, const Json& doc);
Json schedule_to_json(const Instance& inst, const Schedule& sched);

Augmentation augmentation_from_json(const Instance& inst, const Json& doc);
Json augmentation_to_json(const Instance& inst, const Augmentation& aug);

Json validation_to_json(const Instance& inst, const ValidationReport& report);
Json augmentation_report_to_json(const Instance& inst, const AugmentationReport& report);

ThreePartitionInstance three_partition_from_json(const Json& doc);
BinPackingInstance binpacking_from_json(const Json& doc);
TmfdInstance tmfd_from_json(const Json& doc);

struct SolveOptions {
  std::optional<Time> horizon;
  std::uint64_t budget = 20'000'000;
  RoundingMode mode = RoundingMode::kTwoSided;
};

struct SolveResult {
  std::string algorithm;
  Schedule schedule;
  // Recomputed from the schedule, never taken from the solver.
  Time completion = 0;
  Time lower_bound = 0;
  bool feasible = false;
  std::optional<AugmentationReport> augmentation;
  std::optional<Time> lp_horizon;
  double wall_seconds = 0;
};

// Status of a solve that produced no schedule (oracle outcomes).
struct SolveFailure {
  std::string outcome;
  std::uint64_t nodes = 0;
};

bool is_known_algorithm(const std::string& name);
const std::vector<std::string>& algorithm_names();

// Runs one algorithm. Oracle runs that end without an optimum throw
// Error(kInfeasible) or Error(kBudgetInfeasible).
SolveResult solve_with(const Instance& inst, const std::string& algorithm, const SolveOptions& options);
Json solve_result_to_json(const Instance& inst, const SolveResult& result);

// Random instance for benchmarking; parameters come from a document with
// optional keys warehouses, products, max_size, max_transit, capacity,
// carry_out, carry_in (each limit "inf" or an integer upper bound).
Instance random_instance(const Json& params, std::uint64_t seed);

}  // namespace reallocation
