#pragma once

#include <cstddef>
#include <vector>

#include "reallocation/core_model.hpp"
#include "reallocation/simplex.hpp"

namespace reallocation {

// x[product, departure] for departure in [0, horizon - transit].
struct LpVariable {
  std::size_t product = 0;
  Time departure = 0;
};

enum class RowKind { kCarryOut, kCarryIn, kAssignment };

struct LpRow {
  RowKind kind = RowKind::kAssignment;
  std::size_t warehouse = 0;  // capacity rows
  Time time = 0;              // capacity rows
  std::size_t product = 0;    // assignment rows
  std::vector<std::pair<std::size_t, Rational>> terms;
  Rational rhs;
};

// Capacity rows exist only for finite capacities and only when the products
// they cover could exceed the capacity together; the omitted rows can never
// bind, so the polytope is unchanged.
struct LpProgram {
  Time horizon = 0;
  std::vector<LpVariable> variables;
  std::vector<LpRow> rows;
};

// Throws kHorizonTooSmall when some product cannot arrive by `horizon`.
LpProgram build_lp(const Instance& inst, Time horizon);

// Vertex of the LP polytope. Throws kInfeasible.
std::vector<Rational> solve_lp_extreme_point(const LpProgram& lp);
bool lp_feasible(const LpProgram& lp);

// Smallest horizon in [max transit, 2m - 1 + max transit] with a feasible LP;
// 0 for an empty instance.
Time find_min_horizon(const Instance& inst);

enum class RoundingMode { kTwoSided, kGapOut, kGapIn };

std::string_view to_string(RoundingMode mode);

struct CarryLoad {
  std::size_t warehouse = 0;
  Time time = 0;
  ConstraintKind kind = ConstraintKind::kCarryOut;
  Rational load;
  ExtRational limit;
  // Largest and second-largest sizes within the departing (or arriving) set.
  Rational largest;
  Rational second;
};

struct OccupancyPeak {
  std::size_t warehouse = 0;
  Time time = 0;
  Rational load;
  ExtRational capacity;
};

// How far a schedule exceeds the capacities, with the additive bounds that
// the rounding guarantees. Warehouse bounds use the largest sizes over all of
// P+(w) or P-(w); set bounds use the largest sizes within each (w, time) set.
struct AugmentationReport {
  std::vector<CarryLoad> loads;       // every (w, time) with a nonempty set
  std::vector<OccupancyPeak> peaks;   // one per warehouse
  bool set_pair_bounds = true;        // load <= limit + largest + second
  bool set_single_out_bounds = true;  // carry-out load <= limit + largest
  bool set_single_in_bounds = true;
  bool warehouse_pair_out = true;     // carry-out <= limit + two largest sizes leaving w
  bool warehouse_pair_in = true;
  bool warehouse_single_out = true;   // carry-out <= limit + largest size leaving w
  bool warehouse_single_in = true;
  bool occupancy_within_double = true;
  // Smallest augmentation under which the schedule is feasible.
  Augmentation needed;
};

AugmentationReport augmentation_achieved(const Instance& inst, const Schedule& sched);

struct RoundingResult {
  Schedule schedule;
  AugmentationReport report;
  std::size_t iterations = 0;
};

// Iterative rounding at horizon T. Gap-out needs carry_in unbounded
// everywhere, gap-in needs carry_out unbounded. Throws kInfeasible when the LP
// at T is empty and kStuck if a vertex offers neither an integral variable nor
// a removable row.
RoundingResult iterative_round(const Instance& inst, Time horizon, RoundingMode mode);

}  // namespace reallocation
