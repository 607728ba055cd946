#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reallocation/binpack.hpp"
#include "reallocation/core_model.hpp"

namespace reallocation {

// 3m values summing to m * bound, each strictly between bound/4 and bound/2.
struct ThreePartitionInstance {
  std::vector<std::int64_t> values;
  std::int64_t bound = 0;

  std::size_t groups() const { return values.size() / 3; }
};

// Throws kInvariantViolated.
void check_3partition(const ThreePartitionInstance& tp);

// Groups of value indices, three per group, each summing to the bound.
using Triples = std::vector<std::vector<std::size_t>>;

bool is_valid_3partition(const ThreePartitionInstance& tp, const Triples& triples);
// Exhaustive; small inputs only.
std::optional<Triples> solve_3partition(const ThreePartitionInstance& tp);

// Two warehouses "w1", "w2" with carry_out = bound, unbounded carry_in and
// capacity m * bound. Products "x<i>" carry the values from w1 to w2,
// products "b<j>" of size bound go back. Feasible iff tp is a yes-instance.
Instance from_3partition(const ThreePartitionInstance& tp);

// The sets of values leaving w1 at each departure time of a schedule of the
// from_3partition instance, in time order.
Triples induced_partition(const ThreePartitionInstance& tp, const Schedule& sched);

// Replacement of one product by a network of size-1 and size-2 products.
// Vertices and edges index into the expanded instance.
struct Gadget {
  std::string product;
  std::int64_t size = 0;
  std::vector<std::size_t> u_leaves, v_leaves;
  std::size_t u_root = 0, v_root = 0;
  std::vector<std::size_t> u_split, v_split;  // both halves of every split tree vertex
  std::vector<std::size_t> edges;
};

struct Size12Expansion {
  Instance instance;
  std::vector<Gadget> gadgets;
};

// Input shape as produced by from_3partition: two warehouses with capacity
// k*B and carry_out B, unbounded carry_in, unit transit, integer sizes, and
// exactly k products of size B travelling from the second warehouse to the
// first. The size constraints of 3-Partition are not required, so small
// no-instances can be built by hand. Throws kShapeMismatch otherwise.
Size12Expansion size12_expand(const Instance& inst);

// Star from "u" with one leaf warehouse per item; carry_out = bin capacity,
// everything else unbounded, unit transit. Min completion = min bin count.
Instance from_binpacking(const BinPackingInstance& bp);

// Exhaustive; small inputs only.
std::size_t min_bins(const BinPackingInstance& bp);

struct TmfdJob {
  std::string id;
  Time delay = 0;
};

// Two-machine flow shop, unit operations, exact delay between them.
struct TmfdInstance {
  std::vector<TmfdJob> jobs;
};

// Per job: start time on the first machine.
using TmfdSchedule = std::vector<Time>;

// Warehouses "w1" -> "w2", all carry capacities 1, unbounded capacity, unit
// sizes, transit = delay + 1.
Instance from_tmfd(const TmfdInstance& tm);

TmfdSchedule tmfd_roundtrip(const TmfdInstance& tm, const Schedule& sched);
Schedule schedule_from_tmfd(const TmfdSchedule& starts);
bool tmfd_feasible(const TmfdInstance& tm, const TmfdSchedule& starts);
Time tmfd_makespan(const TmfdInstance& tm, const TmfdSchedule& starts);
// Exhaustive; small inputs only.
Time tmfd_optimum(const TmfdInstance& tm);

}  // namespace reallocation
