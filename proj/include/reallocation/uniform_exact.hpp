#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reallocation/core_model.hpp"
#include "reallocation/demand_graph.hpp"

namespace reallocation {

// Size k becomes 1, every finite capacity becomes floor(capacity / k).
// Throws kNonUniformSize.
Instance normalize_uniform(const Instance& inst);

struct SubWarehouse {
  std::string id;  // "<warehouse>#<index>"
  std::size_t parent = 0;
  std::size_t index = 1;  // 1-based within the parent
  // Share of the parent's capacity; informational only and possibly negative.
  ExtRational capacity;
};

struct SplitProduct {
  std::string id;
  std::size_t source = 0;  // sub-warehouse index
  std::size_t sink = 0;
  bool extra = false;
  std::size_t original = 0;  // product index in the unit instance when !extra
};

// Each warehouse is cut into sub-warehouses holding at most `rounds` departures
// and at most `rounds` arrivals. Products 0..m-1 mirror the instance's products;
// balancing extras follow.
struct SplitInstance {
  Instance unit;
  std::int64_t rounds = 0;
  std::vector<SubWarehouse> subs;
  std::vector<std::vector<std::size_t>> subs_of;
  std::vector<SplitProduct> products;

  std::size_t extra_count() const;
  std::size_t out_count(std::size_t sub) const;
  std::size_t in_count(std::size_t sub) const;
  DemandGraph graph() const;
};

// Requires unit sizes and integral capacities.
SplitInstance split_warehouses(const Instance& unit);

// Adds unit extras from subs with too few departures to subs with too few
// arrivals until every sub is balanced.
SplitInstance balance(SplitInstance split);

// Optimal for uniform size and uniform transit: completion rho_max + transit - 1.
// Throws kNonUniformSize / kNonUniformTransit.
Schedule solve_uniform(const Instance& inst);

// Intermediate results of solve_uniform, for inspection and tests. slices[i]
// lists the split products (extras included) departing at time i.
struct UniformTrace {
  SplitInstance split;
  std::vector<CycleFamily> slices;
  Schedule schedule;
};

UniformTrace solve_uniform_traced(const Instance& inst);

// Uniform size, arbitrary transit, one carry side unbounded (uniform transit
// falls back to solve_uniform and needs neither). Completion at
// most rho_max - 1 + max transit. Throws kPreconditionFailed / kNonUniformSize.
Schedule solve_uniform_2approx(const Instance& inst);

}  // namespace reallocation
