#pragma once

// Independent reference implementations used to cross-check the library.
// Nothing here calls into the library's solvers or validator.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "reallocation/core_model.hpp"

namespace support {

using reallocation::ExtRational;
using reallocation::Instance;
using reallocation::Rational;
using reallocation::Schedule;
using reallocation::Time;

// splitmix64; small, seedable and identical on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);  // inclusive
  bool chance(int percent);

 private:
  std::uint64_t state_;
};

struct NaiveViolation {
  std::size_t warehouse;
  Time time;
  int kind;  // 0 carry-out, 1 carry-in, 2 occupancy
  friend bool operator==(const NaiveViolation&, const NaiveViolation&) = default;
};

// Scans every integer time in [0, completion] and recomputes every load from
// its definition.
std::vector<NaiveViolation> naive_violations(const Instance& inst, const Schedule& sched);
bool naive_feasible(const Instance& inst, const Schedule& sched);
Time naive_completion(const Instance& inst, const Schedule& sched);

// Exhaustive enumeration of all departure vectors with departure + transit <=
// horizon. Only for a handful of products.
std::optional<Time> brute_min_completion(const Instance& inst, Time horizon);

// Exhaustive set-partition search.
std::size_t brute_bins(const std::vector<Rational>& sizes, const ExtRational& capacity);

// Assigns every value to one of `groups` groups and checks the sums.
bool brute_three_partition(const std::vector<std::int64_t>& values, std::int64_t bound);

// Two machines, unit operations, exact delays: enumerates all start vectors.
Time brute_flow_shop(const std::vector<std::int64_t>& delays);

enum class Limit { kInfinite, kFinite, kEither };

struct GenConfig {
  int min_warehouses = 2;
  int max_warehouses = 4;
  int min_products = 1;
  int max_products = 6;
  std::vector<std::int64_t> sizes{1, 2, 3};  // drawn uniformly from this list
  Time min_transit = 1;
  Time max_transit = 2;
  Limit capacity = Limit::kEither;
  Limit carry_out = Limit::kEither;
  Limit carry_in = Limit::kEither;
  std::int64_t slack = 3;  // finite limits = smallest admissible value + [0, slack]
  std::int64_t max_limit = 1'000'000;  // finite limits never exceed this; resample otherwise
};

Instance random_instance(Rng& rng, const GenConfig& config);

// Random schedule with departures in [0, max_departure].
Schedule random_schedule(Rng& rng, const Instance& inst, Time max_departure);

}  // namespace support
