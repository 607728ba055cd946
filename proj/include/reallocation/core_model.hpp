#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "reallocation/rational.hpp"

namespace reallocation {

using Time = std::int64_t;

struct Warehouse {
  std::string id;
  ExtRational capacity;
  ExtRational carry_out;
  ExtRational carry_in;
};

// Products reference warehouses by index into Instance::warehouses().
struct Product {
  std::string id;
  Rational size;
  std::size_t source = 0;
  std::size_t sink = 0;
  Time transit = 1;
};

// Same as Product but with warehouse ids; the input form of make_instance.
struct ProductRecord {
  std::string id;
  Rational size;
  std::string source;
  std::string sink;
  Time transit = 1;
};

// Immutable problem instance. Construction enforces the standing assumptions:
// every product fits the carry capacities at both ends and the initial and
// final contents of every warehouse fit its capacity.
class Instance {
 public:
  Instance() = default;
  Instance(std::vector<Warehouse> warehouses, std::vector<Product> products);

  const std::vector<Warehouse>& warehouses() const { return warehouses_; }
  const std::vector<Product>& products() const { return products_; }
  std::size_t warehouse_count() const { return warehouses_.size(); }
  std::size_t product_count() const { return products_.size(); }

  const Warehouse& warehouse(std::size_t house) const { return warehouses_[house]; }
  const Product& product(std::size_t prod) const { return products_[prod]; }

  // Indices of products leaving / entering warehouse w, in product order.
  const std::vector<std::size_t>& outgoing(std::size_t house) const { return outgoing_[house]; }
  const std::vector<std::size_t>& incoming(std::size_t house) const { return incoming_[house]; }

  std::optional<std::size_t> find_warehouse(const std::string& id) const;
  std::optional<std::size_t> find_product(const std::string& id) const;

  Rational outgoing_size(std::size_t house) const;
  Rational incoming_size(std::size_t house) const;
  Time max_transit() const;
  Time min_transit() const;

 private:
  std::vector<Warehouse> warehouses_;
  std::vector<Product> products_;
  std::vector<std::vector<std::size_t>> outgoing_;
  std::vector<std::vector<std::size_t>> incoming_;
  std::unordered_map<std::string, std::size_t> warehouse_index_;
  std::unordered_map<std::string, std::size_t> product_index_;
};

// Resolves warehouse ids. Throws kUnknownWarehouse plus everything Instance throws.
Instance make_instance(std::vector<Warehouse> warehouses, std::vector<ProductRecord> products);

// departures[i] is the departure time of product i.
struct Schedule {
  std::vector<Time> departures;

  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Builds a Schedule from an id-keyed map. Throws kUnknownProduct for ids not in
// the instance and kMissingField for products without a departure.
Schedule schedule_from_map(const Instance& inst,
                           const std::vector<std::pair<std::string, Time>>& departures);

struct WarehouseAugmentation {
  Rational capacity{0};
  Rational carry_out{0};
  Rational carry_in{0};
};

// One entry per warehouse; an empty vector means no augmentation.
using Augmentation = std::vector<WarehouseAugmentation>;

enum class ConstraintKind { kCarryOut, kCarryIn, kWarehouse };

std::string_view to_string(ConstraintKind kind);

struct Violation {
  std::size_t warehouse = 0;
  Time time = 0;
  ConstraintKind kind = ConstraintKind::kCarryOut;
  Rational load;
  ExtRational limit;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool feasible() const { return violations.empty(); }
};

// Checks all three constraint families at every checkpoint in [0, T]. The
// checkpoints are 0, T, every departure time, every arrival time and every
// departure time + 1; all loads are constant between consecutive checkpoints,
// so an occupancy violation is reported for every time up to the next one.
ValidationReport validate_schedule(const Instance& inst, const Schedule& sched,
                                   const Augmentation& aug = {});

// max(departure + transit), 0 for an empty instance.
Time completion_time(const Instance& inst, const Schedule& sched);

// Rounds needed by warehouse w under its carry capacities; infinite capacity
// contributes 0.
std::int64_t rho(const Instance& inst, std::size_t house);
std::int64_t rho_max(const Instance& inst);

// max(rho_max, 1) + min transit - 1. Throws kEmptyInstance.
Time lower_bound(const Instance& inst);

// All products at time 0. Requires infinite carry capacities everywhere.
Schedule solve_trivial(const Instance& inst);

// Predicates used as preconditions by several solvers.
bool has_uniform_size(const Instance& inst);
bool has_uniform_transit(const Instance& inst);
bool all_capacity_infinite(const Instance& inst);
bool all_carry_out_infinite(const Instance& inst);
bool all_carry_in_infinite(const Instance& inst);

// Time reversal: every product swaps source and sink, every warehouse swaps
// carry-out and carry-in. A schedule of the reversed instance with completion
// T maps back through unreverse_schedule to a schedule of the original
// instance with completion at most T and the same feasibility.
Instance reversed(const Instance& inst);
Schedule unreverse_schedule(const Instance& inst, const Schedule& reversed_schedule);

}  // namespace reallocation
