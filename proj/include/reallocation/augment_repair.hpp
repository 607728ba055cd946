#pragma once

#include <cstddef>
#include <vector>

#include "reallocation/core_model.hpp"

namespace reallocation {

enum class Side { kDeparture = 1, kArrival = 2 };

struct EventVertex {
  std::size_t warehouse = 0;
  Side side = Side::kDeparture;
  Time time = 0;
};

// Bipartite graph of a schedule: product p is an edge from (source, departure,
// departure) to (sink, arrival, departure + transit). Vertices cover every
// warehouse, both sides and every time in [0, horizon].
struct TimeExpandedBipartite {
  Time horizon = 0;
  std::vector<EventVertex> vertices;
  std::vector<std::size_t> tail;  // per product: departure vertex
  std::vector<std::size_t> head;  // per product: arrival vertex
  std::vector<std::vector<std::size_t>> incident;  // per vertex: products

  std::size_t vertex_of(std::size_t warehouse, Side side, Time time) const;
  std::size_t other_end(std::size_t product, std::size_t vertex) const;
};

// Throws kHorizonExceeded when the schedule completes after `horizon`.
TimeExpandedBipartite build_time_expanded(const Instance& inst, const Schedule& sched, Time horizon);

// carry_out at departure vertices, carry_in at arrival vertices.
std::vector<ExtRational> vertex_budgets(const Instance& inst, const TimeExpandedBipartite& net);

// Q1: inclusion-minimal product set holding a largest edge of every nonempty
// vertex. first_role[v] is the lowest-id largest edge of v inside Q1. Q2 is
// the same construction on each vertex's edges minus first_role[v], for
// vertices of degree at least two.
struct QSets {
  std::vector<bool> in_q1;  // per product
  std::vector<bool> in_q2;
  std::vector<std::size_t> first_role;   // per vertex, kNoRole when empty
  std::vector<std::size_t> second_role;  // per vertex, kNoRole when degree < 2

  static constexpr std::size_t kNoRole = static_cast<std::size_t>(-1);

  std::vector<std::size_t> p1() const;  // Q1
  std::vector<std::size_t> p2() const;  // Q2 minus Q1
  std::vector<std::size_t> p3() const;  // everything else
};

QSets minimal_q_sets(const Instance& inst, const TimeExpandedBipartite& net);

bool is_forest(const TimeExpandedBipartite& net, const std::vector<std::size_t>& edges);

// Ordered classes of products.
using EdgePartition = std::vector<std::vector<std::size_t>>;

// Every class keeps the total size at each vertex within that vertex's budget.
bool is_feasible_class(const Instance& inst, const TimeExpandedBipartite& net,
                       const std::vector<std::size_t>& edges, const std::vector<ExtRational>& budgets);

// Splits a forest into `classes` feasible classes by walking every component
// from its root down. Throws kBudgetInfeasible when a vertex's edges admit no
// split into `classes` budget-respecting groups and kInvariantViolated when
// the edges contain a cycle.
EdgePartition forest_partition(const Instance& inst, const TimeExpandedBipartite& net,
                               const std::vector<std::size_t>& edges, std::size_t classes,
                               const std::vector<ExtRational>& budgets);

struct RepairResult {
  Schedule schedule;
  Time base_horizon = 0;  // T_min
  Schedule base;          // rounded schedule at T_min
  EdgePartition classes;  // the classes, in offset order
};

// Class k departs in window k; empty classes take no window.
Schedule concatenate_classes(const Schedule& base, const EdgePartition& classes, Time window,
                             std::size_t product_count);

// All three need unbounded warehouse capacities (kPreconditionFailed).
RepairResult repair_9approx(const Instance& inst);
RepairResult repair_6approx(const Instance& inst);
// Also needs uniform size (kNonUniformSize). Always returns exactly four classes.
RepairResult repair_4approx_uniform(const Instance& inst);

}  // namespace reallocation
