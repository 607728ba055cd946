#include "reallocation/augment_repair.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

#include "reallocation/error.hpp"
#include "reallocation/lp_rounding.hpp"
#include "reallocation/uniform_exact.hpp"

namespace reallocation {

std::size_t TimeExpandedBipartite::vertex_of(std::size_t warehouse, Side side, Time time) const {
  const auto per_warehouse = static_cast<std::size_t>(horizon + 1);
  const std::size_t half = vertices.size() / 2;
  return (side == Side::kArrival ? half : 0) + warehouse * per_warehouse + static_cast<std::size_t>(time);
}

std::size_t TimeExpandedBipartite::other_end(std::size_t product, std::size_t vertex) const {
  return tail[product] == vertex ? head[product] : tail[product];
}

TimeExpandedBipartite build_time_expanded(const Instance& inst, const Schedule& sched, Time horizon) {
  if (completion_time(inst, sched) > horizon) {
    throw Error(ErrorCode::kHorizonExceeded, "schedule completes after the horizon");
  }
  TimeExpandedBipartite net;
  net.horizon = horizon;
  for (Side side : {Side::kDeparture, Side::kArrival}) {
    for (std::size_t house = 0; house < inst.warehouse_count(); ++house) {
      for (Time tick = 0; tick <= horizon; ++tick) net.vertices.push_back(EventVertex{house, side, tick});
    }
  }
  net.incident.resize(net.vertices.size());
  for (std::size_t prod = 0; prod < inst.product_count(); ++prod) {
    const Product& pr = inst.product(prod);
    net.tail.push_back(net.vertex_of(pr.source, Side::kDeparture, sched.departures[prod]));
    net.head.push_back(net.vertex_of(pr.sink, Side::kArrival, sched.departures[prod] + pr.transit));
    net.incident[net.tail.back()].push_back(prod);
    net.incident[net.head.back()].push_back(prod);
  }
  return net;
}

std::vector<ExtRational> vertex_budgets(const Instance& inst, const TimeExpandedBipartite& net) {
  std::vector<ExtRational> budgets;
  for (const EventVertex& vert : net.vertices) {
    const Warehouse& house = inst.warehouse(vert.warehouse);
    budgets.push_back(vert.side == Side::kDeparture ? house.carry_out : house.carry_in);
  }
  return budgets;
}

namespace {

std::vector<std::size_t> id_rank(const Instance& inst) {
  std::vector<std::size_t> order(inst.product_count());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return inst.product(a).id < inst.product(b).id; });
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  return rank;
}

// Picks an inclusion-minimal set containing, for every vertex with a
// nonempty candidate list, at least one of its candidates.
std::vector<bool> minimal_hitting_set(const std::vector<std::vector<std::size_t>>& candidates,
                                      std::size_t product_count, const std::vector<std::size_t>& rank) {
  std::vector<bool> chosen(product_count, false);
  for (const auto& list : candidates) {
    if (list.empty()) continue;
    chosen[*std::min_element(list.begin(), list.end(),
                             [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; })] = true;
  }
  std::vector<std::vector<std::size_t>> needed_by(product_count);
  std::vector<std::size_t> cover(candidates.size(), 0);
  for (std::size_t vert = 0; vert < candidates.size(); ++vert) {
    for (std::size_t prod : candidates[vert]) {
      needed_by[prod].push_back(vert);
      if (chosen[prod]) ++cover[vert];
    }
  }
  std::vector<std::size_t> order(product_count);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
  for (std::size_t prod : order) {
    if (!chosen[prod]) continue;
    const bool removable =
        std::all_of(needed_by[prod].begin(), needed_by[prod].end(), [&](std::size_t vert) { return cover[vert] >= 2; });
    if (removable) {
      chosen[prod] = false;
      for (std::size_t vert : needed_by[prod]) --cover[vert];
    }
  }
  return chosen;
}

std::vector<std::size_t> largest_of(const Instance& inst, const std::vector<std::size_t>& products,
                                    std::size_t excluded) {
  Rational best = -1;
  for (std::size_t prod : products) {
    if (prod != excluded && inst.product(prod).size > best) best = inst.product(prod).size;
  }
  std::vector<std::size_t> result;
  for (std::size_t prod : products) {
    if (prod != excluded && inst.product(prod).size == best) result.push_back(prod);
  }
  return result;
}

std::size_t lowest_chosen(const std::vector<std::size_t>& list, const std::vector<bool>& chosen,
                          const std::vector<std::size_t>& rank) {
  std::size_t best = QSets::kNoRole;
  for (std::size_t prod : list) {
    if (chosen[prod] && (best == QSets::kNoRole || rank[prod] < rank[best])) best = prod;
  }
  return best;
}

}  // namespace

std::vector<std::size_t> QSets::p1() const {
  std::vector<std::size_t> out;
  for (std::size_t prod = 0; prod < in_q1.size(); ++prod) {
    if (in_q1[prod]) out.push_back(prod);
  }
  return out;
}

std::vector<std::size_t> QSets::p2() const {
  std::vector<std::size_t> out;
  for (std::size_t prod = 0; prod < in_q2.size(); ++prod) {
    if (in_q2[prod] && !in_q1[prod]) out.push_back(prod);
  }
  return out;
}

std::vector<std::size_t> QSets::p3() const {
  std::vector<std::size_t> out;
  for (std::size_t prod = 0; prod < in_q1.size(); ++prod) {
    if (!in_q1[prod] && !in_q2[prod]) out.push_back(prod);
  }
  return out;
}

QSets minimal_q_sets(const Instance& inst, const TimeExpandedBipartite& net) {
  const std::vector<std::size_t> rank = id_rank(inst);
  const std::size_t vcount = net.vertices.size();
  QSets qsets;
  std::vector<std::vector<std::size_t>> first_candidates(vcount);
  for (std::size_t vert = 0; vert < vcount; ++vert) first_candidates[vert] = largest_of(inst, net.incident[vert], QSets::kNoRole);
  qsets.in_q1 = minimal_hitting_set(first_candidates, inst.product_count(), rank);
  qsets.first_role.assign(vcount, QSets::kNoRole);
  for (std::size_t vert = 0; vert < vcount; ++vert) qsets.first_role[vert] = lowest_chosen(first_candidates[vert], qsets.in_q1, rank);

  std::vector<std::vector<std::size_t>> second_candidates(vcount);
  for (std::size_t vert = 0; vert < vcount; ++vert) {
    if (net.incident[vert].size() >= 2) second_candidates[vert] = largest_of(inst, net.incident[vert], qsets.first_role[vert]);
  }
  qsets.in_q2 = minimal_hitting_set(second_candidates, inst.product_count(), rank);
  qsets.second_role.assign(vcount, QSets::kNoRole);
  for (std::size_t vert = 0; vert < vcount; ++vert) qsets.second_role[vert] = lowest_chosen(second_candidates[vert], qsets.in_q2, rank);
  return qsets;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t vcount) : parent(vcount) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t node) {
    while (parent[node] != node) node = parent[node] = parent[parent[node]];
    return node;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

bool is_forest(const TimeExpandedBipartite& net, const std::vector<std::size_t>& edges) {
  DisjointSets sets(net.vertices.size());
  for (std::size_t prod : edges) {
    if (!sets.unite(net.tail[prod], net.head[prod])) return false;
  }
  return true;
}

bool is_feasible_class(const Instance& inst, const TimeExpandedBipartite& net,
                       const std::vector<std::size_t>& edges, const std::vector<ExtRational>& budgets) {
  std::vector<Rational> load(net.vertices.size(), Rational(0));
  for (std::size_t prod : edges) {
    load[net.tail[prod]] += inst.product(prod).size;
    load[net.head[prod]] += inst.product(prod).size;
  }
  for (std::size_t vert = 0; vert < load.size(); ++vert) {
    if (!budgets[vert].admits(load[vert])) return false;
  }
  return true;
}

namespace {

// Splits the edges at one vertex into `wanted` groups within `budget`.
std::vector<std::vector<std::size_t>> vertex_groups(const Instance& inst, std::vector<std::size_t> edges,
                                                    std::size_t wanted, const ExtRational& budget,
                                                    const std::vector<std::size_t>& rank) {
  std::sort(edges.begin(), edges.end(), [&](std::size_t a, std::size_t b) {
    if (inst.product(a).size != inst.product(b).size) return inst.product(a).size > inst.product(b).size;
    return rank[a] < rank[b];
  });
  std::vector<std::vector<std::size_t>> groups(wanted);
  if (budget.is_infinite()) {
    groups[0] = edges;
    return groups;
  }
  std::vector<Rational> room(wanted, budget.value());
  bool greedy_ok = true;
  for (std::size_t prod : edges) {
    const std::size_t g = static_cast<std::size_t>(std::max_element(room.begin(), room.end()) - room.begin());
    if (room[g] < inst.product(prod).size) {
      greedy_ok = false;
      break;
    }
    groups[g].push_back(prod);
    room[g] -= inst.product(prod).size;
  }
  if (greedy_ok) return groups;
  // The k-1 largest edges alone, everything else together.
  groups.assign(wanted, {});
  Rational rest = 0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::size_t g = std::min(i, wanted - 1);
    groups[g].push_back(edges[i]);
    if (g == wanted - 1) rest += inst.product(edges[i]).size;
  }
  if (rest > budget.value()) throw Error(ErrorCode::kBudgetInfeasible, "vertex edges do not split into groups");
  return groups;
}

}  // namespace

EdgePartition forest_partition(const Instance& inst, const TimeExpandedBipartite& net,
                               const std::vector<std::size_t>& edges, std::size_t classes,
                               const std::vector<ExtRational>& budgets) {
  if (classes == 0) throw Error(ErrorCode::kPreconditionFailed, "need at least one class");
  const std::vector<std::size_t> rank = id_rank(inst);
  const std::size_t vcount = net.vertices.size();
  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::vector<std::size_t>> at(vcount);
  for (std::size_t prod : edges) {
    at[net.tail[prod]].push_back(prod);
    at[net.head[prod]].push_back(prod);
  }
  std::vector<std::size_t> class_of(inst.product_count(), kUnassigned);
  std::vector<bool> visited(vcount, false);
  for (std::size_t root = 0; root < vcount; ++root) {
    if (visited[root] || at[root].empty()) continue;
    std::deque<std::pair<std::size_t, std::size_t>> queue{{root, kUnassigned}};  // (vertex, parent edge)
    visited[root] = true;
    while (!queue.empty()) {
      const auto [vert, parent_edge] = queue.front();
      queue.pop_front();
      const auto groups = vertex_groups(inst, at[vert], classes, budgets[vert], rank);
      std::vector<std::size_t> label(classes);
      std::iota(label.begin(), label.end(), 0);
      if (parent_edge != kUnassigned) {
        // Relabel so that the parent edge's group keeps the parent edge's class.
        std::size_t g = 0;
        while (std::find(groups[g].begin(), groups[g].end(), parent_edge) == groups[g].end()) ++g;
        std::swap(label[g], label[class_of[parent_edge]]);
      }
      for (std::size_t g = 0; g < classes; ++g) {
        for (std::size_t prod : groups[g]) {
          if (prod == parent_edge) continue;
          if (class_of[prod] != kUnassigned) throw Error(ErrorCode::kInvariantViolated, "edges contain a cycle");
          class_of[prod] = label[g];
          const std::size_t next = net.other_end(prod, vert);
          if (visited[next]) throw Error(ErrorCode::kInvariantViolated, "edges contain a cycle");
          visited[next] = true;
          queue.emplace_back(next, prod);
        }
      }
    }
  }
  EdgePartition partition(classes);
  for (std::size_t prod : edges) partition[class_of[prod]].push_back(prod);
  for (auto& part : partition) std::sort(part.begin(), part.end());
  return partition;
}

Schedule concatenate_classes(const Schedule& base, const EdgePartition& classes, Time window,
                             std::size_t product_count) {
  Schedule sched;
  sched.departures.assign(product_count, -1);
  Time offset = 0;
  for (const auto& cls : classes) {
    if (cls.empty()) continue;
    for (std::size_t prod : cls) sched.departures[prod] = base.departures[prod] + offset;
    offset += window;
  }
  for (Time tick : sched.departures) {
    if (tick < 0) throw Error(ErrorCode::kInvariantViolated, "classes do not cover every product");
  }
  return sched;
}

namespace {

struct Rounded {
  Time horizon = 0;
  Schedule schedule;
};

Rounded round_at_min_horizon(const Instance& inst) {
  if (!all_capacity_infinite(inst)) {
    throw Error(ErrorCode::kPreconditionFailed, "repair needs unbounded warehouse capacities");
  }
  Rounded rounded;
  rounded.horizon = find_min_horizon(inst);
  if (inst.product_count() > 0) {
    rounded.schedule = iterative_round(inst, rounded.horizon, RoundingMode::kTwoSided).schedule;
  }
  return rounded;
}

std::vector<std::size_t> all_products(const Instance& inst) {
  std::vector<std::size_t> all(inst.product_count());
  std::iota(all.begin(), all.end(), 0);
  return all;
}

RepairResult finish(const Instance& inst, Rounded rounded, EdgePartition classes) {
  RepairResult result;
  result.base_horizon = rounded.horizon;
  result.schedule = concatenate_classes(rounded.schedule, classes, rounded.horizon, inst.product_count());
  result.base = std::move(rounded.schedule);
  result.classes = std::move(classes);
  return result;
}

// Largest and second largest product at a vertex, ties broken by id.
std::pair<std::size_t, std::size_t> top_two_at(const Instance& inst, const std::vector<std::size_t>& products,
                                               const std::vector<std::size_t>& rank) {
  std::vector<std::size_t> sorted = products;
  std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
    if (inst.product(a).size != inst.product(b).size) return inst.product(a).size > inst.product(b).size;
    return rank[a] < rank[b];
  });
  return {sorted.size() > 0 ? sorted[0] : QSets::kNoRole, sorted.size() > 1 ? sorted[1] : QSets::kNoRole};
}

}  // namespace

RepairResult repair_9approx(const Instance& inst) {
  Rounded rounded = round_at_min_horizon(inst);
  if (validate_schedule(inst, rounded.schedule).feasible()) {
    return finish(inst, std::move(rounded), EdgePartition{all_products(inst)});
  }
  const TimeExpandedBipartite net = build_time_expanded(inst, rounded.schedule, rounded.horizon);
  const std::vector<std::size_t> rank = id_rank(inst);
  auto role = [&](std::size_t prod, std::size_t vert) -> std::size_t {
    const auto [first, second] = top_two_at(inst, net.incident[vert], rank);
    if (prod == first) return 0;
    if (prod == second) return 1;
    return 2;
  };
  EdgePartition cells(9);
  for (std::size_t prod = 0; prod < inst.product_count(); ++prod) {
    cells[3 * role(prod, net.tail[prod]) + role(prod, net.head[prod])].push_back(prod);
  }
  return finish(inst, std::move(rounded), std::move(cells));
}

RepairResult repair_6approx(const Instance& inst) {
  Rounded rounded = round_at_min_horizon(inst);
  if (validate_schedule(inst, rounded.schedule).feasible()) {
    return finish(inst, std::move(rounded), EdgePartition{all_products(inst)});
  }
  const TimeExpandedBipartite net = build_time_expanded(inst, rounded.schedule, rounded.horizon);
  const std::vector<ExtRational> budgets = vertex_budgets(inst, net);
  const QSets qsets = minimal_q_sets(inst, net);
  EdgePartition classes = forest_partition(inst, net, qsets.p1(), 3, budgets);
  for (auto& part : forest_partition(inst, net, qsets.p2(), 2, budgets)) classes.push_back(std::move(part));
  classes.push_back(qsets.p3());
  return finish(inst, std::move(rounded), std::move(classes));
}

namespace {

// Cycle in the multigraph formed by `edges`, as consecutive edges; empty when
// the edges form a forest.
std::vector<std::size_t> find_cycle(const TimeExpandedBipartite& net, const std::vector<std::size_t>& edges) {
  DisjointSets sets(net.vertices.size());
  std::vector<std::vector<std::size_t>> tree(net.vertices.size());
  for (std::size_t prod : edges) {
    if (sets.unite(net.tail[prod], net.head[prod])) {
      tree[net.tail[prod]].push_back(prod);
      tree[net.head[prod]].push_back(prod);
      continue;
    }
    // Path from head to tail inside the forest closes the cycle.
    const std::size_t start = net.head[prod];
    const std::size_t goal = net.tail[prod];
    std::vector<std::size_t> via(net.vertices.size(), QSets::kNoRole);
    std::vector<bool> seen(net.vertices.size(), false);
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      const std::size_t vert = queue.front();
      queue.pop_front();
      for (std::size_t eid : tree[vert]) {
        const std::size_t peer = net.other_end(eid, vert);
        if (seen[peer]) continue;
        seen[peer] = true;
        via[peer] = eid;
        queue.push_back(peer);
      }
    }
    std::vector<std::size_t> cycle{prod};
    for (std::size_t vert = goal; vert != start; vert = net.other_end(via[vert], vert)) cycle.push_back(via[vert]);
    return cycle;
  }
  return {};
}

// Matches every vertex of degree >= 3 in `rest` to one incident edge so that
// no vertex meets two chosen edges.
std::vector<std::size_t> saturating_matching(const TimeExpandedBipartite& net, const std::vector<std::size_t>& rest) {
  const std::size_t vcount = net.vertices.size();
  std::vector<std::vector<std::size_t>> at(vcount);
  for (std::size_t prod : rest) {
    at[net.tail[prod]].push_back(prod);
    at[net.head[prod]].push_back(prod);
  }
  std::vector<bool> high(vcount, false);
  for (std::size_t vert = 0; vert < vcount; ++vert) high[vert] = at[vert].size() >= 3;
  for (std::size_t prod : rest) {
    if (high[net.tail[prod]] && high[net.head[prod]]) {
      throw Error(ErrorCode::kInvariantViolated, "two high-degree vertices are adjacent");
    }
  }
  constexpr std::size_t kFree = static_cast<std::size_t>(-1);
  std::vector<std::size_t> edge_at_low(vcount, kFree);  // matched edge at a low vertex
  std::vector<std::size_t> edge_at_high(vcount, kFree);
  std::vector<bool> visited;
  std::function<bool(std::size_t)> augment = [&](std::size_t vert) {
    for (std::size_t eid : at[vert]) {
      const std::size_t peer = net.other_end(eid, vert);
      if (visited[peer]) continue;
      visited[peer] = true;
      if (edge_at_low[peer] == kFree || augment(net.other_end(edge_at_low[peer], peer))) {
        edge_at_low[peer] = eid;
        edge_at_high[vert] = eid;
        return true;
      }
    }
    return false;
  };
  std::vector<std::size_t> matching;
  for (std::size_t vert = 0; vert < vcount; ++vert) {
    if (!high[vert]) continue;
    visited.assign(vcount, false);
    if (!augment(vert)) throw Error(ErrorCode::kInvariantViolated, "no matching saturates the high vertices");
  }
  for (std::size_t vert = 0; vert < vcount; ++vert) {
    if (high[vert]) matching.push_back(edge_at_high[vert]);
  }
  std::sort(matching.begin(), matching.end());
  return matching;
}

}  // namespace

RepairResult repair_4approx_uniform(const Instance& inst) {
  if (!has_uniform_size(inst)) throw Error(ErrorCode::kNonUniformSize, "product sizes differ");
  const Instance unit = normalize_uniform(inst);
  Rounded rounded = round_at_min_horizon(unit);
  const TimeExpandedBipartite net = build_time_expanded(unit, rounded.schedule, rounded.horizon);
  const std::vector<ExtRational> budgets = vertex_budgets(unit, net);
  const std::vector<std::size_t> rank = id_rank(unit);

  std::vector<std::size_t> by_id = all_products(unit);
  std::sort(by_id.begin(), by_id.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
  // E1: maximal feasible subset, greedy in id order.
  std::vector<std::size_t> load(net.vertices.size(), 0);
  std::vector<std::size_t> first, rest;
  for (std::size_t prod : by_id) {
    const bool fits = budgets[net.tail[prod]].admits(Rational(load[net.tail[prod]] + 1)) &&
                      budgets[net.head[prod]].admits(Rational(load[net.head[prod]] + 1));
    if (fits) {
      ++load[net.tail[prod]];
      ++load[net.head[prod]];
      first.push_back(prod);
    } else {
      rest.push_back(prod);
    }
  }
  // E2: one edge at every vertex with at least three leftover edges.
  const std::vector<std::size_t> second = saturating_matching(net, rest);
  std::vector<std::size_t> remaining;
  for (std::size_t prod : rest) {
    if (!std::binary_search(second.begin(), second.end(), prod)) remaining.push_back(prod);
  }
  std::sort(remaining.begin(), remaining.end());
  // E3 / E4: alternate along cycles, then orient the remaining forest from leaves.
  std::vector<std::size_t> third, fourth;
  while (true) {
    const std::vector<std::size_t> cycle = find_cycle(net, remaining);
    if (cycle.empty()) break;
    for (std::size_t i = 0; i < cycle.size(); ++i) (i % 2 == 0 ? third : fourth).push_back(cycle[i]);
    std::vector<std::size_t> kept;
    for (std::size_t prod : remaining) {
      if (std::find(cycle.begin(), cycle.end(), prod) == cycle.end()) kept.push_back(prod);
    }
    remaining = std::move(kept);
  }
  std::vector<std::vector<std::size_t>> at(net.vertices.size());
  for (std::size_t prod : remaining) {
    at[net.tail[prod]].push_back(prod);
    at[net.head[prod]].push_back(prod);
  }
  std::vector<bool> visited(net.vertices.size(), false);
  for (std::size_t root = 0; root < net.vertices.size(); ++root) {
    if (visited[root] || at[root].size() != 1) continue;
    std::deque<std::size_t> queue{root};
    visited[root] = true;
    while (!queue.empty()) {
      const std::size_t vert = queue.front();
      queue.pop_front();
      for (std::size_t prod : at[vert]) {
        const std::size_t peer = net.other_end(prod, vert);
        if (visited[peer]) continue;
        visited[peer] = true;
        (net.vertices[vert].side == Side::kDeparture ? third : fourth).push_back(prod);
        queue.push_back(peer);
      }
    }
  }
  for (auto* part : {&first, &third, &fourth}) std::sort(part->begin(), part->end());
  EdgePartition classes{first, second, third, fourth};
  RepairResult result;
  result.base_horizon = rounded.horizon;
  result.schedule = concatenate_classes(rounded.schedule, classes, rounded.horizon, inst.product_count());
  result.base = std::move(rounded.schedule);
  result.classes = std::move(classes);
  return result;
}

}  // namespace reallocation
