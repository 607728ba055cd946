#include "reallocation/reductions.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>

#include "reallocation/error.hpp"

namespace reallocation {

void check_3partition(const ThreePartitionInstance& tp) {
  if (tp.values.empty() || tp.values.size() % 3 != 0) {
    throw Error(ErrorCode::kInvariantViolated, "3-partition needs 3m values");
  }
  if (tp.bound <= 0) throw Error(ErrorCode::kInvariantViolated, "bound must be positive");
  std::int64_t total = 0;
  for (std::int64_t value : tp.values) {
    if (4 * value <= tp.bound || 2 * value >= tp.bound) {
      throw Error(ErrorCode::kInvariantViolated, "value " + std::to_string(value) + " not strictly between B/4 and B/2");
    }
    total += value;
  }
  if (total != static_cast<std::int64_t>(tp.groups()) * tp.bound) {
    throw Error(ErrorCode::kInvariantViolated, "values do not sum to m * B");
  }
}

bool is_valid_3partition(const ThreePartitionInstance& tp, const Triples& triples) {
  std::vector<int> used(tp.values.size(), 0);
  for (const auto& triple : triples) {
    if (triple.size() != 3) return false;
    std::int64_t sum = 0;
    for (std::size_t i : triple) {
      if (i >= tp.values.size()) return false;
      ++used[i];
      sum += tp.values[i];
    }
    if (sum != tp.bound) return false;
  }
  return std::all_of(used.begin(), used.end(), [](int count) { return count == 1; });
}

std::optional<Triples> solve_3partition(const ThreePartitionInstance& tp) {
  check_3partition(tp);
  const std::size_t vcount = tp.values.size();
  std::vector<bool> used(vcount, false);
  Triples triples;
  std::function<bool()> search = [&]() {
    std::size_t first = 0;
    while (first < vcount && used[first]) ++first;
    if (first == vcount) return true;
    used[first] = true;
    for (std::size_t j = first + 1; j < vcount; ++j) {
      if (used[j]) continue;
      used[j] = true;
      for (std::size_t third = j + 1; third < vcount; ++third) {
        if (used[third] || tp.values[first] + tp.values[j] + tp.values[third] != tp.bound) continue;
        used[third] = true;
        triples.push_back({first, j, third});
        if (search()) return true;
        triples.pop_back();
        used[third] = false;
      }
      used[j] = false;
    }
    used[first] = false;
    return false;
  };
  if (search()) return triples;
  return std::nullopt;
}

Instance from_3partition(const ThreePartitionInstance& tp) {
  check_3partition(tp);
  const Rational bound(tp.bound);
  const ExtRational capacity(Rational(static_cast<long>(tp.groups()) * tp.bound));
  std::vector<Warehouse> warehouses{
      {"w1", capacity, ExtRational(bound), ExtRational::infinity()},
      {"w2", capacity, ExtRational(bound), ExtRational::infinity()},
  };
  std::vector<Product> products;
  for (std::size_t i = 0; i < tp.values.size(); ++i) {
    products.push_back(Product{"x" + std::to_string(i + 1), Rational(tp.values[i]), 0, 1, 1});
  }
  for (std::size_t j = 0; j < tp.groups(); ++j) {
    products.push_back(Product{"b" + std::to_string(j + 1), bound, 1, 0, 1});
  }
  return Instance(std::move(warehouses), std::move(products));
}

Triples induced_partition(const ThreePartitionInstance& tp, const Schedule& sched) {
  std::map<Time, std::vector<std::size_t>> slots;
  for (std::size_t i = 0; i < tp.values.size(); ++i) slots[sched.departures.at(i)].push_back(i);
  Triples triples;
  for (auto& entry : slots) triples.push_back(std::move(entry.second));
  return triples;
}

namespace {

class GadgetBuilder {
 public:
  GadgetBuilder(std::vector<Warehouse>& warehouses, std::vector<Product>& products, const Rational& carry_out)
      : warehouses_(warehouses), products_(products), carry_out_(carry_out) {}

  Gadget build(const Product& original) {
    gadget_ = Gadget{};
    prefix_ = "g:" + original.id;
    edge_counter_ = 0;
    gadget_.product = original.id;
    gadget_.size = floor_to_int(original.size);
    const auto leaf_count = static_cast<std::size_t>(gadget_.size);

    // In-tree: leaves receive from the source; entry/exit are where a tree
    // vertex receives from children and sends to its parent.
    std::vector<Node> u_leaves, v_leaves;
    for (std::size_t i = 1; i <= leaf_count; ++i) u_leaves.push_back(leaf("U", i));
    for (std::size_t i = 1; i <= leaf_count; ++i) v_leaves.push_back(leaf("V", i));
    for (const Node& l : u_leaves) {
      gadget_.u_leaves.push_back(l.entry);
      edge(original.source, l.entry, 1);
    }
    for (const Node& l : v_leaves) gadget_.v_leaves.push_back(l.entry);

    const Node u_root = pair_up(u_leaves, "Tu", gadget_.u_split, /*in_tree=*/true);
    const Node v_root = pair_up(v_leaves, "Tv", gadget_.v_split, /*in_tree=*/false);
    gadget_.u_root = u_root.entry;
    gadget_.v_root = v_root.entry;
    if (leaf_count == 1) {
      // The single leaf is the root; it must hold the size-2 root product.
      warehouses_[u_root.entry].capacity = ExtRational(2L);
      warehouses_[v_root.entry].capacity = ExtRational(2L);
    }
    edge(u_root.exit, v_root.entry, 2);
    for (const Node& l : v_leaves) edge(l.exit, original.sink, 1);
    return gadget_;
  }

 private:
  struct Node {
    std::size_t entry;
    std::size_t exit;
  };

  std::size_t vertex(const std::string& id, long capacity) {
    warehouses_.push_back(Warehouse{id, ExtRational(capacity), ExtRational(carry_out_), ExtRational::infinity()});
    return warehouses_.size() - 1;
  }

  Node leaf(const std::string& side, std::size_t i) {
    const std::size_t vert = vertex(prefix_ + ":" + side + ":" + std::to_string(i), 1);
    return Node{vert, vert};
  }

  void edge(std::size_t from, std::size_t to, long size) {
    const std::string id = prefix_ + ":e" + std::to_string(++edge_counter_);
    products_.push_back(Product{id, Rational(size), from, to, 1});
    gadget_.edges.push_back(products_.size() - 1);
  }

  // Pairs nodes first-in first-out until one root remains. Internal nodes
  // other than the root are split into an entry and an exit vertex joined by
  // a size-2 product.
  Node pair_up(std::vector<Node> leaves, const std::string& tag, std::vector<std::size_t>& split, bool in_tree) {
    std::deque<Node> queue(leaves.begin(), leaves.end());
    std::size_t counter = 0;
    // Number of internal nodes is x - 1; the last one created is the root.
    const std::size_t internal = leaves.size() - 1;
    while (queue.size() > 1) {
      const Node a = queue.front();
      queue.pop_front();
      const Node b = queue.front();
      queue.pop_front();
      ++counter;
      const std::string base = prefix_ + ":" + tag + ":" + std::to_string(counter);
      Node parent{};
      if (counter == internal) {
        const std::size_t root = vertex(base, 2);
        parent = Node{root, root};
      } else {
        parent.entry = vertex(base + ":in", 2);
        parent.exit = vertex(base + ":out", 2);
        split.push_back(parent.entry);
        split.push_back(parent.exit);
        edge(parent.entry, parent.exit, 2);
      }
      if (in_tree) {
        edge(a.exit, parent.entry, 1);
        edge(b.exit, parent.entry, 1);
      } else {
        edge(parent.exit, a.entry, 1);
        edge(parent.exit, b.entry, 1);
      }
      queue.push_back(parent);
    }
    return queue.front();
  }

  std::vector<Warehouse>& warehouses_;
  std::vector<Product>& products_;
  Rational carry_out_;
  Gadget gadget_;
  std::string prefix_;
  std::size_t edge_counter_ = 0;
};

}  // namespace

Size12Expansion size12_expand(const Instance& inst) {
  auto mismatch = [](const std::string& what) { return Error(ErrorCode::kShapeMismatch, what); };
  if (inst.warehouses().size() != 2) throw mismatch("expected exactly two warehouses");
  const Warehouse& first = inst.warehouse(0);
  if (first.carry_out.is_infinite()) throw mismatch("carry_out must be finite");
  const Rational bound = first.carry_out.value();
  if (!is_integer(bound) || bound < 2) throw mismatch("carry_out must be an integer >= 2");
  std::size_t returning = 0;
  for (const Product& prod : inst.products()) {
    if (prod.transit != 1) throw mismatch("transit must be 1");
    if (!is_integer(prod.size) || prod.size < 1) throw mismatch("sizes must be positive integers");
    if (prod.source == 1) {
      if (prod.size != bound) throw mismatch("products leaving the second warehouse must have size B");
      ++returning;
    }
  }
  const ExtRational capacity(Rational(bound * static_cast<long>(returning)));
  for (const Warehouse& house : inst.warehouses()) {
    if (house.carry_in.is_finite()) throw mismatch("carry_in must be unbounded");
    if (!(house.carry_out == first.carry_out)) throw mismatch("carry_out must be the same on both warehouses");
    if (!(house.capacity == capacity)) throw mismatch("capacity must be k * B");
  }
  const Rational carry_out = bound;
  std::vector<Warehouse> warehouses = inst.warehouses();
  std::vector<Product> products;
  std::vector<Gadget> gadgets;
  GadgetBuilder builder(warehouses, products, carry_out);
  for (const Product& prod : inst.products()) gadgets.push_back(builder.build(prod));
  return Size12Expansion{Instance(std::move(warehouses), std::move(products)), std::move(gadgets)};
}

Instance from_binpacking(const BinPackingInstance& bp) {
  std::vector<Warehouse> warehouses{{"u", ExtRational::infinity(), bp.capacity, ExtRational::infinity()}};
  std::vector<Product> products;
  for (const Item& item : bp.items) {
    warehouses.push_back(Warehouse{"w:" + item.id, ExtRational::infinity(), bp.capacity, ExtRational::infinity()});
    products.push_back(Product{item.id, item.size, 0, warehouses.size() - 1, 1});
  }
  return Instance(std::move(warehouses), std::move(products));
}

std::size_t min_bins(const BinPackingInstance& bp) {
  if (bp.items.empty()) return 0;
  if (bp.capacity.is_infinite()) return 1;
  std::vector<Rational> sizes;
  for (const Item& item : bp.items) sizes.push_back(item.size);
  std::sort(sizes.begin(), sizes.end(), std::greater<>());
  std::size_t best = sizes.size();
  std::vector<Rational> loads;
  std::function<void(std::size_t)> place = [&](std::size_t i) {
    if (loads.size() >= best) return;
    if (i == sizes.size()) {
      best = loads.size();
      return;
    }
    for (std::size_t b = 0; b < loads.size(); ++b) {
      if (loads[b] + sizes[i] <= bp.capacity.value()) {
        loads[b] += sizes[i];
        place(i + 1);
        loads[b] -= sizes[i];
      }
    }
    loads.push_back(sizes[i]);
    place(i + 1);
    loads.pop_back();
  };
  place(0);
  return best;
}

Instance from_tmfd(const TmfdInstance& tm) {
  const ExtRational one(1L);
  std::vector<Warehouse> warehouses{{"w1", ExtRational::infinity(), one, one},
                                    {"w2", ExtRational::infinity(), one, one}};
  std::vector<Product> products;
  for (const TmfdJob& job : tm.jobs) {
    if (job.delay < 0) throw Error(ErrorCode::kInvariantViolated, "delays must be nonnegative");
    products.push_back(Product{job.id, Rational(1), 0, 1, job.delay + 1});
  }
  return Instance(std::move(warehouses), std::move(products));
}

TmfdSchedule tmfd_roundtrip(const TmfdInstance& tm, const Schedule& sched) {
  if (sched.departures.size() != tm.jobs.size()) {
    throw Error(ErrorCode::kShapeMismatch, "schedule does not match the job list");
  }
  return sched.departures;
}

Schedule schedule_from_tmfd(const TmfdSchedule& starts) { return Schedule{starts}; }

bool tmfd_feasible(const TmfdInstance& tm, const TmfdSchedule& starts) {
  if (starts.size() != tm.jobs.size()) return false;
  for (std::size_t a = 0; a < starts.size(); ++a) {
    if (starts[a] < 0) return false;
    for (std::size_t b = a + 1; b < starts.size(); ++b) {
      if (starts[a] == starts[b]) return false;
      if (starts[a] + tm.jobs[a].delay == starts[b] + tm.jobs[b].delay) return false;
    }
  }
  return true;
}

Time tmfd_makespan(const TmfdInstance& tm, const TmfdSchedule& starts) {
  Time makespan = 0;
  for (std::size_t j = 0; j < starts.size(); ++j) makespan = std::max(makespan, starts[j] + tm.jobs[j].delay + 2);
  return makespan;
}

Time tmfd_optimum(const TmfdInstance& tm) {
  if (tm.jobs.empty()) return 0;
  const std::size_t job_count = tm.jobs.size();
  TmfdSchedule starts(job_count, 0);
  std::vector<bool> first_busy, second_busy;
  std::function<bool(std::size_t, Time)> fill = [&](std::size_t j, Time target) {
    if (j == job_count) return true;
    const Time delay = tm.jobs[j].delay;
    for (Time sv = 0; sv + delay + 2 <= target; ++sv) {
      const auto second = static_cast<std::size_t>(sv + delay + 1);
      if (first_busy[static_cast<std::size_t>(sv)] || second_busy[second]) continue;
      first_busy[static_cast<std::size_t>(sv)] = second_busy[second] = true;
      starts[j] = sv;
      if (fill(j + 1, target)) return true;
      first_busy[static_cast<std::size_t>(sv)] = second_busy[second] = false;
    }
    return false;
  };
  for (Time target = 2;; ++target) {
    first_busy.assign(static_cast<std::size_t>(target) + 1, false);
    second_busy.assign(static_cast<std::size_t>(target) + 1, false);
    if (fill(0, target)) return target;
  }
}

}  // namespace reallocation
