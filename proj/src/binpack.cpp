#include "reallocation/binpack.hpp"

#include <algorithm>
#include <numeric>

#include "reallocation/error.hpp"

namespace reallocation {

bool is_valid_packing(const BinPackingInstance& bp, const Packing& packing) {
  std::vector<int> seen(bp.items.size(), 0);
  for (const auto& bin : packing) {
    Rational load = 0;
    for (std::size_t i : bin) {
      if (i >= bp.items.size()) return false;
      ++seen[i];
      load += bp.items[i].size;
    }
    if (!bp.capacity.admits(load)) return false;
  }
  return std::all_of(seen.begin(), seen.end(), [](int hits) { return hits == 1; });
}

BinPackingInstance to_binpacking(const Instance& inst, std::size_t house) {
  if (!all_capacity_infinite(inst)) {
    throw Error(ErrorCode::kPreconditionFailed, "bin packing needs unbounded warehouse capacities");
  }
  BinPackingInstance bp;
  const std::vector<std::size_t>* products = nullptr;
  if (all_carry_in_infinite(inst)) {
    products = &inst.outgoing(house);
    bp.capacity = inst.warehouse(house).carry_out;
  } else if (all_carry_out_infinite(inst)) {
    products = &inst.incoming(house);
    bp.capacity = inst.warehouse(house).carry_in;
  } else {
    throw Error(ErrorCode::kPreconditionFailed, "bin packing needs one carry side unbounded");
  }
  for (std::size_t prod : *products) bp.items.push_back(Item{inst.product(prod).id, inst.product(prod).size});
  return bp;
}

Packing first_fit(const BinPackingInstance& bp, const std::vector<std::size_t>& order) {
  Packing bins;
  std::vector<Rational> loads;
  for (std::size_t i : order) {
    const Rational& size = bp.items[i].size;
    std::size_t b = 0;
    while (b < bins.size() && !bp.capacity.admits(Rational(loads[b] + size))) ++b;
    if (b == bins.size()) {
      bins.emplace_back();
      loads.emplace_back(0);
    }
    bins[b].push_back(i);
    loads[b] += size;
  }
  return bins;
}

Packing ffd(const BinPackingInstance& bp) {
  std::vector<std::size_t> order(bp.items.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (bp.items[a].size != bp.items[b].size) return bp.items[a].size > bp.items[b].size;
    return bp.items[a].id < bp.items[b].id;
  });
  return first_fit(bp, order);
}

Packing ff_by_transit(const BinPackingInstance& bp, const std::map<std::string, Time>& transit) {
  std::vector<Time> key;
  for (const Item& item : bp.items) {
    auto it = transit.find(item.id);
    if (it == transit.end()) throw Error(ErrorCode::kMissingTransit, "no transit time for item '" + item.id + "'");
    key.push_back(it->second);
  }
  std::vector<std::size_t> order(bp.items.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (key[a] != key[b]) return key[a] > key[b];
    return bp.items[a].id < bp.items[b].id;
  });
  return first_fit(bp, order);
}

std::string_view to_string(BinStrategy strategy) {
  switch (strategy) {
    case BinStrategy::kFfd: return "ffd";
    case BinStrategy::kFfByTransit: return "ff-by-transit";
    case BinStrategy::kUniformSize: return "uniform-size";
  }
  return "unknown";
}

namespace {

// Direct case: carry_in unbounded, bins are departure rounds of P+(w).
Schedule pack_departures(const Instance& inst, BinStrategy strategy) {
  std::map<std::string, Time> transit;
  for (const Product& prod : inst.products()) transit.emplace(prod.id, prod.transit);
  Schedule sched;
  sched.departures.assign(inst.product_count(), 0);
  for (std::size_t house = 0; house < inst.warehouse_count(); ++house) {
    const BinPackingInstance bp = to_binpacking(inst, house);
    const Packing packing = strategy == BinStrategy::kFfd ? ffd(bp) : ff_by_transit(bp, transit);
    for (std::size_t bin = 0; bin < packing.size(); ++bin) {
      for (std::size_t i : packing[bin]) sched.departures[inst.outgoing(house)[i]] = static_cast<Time>(bin);
    }
  }
  return sched;
}

}  // namespace

Schedule schedule_per_warehouse(const Instance& inst, BinStrategy strategy) {
  if (!all_capacity_infinite(inst)) {
    throw Error(ErrorCode::kPreconditionFailed, "bin packing needs unbounded warehouse capacities");
  }
  if (strategy == BinStrategy::kFfd && !has_uniform_transit(inst)) {
    throw Error(ErrorCode::kPreconditionFailed, "ffd needs uniform transit times");
  }
  if (strategy == BinStrategy::kUniformSize && !has_uniform_size(inst)) {
    throw Error(ErrorCode::kPreconditionFailed, "uniform-size strategy needs uniform product size");
  }
  if (all_carry_in_infinite(inst)) return pack_departures(inst, strategy);
  if (all_carry_out_infinite(inst)) {
    // Arrival rounds of the mirror become departure rounds.
    return unreverse_schedule(inst, pack_departures(reversed(inst), strategy));
  }
  throw Error(ErrorCode::kPreconditionFailed, "bin packing needs one carry side unbounded");
}

}  // namespace reallocation
