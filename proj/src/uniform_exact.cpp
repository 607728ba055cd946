#include "reallocation/uniform_exact.hpp"

#include <algorithm>
#include <numeric>

#include "reallocation/error.hpp"

namespace reallocation {
namespace {

ExtRational floor_divide(const ExtRational& value, const Rational& ki) {
  if (value.is_infinite()) return value;
  return ExtRational(Rational(floor_to_int(Rational(value.value() / ki))));
}

std::vector<std::size_t> sorted_by_id(const Instance& inst, std::vector<std::size_t> products) {
  std::sort(products.begin(), products.end(),
            [&](std::size_t a, std::size_t b) { return inst.product(a).id < inst.product(b).id; });
  return products;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

}  // namespace

Instance normalize_uniform(const Instance& inst) {
  if (!has_uniform_size(inst)) throw Error(ErrorCode::kNonUniformSize, "product sizes differ");
  if (inst.product_count() == 0) return inst;
  const Rational ki = inst.product(0).size;
  if (ki <= 0) throw Error(ErrorCode::kPreconditionFailed, "uniform size must be positive");
  std::vector<Warehouse> warehouses = inst.warehouses();
  for (Warehouse& house : warehouses) {
    house.capacity = floor_divide(house.capacity, ki);
    house.carry_out = floor_divide(house.carry_out, ki);
    house.carry_in = floor_divide(house.carry_in, ki);
  }
  std::vector<Product> products = inst.products();
  for (Product& prod : products) prod.size = 1;
  return Instance(std::move(warehouses), std::move(products));
}

std::size_t SplitInstance::extra_count() const {
  return static_cast<std::size_t>(
      std::count_if(products.begin(), products.end(), [](const SplitProduct& prod) { return prod.extra; }));
}

std::size_t SplitInstance::out_count(std::size_t sub) const {
  return static_cast<std::size_t>(
      std::count_if(products.begin(), products.end(), [sub](const SplitProduct& prod) { return prod.source == sub; }));
}

std::size_t SplitInstance::in_count(std::size_t sub) const {
  return static_cast<std::size_t>(
      std::count_if(products.begin(), products.end(), [sub](const SplitProduct& prod) { return prod.sink == sub; }));
}

DemandGraph SplitInstance::graph() const {
  DemandGraph g;
  for (const SubWarehouse& sv : subs) g.vertices.push_back(sv.id);
  for (const SplitProduct& prod : products) g.arcs.push_back(Arc{prod.id, prod.source, prod.sink});
  return g;
}

SplitInstance split_warehouses(const Instance& unit) {
  for (const Product& prod : unit.products()) {
    if (prod.size != 1) throw Error(ErrorCode::kNonUniformSize, "split needs unit sizes");
  }
  for (const Warehouse& house : unit.warehouses()) {
    for (const ExtRational* vert : {&house.capacity, &house.carry_out, &house.carry_in}) {
      if (vert->is_finite() && !is_integer(vert->value())) {
        throw Error(ErrorCode::kPreconditionFailed, "split needs integral capacities");
      }
    }
  }
  SplitInstance split;
  split.unit = unit;
  // With every carry capacity unbounded rho_max is 0, yet one round is still needed.
  split.rounds = std::max<std::int64_t>(rho_max(unit), unit.product_count() > 0 ? 1 : 0);
  const std::int64_t rounds = std::max<std::int64_t>(split.rounds, 1);

  split.products.resize(unit.product_count());
  split.subs_of.resize(unit.warehouse_count());
  for (std::size_t house = 0; house < unit.warehouse_count(); ++house) {
    const auto out = static_cast<std::int64_t>(unit.outgoing(house).size());
    const auto in = static_cast<std::int64_t>(unit.incoming(house).size());
    const std::int64_t pieces = std::max({ceil_div(out, rounds), ceil_div(in, rounds), std::int64_t{1}});
    const ExtRational& cap = unit.warehouse(house).capacity;
    for (std::int64_t i = 1; i <= pieces; ++i) {
      SubWarehouse sub;
      sub.id = unit.warehouse(house).id + "#" + std::to_string(i);
      sub.parent = house;
      sub.index = static_cast<std::size_t>(i);
      if (cap.is_infinite()) {
        sub.capacity = cap;
      } else {
        sub.capacity = i < pieces ? ExtRational(Rational(rounds)) : ExtRational(Rational(cap.value() - rounds * (pieces - 1)));
      }
      split.subs_of[house].push_back(split.subs.size());
      split.subs.push_back(std::move(sub));
    }
    const auto outgoing = sorted_by_id(unit, unit.outgoing(house));
    for (std::size_t j = 0; j < outgoing.size(); ++j) {
      split.products[outgoing[j]].source = split.subs_of[house][j / static_cast<std::size_t>(rounds)];
    }
    const auto incoming = sorted_by_id(unit, unit.incoming(house));
    for (std::size_t j = 0; j < incoming.size(); ++j) {
      split.products[incoming[j]].sink = split.subs_of[house][j / static_cast<std::size_t>(rounds)];
    }
  }
  for (std::size_t prod = 0; prod < unit.product_count(); ++prod) {
    split.products[prod].id = unit.product(prod).id;
    split.products[prod].original = prod;
  }
  return split;
}

SplitInstance balance(SplitInstance split) {
  std::vector<std::size_t> order(split.subs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const SubWarehouse& val = split.subs[a];
    const SubWarehouse& y = split.subs[b];
    const std::string& xw = split.unit.warehouse(val.parent).id;
    const std::string& yw = split.unit.warehouse(y.parent).id;
    return xw != yw ? xw < yw : val.index < y.index;
  });
  std::vector<std::int64_t> out(split.subs.size(), 0), in(split.subs.size(), 0);
  for (const SplitProduct& prod : split.products) {
    ++out[prod.source];
    ++in[prod.sink];
  }
  // Units of missing departures (senders) and missing arrivals (receivers).
  std::vector<std::size_t> senders, receivers;
  for (std::size_t val : order) {
    for (std::int64_t ki = out[val]; ki < in[val]; ++ki) senders.push_back(val);
    for (std::int64_t ki = in[val]; ki < out[val]; ++ki) receivers.push_back(val);
  }
  for (std::size_t ki = 0; ki < senders.size(); ++ki) {
    SplitProduct extra;
    extra.id = "extra:" + std::to_string(ki + 1);
    extra.source = senders[ki];
    extra.sink = receivers[ki];
    extra.extra = true;
    split.products.push_back(std::move(extra));
  }
  return split;
}

UniformTrace solve_uniform_traced(const Instance& inst) {
  if (!has_uniform_size(inst)) throw Error(ErrorCode::kNonUniformSize, "product sizes differ");
  if (!has_uniform_transit(inst)) throw Error(ErrorCode::kNonUniformTransit, "transit times differ");
  UniformTrace trace;
  trace.split = balance(split_warehouses(normalize_uniform(inst)));
  trace.schedule.departures.assign(inst.product_count(), 0);
  if (inst.product_count() == 0) return trace;
  const auto degree_cap = static_cast<std::size_t>(trace.split.rounds);
  const DemandGraph g = trace.split.graph();
  const BipartiteDoubling net = double_and_regularize(g, degree_cap);
  const std::vector<Matching> matchings = decompose_into_matchings(net, degree_cap);
  for (std::size_t slot = 0; slot < matchings.size(); ++slot) {
    CycleFamily family = matching_to_cycle_family(matchings[slot], net);
    for (std::size_t a : family.arcs) {
      const SplitProduct& prod = trace.split.products[a];
      if (!prod.extra) trace.schedule.departures[prod.original] = static_cast<Time>(slot);
    }
    trace.slices.push_back(std::move(family));
  }
  return trace;
}

Schedule solve_uniform(const Instance& inst) { return solve_uniform_traced(inst).schedule; }

namespace {

// The slot assignment ignores transit times; correct whenever arrivals are unconstrained.
Schedule slots_ignoring_transit(const Instance& inst) {
  Schedule sched;
  sched.departures.assign(inst.product_count(), 0);
  if (inst.product_count() == 0) return sched;
  const SplitInstance split = balance(split_warehouses(normalize_uniform(inst)));
  const auto degree_cap = static_cast<std::size_t>(split.rounds);
  const BipartiteDoubling net = double_and_regularize(split.graph(), degree_cap);
  const std::vector<Matching> matchings = decompose_into_matchings(net, degree_cap);
  for (std::size_t slot = 0; slot < matchings.size(); ++slot) {
    for (std::size_t a : matching_to_cycle_family(matchings[slot], net).arcs) {
      if (!split.products[a].extra) sched.departures[split.products[a].original] = static_cast<Time>(slot);
    }
  }
  return sched;
}

}  // namespace

Schedule solve_uniform_2approx(const Instance& inst) {
  if (!has_uniform_size(inst)) throw Error(ErrorCode::kNonUniformSize, "product sizes differ");
  if (has_uniform_transit(inst)) return solve_uniform(inst);
  if (all_carry_in_infinite(inst)) return slots_ignoring_transit(inst);
  if (all_carry_out_infinite(inst)) {
    const Instance mirror = reversed(inst);
    return unreverse_schedule(inst, slots_ignoring_transit(mirror));
  }
  throw Error(ErrorCode::kPreconditionFailed, "needs carry_in or carry_out unbounded everywhere");
}

}  // namespace reallocation
