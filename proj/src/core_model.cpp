#include "reallocation/core_model.hpp"

#include <algorithm>
#include <iterator>
#include <set>

#include "reallocation/error.hpp"

namespace reallocation {
namespace {

void check_nonnegative(const ExtRational& value, const std::string& what) {
  if (value.is_finite() && value.value() < 0) {
    throw Error(ErrorCode::kAssumptionViolated, what + " is negative");
  }
}

const WarehouseAugmentation& augmentation_of(const Augmentation& aug, std::size_t house) {
  static const WarehouseAugmentation kNone;
  return aug.empty() ? kNone : aug[house];
}

}  // namespace

Instance::Instance(std::vector<Warehouse> warehouses, std::vector<Product> products)
    : warehouses_(std::move(warehouses)), products_(std::move(products)) {
  outgoing_.resize(warehouses_.size());
  incoming_.resize(warehouses_.size());
  for (std::size_t house = 0; house < warehouses_.size(); ++house) {
    const Warehouse& wh = warehouses_[house];
    if (!warehouse_index_.emplace(wh.id, house).second) {
      throw Error(ErrorCode::kDuplicateId, "warehouse '" + wh.id + "' defined twice");
    }
    check_nonnegative(wh.capacity, "capacity of " + wh.id);
    check_nonnegative(wh.carry_out, "carry_out of " + wh.id);
    check_nonnegative(wh.carry_in, "carry_in of " + wh.id);
  }
  for (std::size_t prod = 0; prod < products_.size(); ++prod) {
    const Product& pr = products_[prod];
    if (!product_index_.emplace(pr.id, prod).second) {
      throw Error(ErrorCode::kDuplicateId, "product '" + pr.id + "' defined twice");
    }
    if (pr.source >= warehouses_.size() || pr.sink >= warehouses_.size()) {
      throw Error(ErrorCode::kUnknownWarehouse, "product '" + pr.id + "' references a missing warehouse");
    }
    if (pr.source == pr.sink) {
      throw Error(ErrorCode::kSelfLoop, "product '" + pr.id + "' has source == sink");
    }
    if (pr.transit < 1) {
      throw Error(ErrorCode::kAssumptionViolated, "product '" + pr.id + "' has transit < 1");
    }
    if (pr.size < 0) {
      throw Error(ErrorCode::kAssumptionViolated, "product '" + pr.id + "' has negative size");
    }
    if (!warehouses_[pr.source].carry_out.admits(pr.size)) {
      throw Error(ErrorCode::kAssumptionViolated,
                  "size of '" + pr.id + "' exceeds carry_out of its source");
    }
    if (!warehouses_[pr.sink].carry_in.admits(pr.size)) {
      throw Error(ErrorCode::kAssumptionViolated,
                  "size of '" + pr.id + "' exceeds carry_in of its sink");
    }
    outgoing_[pr.source].push_back(prod);
    incoming_[pr.sink].push_back(prod);
  }
  for (std::size_t house = 0; house < warehouses_.size(); ++house) {
    if (!warehouses_[house].capacity.admits(outgoing_size(house))) {
      throw Error(ErrorCode::kAssumptionViolated,
                  "initial contents of '" + warehouses_[house].id + "' exceed its capacity");
    }
    if (!warehouses_[house].capacity.admits(incoming_size(house))) {
      throw Error(ErrorCode::kAssumptionViolated,
                  "final contents of '" + warehouses_[house].id + "' exceed its capacity");
    }
  }
}

std::optional<std::size_t> Instance::find_warehouse(const std::string& id) const {
  auto it = warehouse_index_.find(id);
  if (it == warehouse_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Instance::find_product(const std::string& id) const {
  auto it = product_index_.find(id);
  if (it == product_index_.end()) return std::nullopt;
  return it->second;
}

Rational Instance::outgoing_size(std::size_t house) const {
  Rational total = 0;
  for (std::size_t prod : outgoing_[house]) total += products_[prod].size;
  return total;
}

Rational Instance::incoming_size(std::size_t house) const {
  Rational total = 0;
  for (std::size_t prod : incoming_[house]) total += products_[prod].size;
  return total;
}

Time Instance::max_transit() const {
  Time best = 0;
  for (const Product& prod : products_) best = std::max(best, prod.transit);
  return best;
}

Time Instance::min_transit() const {
  if (products_.empty()) return 0;
  Time best = products_.front().transit;
  for (const Product& prod : products_) best = std::min(best, prod.transit);
  return best;
}

Instance make_instance(std::vector<Warehouse> warehouses, std::vector<ProductRecord> products) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t house = 0; house < warehouses.size(); ++house) index.emplace(warehouses[house].id, house);
  std::vector<Product> resolved;
  resolved.reserve(products.size());
  for (ProductRecord& rec : products) {
    auto source_it = index.find(rec.source);
    auto sink_it = index.find(rec.sink);
    if (source_it == index.end() || sink_it == index.end()) {
      throw Error(ErrorCode::kUnknownWarehouse,
                  "product '" + rec.id + "' references unknown warehouse '" +
                      (source_it == index.end() ? rec.source : rec.sink) + "'");
    }
    resolved.push_back(Product{std::move(rec.id), std::move(rec.size), source_it->second, sink_it->second, rec.transit});
  }
  return Instance(std::move(warehouses), std::move(resolved));
}

Schedule schedule_from_map(const Instance& inst,
                           const std::vector<std::pair<std::string, Time>>& departures) {
  Schedule sched;
  sched.departures.assign(inst.product_count(), -1);
  std::vector<bool> seen(inst.product_count(), false);
  for (const auto& [id, time] : departures) {
    auto prod = inst.find_product(id);
    if (!prod) throw Error(ErrorCode::kUnknownProduct, "schedule names unknown product '" + id + "'");
    if (time < 0) throw Error(ErrorCode::kInvalidDocument, "negative departure for '" + id + "'");
    sched.departures[*prod] = time;
    seen[*prod] = true;
  }
  for (std::size_t prod = 0; prod < seen.size(); ++prod) {
    if (!seen[prod]) {
      throw Error(ErrorCode::kMissingField, "no departure for product '" + inst.product(prod).id + "'");
    }
  }
  return sched;
}

std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::kCarryOut: return "carry-out";
    case ConstraintKind::kCarryIn: return "carry-in";
    case ConstraintKind::kWarehouse: return "warehouse";
  }
  return "unknown";
}

ValidationReport validate_schedule(const Instance& inst, const Schedule& sched, const Augmentation& aug) {
  if (sched.departures.size() != inst.product_count()) {
    throw Error(ErrorCode::kUnknownProduct, "schedule does not match the instance's products");
  }
  if (!aug.empty() && aug.size() != inst.warehouse_count()) {
    throw Error(ErrorCode::kUnknownWarehouse, "augmentation does not match the instance's warehouses");
  }
  for (Time tick : sched.departures) {
    if (tick < 0) throw Error(ErrorCode::kInvalidDocument, "negative departure time");
  }
  const Time horizon = completion_time(inst, sched);
  ValidationReport report;
  for (std::size_t house = 0; house < inst.warehouse_count(); ++house) {
    const Warehouse& wh = inst.warehouse(house);
    const WarehouseAugmentation& extra = augmentation_of(aug, house);
    const ExtRational out_limit = wh.carry_out + extra.carry_out;
    const ExtRational in_limit = wh.carry_in + extra.carry_in;
    const ExtRational cap_limit = wh.capacity + extra.capacity;

    std::set<Time> checkpoints{0, horizon};
    for (std::size_t prod : inst.outgoing(house)) {
      checkpoints.insert(sched.departures[prod]);
      if (sched.departures[prod] + 1 <= horizon) checkpoints.insert(sched.departures[prod] + 1);
    }
    for (std::size_t prod : inst.incoming(house)) {
      checkpoints.insert(sched.departures[prod] + inst.product(prod).transit);
    }
    for (auto it = checkpoints.begin(); it != checkpoints.end(); ++it) {
      const Time moment = *it;
      // Occupancy is constant up to the next checkpoint.
      const Time until = std::next(it) == checkpoints.end() ? moment : *std::next(it) - 1;
      Rational out_load = 0;
      Rational in_load = 0;
      Rational occupancy = 0;
      for (std::size_t prod : inst.outgoing(house)) {
        if (sched.departures[prod] == moment) out_load += inst.product(prod).size;
        if (sched.departures[prod] >= moment) occupancy += inst.product(prod).size;
      }
      for (std::size_t prod : inst.incoming(house)) {
        const Time arrival = sched.departures[prod] + inst.product(prod).transit;
        if (arrival == moment) in_load += inst.product(prod).size;
        if (arrival <= moment) occupancy += inst.product(prod).size;
      }
      if (!out_limit.admits(out_load)) {
        report.violations.push_back({house, moment, ConstraintKind::kCarryOut, out_load, out_limit});
      }
      if (!in_limit.admits(in_load)) {
        report.violations.push_back({house, moment, ConstraintKind::kCarryIn, in_load, in_limit});
      }
      if (!cap_limit.admits(occupancy)) {
        for (Time tick = moment; tick <= until; ++tick) {
          report.violations.push_back({house, tick, ConstraintKind::kWarehouse, occupancy, cap_limit});
        }
      }
    }
  }
  return report;
}

Time completion_time(const Instance& inst, const Schedule& sched) {
  Time best = 0;
  for (std::size_t prod = 0; prod < inst.product_count(); ++prod) {
    best = std::max(best, sched.departures[prod] + inst.product(prod).transit);
  }
  return best;
}

namespace {

std::int64_t rounds(const Rational& total, const ExtRational& limit) {
  if (total == 0 || limit.is_infinite()) return 0;
  return ceil_to_int(Rational(total / limit.value()));
}

}  // namespace

std::int64_t rho(const Instance& inst, std::size_t house) {
  const Warehouse& wh = inst.warehouse(house);
  return std::max(rounds(inst.outgoing_size(house), wh.carry_out), rounds(inst.incoming_size(house), wh.carry_in));
}

std::int64_t rho_max(const Instance& inst) {
  std::int64_t best = 0;
  for (std::size_t house = 0; house < inst.warehouse_count(); ++house) best = std::max(best, rho(inst, house));
  return best;
}

Time lower_bound(const Instance& inst) {
  if (inst.product_count() == 0) throw Error(ErrorCode::kEmptyInstance, "no products");
  // Every product needs a round even when no carry limit is finite.
  return std::max<std::int64_t>(rho_max(inst), 1) + inst.min_transit() - 1;
}

Schedule solve_trivial(const Instance& inst) {
  if (!all_carry_out_infinite(inst) || !all_carry_in_infinite(inst)) {
    throw Error(ErrorCode::kPreconditionFailed, "trivial solver needs infinite carry capacities");
  }
  return Schedule{std::vector<Time>(inst.product_count(), 0)};
}

bool has_uniform_size(const Instance& inst) {
  const auto& ps = inst.products();
  return std::all_of(ps.begin(), ps.end(), [&](const Product& prod) { return prod.size == ps.front().size; });
}

bool has_uniform_transit(const Instance& inst) {
  const auto& ps = inst.products();
  return std::all_of(ps.begin(), ps.end(), [&](const Product& prod) { return prod.transit == ps.front().transit; });
}

bool all_capacity_infinite(const Instance& inst) {
  const auto& ws = inst.warehouses();
  return std::all_of(ws.begin(), ws.end(), [](const Warehouse& house) { return house.capacity.is_infinite(); });
}

bool all_carry_out_infinite(const Instance& inst) {
  const auto& ws = inst.warehouses();
  return std::all_of(ws.begin(), ws.end(), [](const Warehouse& house) { return house.carry_out.is_infinite(); });
}

bool all_carry_in_infinite(const Instance& inst) {
  const auto& ws = inst.warehouses();
  return std::all_of(ws.begin(), ws.end(), [](const Warehouse& house) { return house.carry_in.is_infinite(); });
}

Instance reversed(const Instance& inst) {
  std::vector<Warehouse> warehouses = inst.warehouses();
  for (Warehouse& house : warehouses) std::swap(house.carry_out, house.carry_in);
  std::vector<Product> products = inst.products();
  for (Product& prod : products) std::swap(prod.source, prod.sink);
  return Instance(std::move(warehouses), std::move(products));
}

Schedule unreverse_schedule(const Instance& inst, const Schedule& reversed_schedule) {
  const Time horizon = completion_time(inst, reversed_schedule);
  Schedule sched;
  sched.departures.reserve(inst.product_count());
  for (std::size_t prod = 0; prod < inst.product_count(); ++prod) {
    sched.departures.push_back(horizon - reversed_schedule.departures[prod] - inst.product(prod).transit);
  }
  return sched;
}

}  // namespace reallocation
