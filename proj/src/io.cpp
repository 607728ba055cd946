#include "reallocation/io.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>

#include "reallocation/augment_repair.hpp"
#include "reallocation/error.hpp"
#include "reallocation/oracle.hpp"
#include "reallocation/uniform_exact.hpp"

namespace reallocation {
namespace {

const Json& require(const Json& doc, const char* key, const std::string& where) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw Error(ErrorCode::kMissingField, where + " lacks field '" + key + "'");
  }
  return doc.at(key);
}

std::string require_string(const Json& doc, const char* key, const std::string& where) {
  const Json& value = require(doc, key, where);
  if (!value.is_string()) throw Error(ErrorCode::kInvalidDocument, where + ": '" + key + "' must be a string");
  return value.get<std::string>();
}

std::int64_t integer_from_json(const Json& value, const std::string& what) {
  if (value.is_number_integer()) return value.get<std::int64_t>();
  if (value.is_number_unsigned()) return static_cast<std::int64_t>(value.get<std::uint64_t>());
  if (value.is_number_float() || value.is_string()) {
    const Rational number = rational_from_json(value);
    if (is_integer(number)) return floor_to_int(number);
  }
  throw Error(ErrorCode::kInvalidDocument, what + " must be an integer");
}

Json rational_json(const Rational& value) {
  if (is_integer(value)) return floor_to_int(value);
  return format_rational(value);
}

Json ext_rational_json(const ExtRational& value) {
  if (value.is_infinite()) return "inf";
  return rational_json(value.value());
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidDocument, "cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& ex) {
    throw Error(ErrorCode::kInvalidDocument, "'" + path + "': " + ex.what());
  }
}

void save_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kInvalidDocument, "cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

Rational rational_from_json(const Json& value) {
  if (value.is_number_integer() || value.is_number_unsigned()) return parse_rational(value.dump());
  // Floats are re-read from their shortest round-trip text so "0.1" stays 1/10.
  if (value.is_number_float()) return parse_rational(value.dump());
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(ErrorCode::kInvalidDocument, "bad number '" + value.get<std::string>() + "'");
    }
  }
  throw Error(ErrorCode::kInvalidDocument, "expected a number, got " + value.dump());
}

ExtRational ext_rational_from_json(const Json& value) {
  if (value.is_string()) return parse_ext_rational(value.get<std::string>());
  return ExtRational(rational_from_json(value));
}

Instance instance_from_json(const Json& doc) {
  const Json& ws = require(doc, "warehouses", "instance");
  const Json& ps = require(doc, "products", "instance");
  if (!ws.is_array() || !ps.is_array()) {
    throw Error(ErrorCode::kInvalidDocument, "warehouses and products must be arrays");
  }
  std::vector<Warehouse> warehouses;
  for (const Json& house : ws) {
    const std::string id = require_string(house, "id", "warehouse");
    const std::string where = "warehouse '" + id + "'";
    warehouses.push_back(Warehouse{id, ext_rational_from_json(require(house, "capacity", where)),
                                   ext_rational_from_json(require(house, "carry_out", where)),
                                   ext_rational_from_json(require(house, "carry_in", where))});
  }
  std::vector<ProductRecord> products;
  for (const Json& prod : ps) {
    const std::string id = require_string(prod, "id", "product");
    const std::string where = "product '" + id + "'";
    products.push_back(ProductRecord{id, rational_from_json(require(prod, "size", where)),
                                     require_string(prod, "source", where), require_string(prod, "sink", where),
                                     integer_from_json(require(prod, "transit", where), where + " transit")});
  }
  return make_instance(std::move(warehouses), std::move(products));
}

Json instance_to_json(const Instance& inst) {
  Json ws = Json::array();
  for (const Warehouse& house : inst.warehouses()) {
    ws.push_back({{"id", house.id},
                  {"capacity", ext_rational_json(house.capacity)},
                  {"carry_out", ext_rational_json(house.carry_out)},
                  {"carry_in", ext_rational_json(house.carry_in)}});
  }
  Json ps = Json::array();
  for (const Product& prod : inst.products()) {
    ps.push_back({{"id", prod.id},
                  {"size", rational_json(prod.size)},
                  {"source", inst.warehouse(prod.source).id},
                  {"sink", inst.warehouse(prod.sink).id},
                  {"transit", prod.transit}});
  }
  return {{"warehouses", ws}, {"products", ps}};
}

Schedule schedule_from_json(const Instance& inst, const Json& doc) {
  const Json& deps = require(doc, "departures", "schedule");
  if (!deps.is_object()) throw Error(ErrorCode::kInvalidDocument, "departures must be an object");
  std::vector<std::pair<std::string, Time>> entries;
  for (const auto& [id, value] : deps.items()) {
    entries.emplace_back(id, integer_from_json(value, "departure of '" + id + "'"));
  }
  return schedule_from_map(inst, entries);
}

Json schedule_to_json(const Instance& inst, const Schedule& sched) {
  Json deps = Json::object();
  for (std::size_t prod = 0; prod < inst.products().size(); ++prod) deps[inst.product(prod).id] = sched.departures.at(prod);
  return {{"departures", deps}};
}

Augmentation augmentation_from_json(const Instance& inst, const Json& doc) {
  const Json& ws = require(doc, "warehouses", "augmentation");
  if (!ws.is_array()) throw Error(ErrorCode::kInvalidDocument, "augmentation warehouses must be an array");
  Augmentation aug(inst.warehouses().size());
  for (const Json& entry : ws) {
    const std::string id = require_string(entry, "id", "augmentation entry");
    const auto house = inst.find_warehouse(id);
    if (!house) throw Error(ErrorCode::kUnknownWarehouse, "augmentation names unknown warehouse '" + id + "'");
    auto field = [&](const char* key) { return entry.contains(key) ? rational_from_json(entry.at(key)) : Rational(0); };
    aug[*house] = WarehouseAugmentation{field("dc"), field("dout"), field("din")};
  }
  return aug;
}

Json augmentation_to_json(const Instance& inst, const Augmentation& aug) {
  Json ws = Json::array();
  for (std::size_t house = 0; house < aug.size(); ++house) {
    ws.push_back({{"id", inst.warehouse(house).id},
                  {"dc", rational_json(aug[house].capacity)},
                  {"dout", rational_json(aug[house].carry_out)},
                  {"din", rational_json(aug[house].carry_in)}});
  }
  return {{"warehouses", ws}};
}

Json validation_to_json(const Instance& inst, const ValidationReport& report) {
  Json violations = Json::array();
  for (const Violation& viol : report.violations) {
    violations.push_back({{"warehouse", inst.warehouse(viol.warehouse).id},
                          {"time", viol.time},
                          {"kind", std::string(to_string(viol.kind))},
                          {"load", rational_json(viol.load)},
                          {"limit", ext_rational_json(viol.limit)}});
  }
  return {{"feasible", report.feasible()}, {"violations", violations}};
}

Json augmentation_report_to_json(const Instance& inst, const AugmentationReport& report) {
  Json loads = Json::array();
  for (const CarryLoad& l : report.loads) {
    loads.push_back({{"warehouse", inst.warehouse(l.warehouse).id},
                     {"time", l.time},
                     {"kind", std::string(to_string(l.kind))},
                     {"load", rational_json(l.load)},
                     {"limit", ext_rational_json(l.limit)},
                     {"largest", rational_json(l.largest)},
                     {"second", rational_json(l.second)}});
  }
  Json peaks = Json::array();
  for (const OccupancyPeak& pk : report.peaks) {
    peaks.push_back({{"warehouse", inst.warehouse(pk.warehouse).id},
                     {"time", pk.time},
                     {"load", rational_json(pk.load)},
                     {"capacity", ext_rational_json(pk.capacity)}});
  }
  return {{"loads", loads},
          {"occupancy_peaks", peaks},
          {"bounds",
           {{"set_pair", report.set_pair_bounds},
            {"set_single_out", report.set_single_out_bounds},
            {"set_single_in", report.set_single_in_bounds},
            {"warehouse_pair_out", report.warehouse_pair_out},
            {"warehouse_pair_in", report.warehouse_pair_in},
            {"warehouse_single_out", report.warehouse_single_out},
            {"warehouse_single_in", report.warehouse_single_in},
            {"occupancy_within_double", report.occupancy_within_double}}},
          {"needed", augmentation_to_json(inst, report.needed)}};
}

ThreePartitionInstance three_partition_from_json(const Json& doc) {
  ThreePartitionInstance tp;
  const Json& values = require(doc, "values", "3-partition params");
  if (!values.is_array()) throw Error(ErrorCode::kInvalidDocument, "values must be an array");
  for (const Json& entry : values) tp.values.push_back(integer_from_json(entry, "3-partition value"));
  tp.bound = integer_from_json(require(doc, "bound", "3-partition params"), "bound");
  return tp;
}

BinPackingInstance binpacking_from_json(const Json& doc) {
  BinPackingInstance bp;
  bp.capacity = ext_rational_from_json(require(doc, "capacity", "bin-packing params"));
  const Json& items = require(doc, "items", "bin-packing params");
  if (!items.is_array()) throw Error(ErrorCode::kInvalidDocument, "items must be an array");
  for (std::size_t i = 0; i < items.size(); ++i) {
    const Json& item = items[i];
    if (item.is_object()) {
      bp.items.push_back(Item{require_string(item, "id", "item"), rational_from_json(require(item, "size", "item"))});
    } else {
      bp.items.push_back(Item{"i" + std::to_string(i + 1), rational_from_json(item)});
    }
  }
  return bp;
}

TmfdInstance tmfd_from_json(const Json& doc) {
  TmfdInstance tm;
  if (doc.contains("delays")) {
    const Json& delays = doc.at("delays");
    for (std::size_t j = 0; j < delays.size(); ++j) {
      tm.jobs.push_back(TmfdJob{"j" + std::to_string(j + 1), integer_from_json(delays[j], "delay")});
    }
    return tm;
  }
  for (const Json& job : require(doc, "jobs", "flow-shop params")) {
    tm.jobs.push_back(TmfdJob{require_string(job, "id", "job"), integer_from_json(require(job, "delay", "job"), "delay")});
  }
  return tm;
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{
      "uniform", "uniform-2approx",      "trivial", "lp-augment", "binpack-ffd", "binpack-ff",
      "binpack-uniform-size", "approx6", "approx9", "approx4-uniform", "oracle"};
  return names;
}

bool is_known_algorithm(const std::string& name) {
  const auto& names = algorithm_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SolveResult solve_with(const Instance& inst, const std::string& algorithm, const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  SolveResult result;
  result.algorithm = algorithm;
  if (algorithm == "uniform") {
    result.schedule = solve_uniform(inst);
  } else if (algorithm == "uniform-2approx") {
    result.schedule = solve_uniform_2approx(inst);
  } else if (algorithm == "trivial") {
    result.schedule = solve_trivial(inst);
  } else if (algorithm == "lp-augment") {
    const Time horizon = options.horizon ? *options.horizon : find_min_horizon(inst);
    RoundingResult rounded = iterative_round(inst, horizon, options.mode);
    result.schedule = std::move(rounded.schedule);
    result.augmentation = std::move(rounded.report);
    result.lp_horizon = horizon;
  } else if (algorithm == "binpack-ffd") {
    result.schedule = schedule_per_warehouse(inst, BinStrategy::kFfd);
  } else if (algorithm == "binpack-ff") {
    result.schedule = schedule_per_warehouse(inst, BinStrategy::kFfByTransit);
  } else if (algorithm == "binpack-uniform-size") {
    result.schedule = schedule_per_warehouse(inst, BinStrategy::kUniformSize);
  } else if (algorithm == "approx6" || algorithm == "approx9" || algorithm == "approx4-uniform") {
    RepairResult repaired = algorithm == "approx6"   ? repair_6approx(inst)
                            : algorithm == "approx9" ? repair_9approx(inst)
                                                     : repair_4approx_uniform(inst);
    result.schedule = std::move(repaired.schedule);
    result.lp_horizon = repaired.base_horizon;
  } else if (algorithm == "oracle") {
    SearchConfig config;
    config.horizon = options.horizon ? *options.horizon : default_horizon(inst);
    config.node_budget = options.budget;
    const OracleOutcome outcome = exact_min_completion(inst, config);
    if (outcome.kind == OutcomeKind::kInfeasibleWithinHorizon) {
      throw Error(ErrorCode::kInfeasible, "no feasible schedule within horizon " + std::to_string(config.horizon));
    }
    if (outcome.kind == OutcomeKind::kBudgetExceeded) {
      throw Error(ErrorCode::kBudgetInfeasible,
                  "node budget " + std::to_string(config.node_budget) + " exhausted before a verdict");
    }
    result.schedule = outcome.schedule;
  } else {
    throw Error(ErrorCode::kPreconditionFailed, "unknown algorithm '" + algorithm + "'");
  }
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.completion = completion_time(inst, result.schedule);
  result.lower_bound = inst.products().empty() ? 0 : lower_bound(inst);
  result.feasible = validate_schedule(inst, result.schedule).feasible();
  return result;
}

Json solve_result_to_json(const Instance& inst, const SolveResult& result) {
  Json doc{{"algorithm", result.algorithm},
           {"schedule", schedule_to_json(inst, result.schedule)},
           {"completion", result.completion},
           {"lower_bound", result.lower_bound},
           {"feasible", result.feasible},
           {"wall_seconds", result.wall_seconds}};
  if (result.lp_horizon) doc["lp_horizon"] = *result.lp_horizon;
  if (result.augmentation) doc["augmentation"] = augmentation_report_to_json(inst, *result.augmentation);
  return doc;
}

Instance random_instance(const Json& params, std::uint64_t seed) {
  auto get = [&](const char* key, std::int64_t fallback) {
    return params.contains(key) ? integer_from_json(params.at(key), key) : fallback;
  };
  const std::int64_t warehouse_count = get("warehouses", 3);
  const std::int64_t product_count = get("products", 5);
  const std::int64_t max_size = get("max_size", 3);
  const std::int64_t max_transit = get("max_transit", 2);
  if (warehouse_count < 2 || product_count < 0 || max_size < 1 || max_transit < 1) {
    throw Error(ErrorCode::kPreconditionFailed, "random generator needs >= 2 warehouses, sizes and transits >= 1");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };

  std::vector<Product> products;
  for (std::int64_t i = 0; i < product_count; ++i) {
    const auto source = static_cast<std::size_t>(uniform(0, warehouse_count - 1));
    auto sink = static_cast<std::size_t>(uniform(0, warehouse_count - 2));
    if (sink >= source) ++sink;
    products.push_back(Product{"p" + std::to_string(i + 1), Rational(uniform(1, max_size)), source, sink,
                               uniform(1, max_transit)});
  }
  // A numeric limit is the slack added on top of the smallest admissible value.
  auto limit = [&](const char* key, const Rational& minimum) -> ExtRational {
    const Json value = params.contains(key) ? params.at(key) : Json(2);
    if (value.is_string() && value.get<std::string>() == "inf") return ExtRational::infinity();
    return ExtRational(Rational(minimum + uniform(0, integer_from_json(value, key))));
  };
  std::vector<Warehouse> warehouses;
  for (std::int64_t house = 0; house < warehouse_count; ++house) {
    Rational out_total(0), in_total(0), out_max(1), in_max(1);
    for (const Product& prod : products) {
      if (prod.source == static_cast<std::size_t>(house)) {
        out_total += prod.size;
        out_max = std::max(out_max, prod.size);
      }
      if (prod.sink == static_cast<std::size_t>(house)) {
        in_total += prod.size;
        in_max = std::max(in_max, prod.size);
      }
    }
    warehouses.push_back(Warehouse{"w" + std::to_string(house + 1), limit("capacity", std::max(out_total, in_total)),
                                   limit("carry_out", out_max), limit("carry_in", in_max)});
  }
  return Instance(std::move(warehouses), std::move(products));
}

}  // namespace reallocation
