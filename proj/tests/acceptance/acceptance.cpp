// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "reallocation/augment_repair.hpp"
#include "reallocation/binpack.hpp"
#include "reallocation/core_model.hpp"
#include "reallocation/demand_graph.hpp"
#include "reallocation/lp_rounding.hpp"
#include "reallocation/oracle.hpp"
#include "reallocation/reductions.hpp"
#include "reallocation/uniform_exact.hpp"
#include "support/fixtures.hpp"
#include "support/support.hpp"

using namespace fixtures;

namespace {

// Pinned tolerances. Every comparison below is exact; only the wall-clock
// budgets are limits in the usual sense.
constexpr double kIntroSeconds = 1.0;
constexpr double kUniformSeconds = 120.0;
constexpr double kCycleSeconds = 120.0;
constexpr double kLpSeconds = 300.0;
constexpr double kGapSeconds = 300.0;
constexpr double kBinpackSeconds = 300.0;
constexpr double kRepairSeconds = 600.0;
constexpr double kReductionSeconds = 600.0;
constexpr double kValidatorSeconds = 120.0;

const Rational kFfdRatio(3, 2);
const Rational kFfTransitRatio(7, 4);
constexpr Time kApprox6Factor = 6;
constexpr Time kApprox9Factor = 9;
constexpr std::size_t kApprox4Classes = 4;

constexpr int kUniformRuns = 100;
constexpr int kLpRuns = 50;
constexpr int kGapRuns = 50;
constexpr int kBinpackRuns = 50;
constexpr int kRepairRuns = 50;
constexpr int kBinReductionRuns = 40;
constexpr int kValidatorRuns = 1000;

// Collects the first few failure messages of a criterion.
class Ledger {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (ok) return;
    ++failures_;
    if (notes_.size() < 5) notes_.push_back(what);
  }
  void note(const std::string& text) { info_.push_back(text); }
  bool ok() const { return failures_ == 0; }
  std::size_t checks() const { return checks_; }
  std::size_t failures() const { return failures_; }
  const std::vector<std::string>& notes() const { return notes_; }
  const std::vector<std::string>& info() const { return info_; }

 private:
  std::size_t checks_ = 0;
  std::size_t failures_ = 0;
  std::vector<std::string> notes_;
  std::vector<std::string> info_;
};

template <typename T>
std::string str(const T& value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

OracleOutcome optimum(const Instance& inst, Time horizon) {
  SearchConfig config;
  config.horizon = horizon;
  return exact_min_completion(inst, config);
}

// Occupancy of a warehouse at a time, from the definition.
Rational occupancy(const Instance& inst, const Schedule& sched, std::size_t house, Time tick) {
  Rational held = 0;
  for (std::size_t prod = 0; prod < inst.product_count(); ++prod) {
    const Product& pr = inst.product(prod);
    if (pr.source == house && sched.departures[prod] >= tick) held += pr.size;
    if (pr.sink == house && sched.departures[prod] + pr.transit <= tick) held += pr.size;
  }
  return held;
}

struct CarrySet {
  std::size_t house;
  Time tick;
  Rational load, largest, second;
};

// Every nonempty departing (out) or arriving (!out) set, sizes sorted.
std::vector<CarrySet> carry_sets(const Instance& inst, const Schedule& sched, bool out) {
  std::map<std::pair<std::size_t, Time>, std::vector<Rational>> groups;
  for (std::size_t prod = 0; prod < inst.product_count(); ++prod) {
    const Product& pr = inst.product(prod);
    if (out) groups[{pr.source, sched.departures[prod]}].push_back(pr.size);
    else groups[{pr.sink, sched.departures[prod] + pr.transit}].push_back(pr.size);
  }
  std::vector<CarrySet> sets;
  for (auto& [key, sizes] : groups) {
    std::sort(sizes.rbegin(), sizes.rend());
    CarrySet set{key.first, key.second, Rational(0), sizes[0], sizes.size() > 1 ? sizes[1] : Rational(0)};
    for (const Rational& size : sizes) set.load += size;
    sets.push_back(set);
  }
  return sets;
}

bool within(const Rational& load, const ExtRational& limit, const Rational& extra) {
  return limit.is_infinite() || load <= limit.value() + extra;
}

bool class_fits(const Instance& inst, const Schedule& base, const std::vector<std::size_t>& cls) {
  std::map<std::pair<std::size_t, Time>, Rational> out, in;
  for (std::size_t prod : cls) {
    const Product& pr = inst.product(prod);
    out[{pr.source, base.departures[prod]}] += pr.size;
    in[{pr.sink, base.departures[prod] + pr.transit}] += pr.size;
  }
  for (const auto& [key, load] : out) {
    if (!inst.warehouse(key.first).carry_out.admits(load)) return false;
  }
  for (const auto& [key, load] : in) {
    if (!inst.warehouse(key.first).carry_in.admits(load)) return false;
  }
  return true;
}

bool partitions_all(std::size_t count, const EdgePartition& classes) {
  std::vector<int> seen(count, 0);
  for (const auto& cls : classes) {
    for (std::size_t prod : cls) {
      if (prod >= count) return false;
      ++seen[prod];
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](int hits) { return hits == 1; });
}

std::vector<Rational> sizes_of(const BinPackingInstance& bp) {
  std::vector<Rational> sizes;
  for (const Item& it : bp.items) sizes.push_back(it.size);
  return sizes;
}

Instance three_partition_shape(const std::vector<long>& sizes, long bound, long back) {
  const ExtRational capacity(bound * back);
  std::vector<ProductRecord> items;
  for (std::size_t i = 0; i < sizes.size(); ++i) items.push_back(item("x" + std::to_string(i + 1), sizes[i], "w1", "w2"));
  for (long j = 1; j <= back; ++j) items.push_back(item("b" + std::to_string(j), bound, "w2", "w1"));
  return make_instance({house("w1", capacity, lim(bound), inf()), house("w2", capacity, lim(bound), inf())}, items);
}

// Criterion bodies.

void intro_example(Ledger& log) {
  const Instance inst = intro_instance();
  const OracleOutcome outcome = optimum(inst, 5);
  log.expect(outcome.kind == OutcomeKind::kOptimal && outcome.completion == 3,
             "oracle optimum is " + str(outcome.completion) + ", expected 3");
  log.expect(validate_schedule(inst, intro_good_schedule(inst)).feasible(), "good schedule reported infeasible");
  const ValidationReport bad = validate_schedule(inst, intro_bad_schedule(inst));
  const bool found = std::any_of(bad.violations.begin(), bad.violations.end(), [](const Violation& viol) {
    return viol.warehouse == 0 && viol.time == 2 && viol.kind == ConstraintKind::kCarryIn;
  });
  log.expect(found, "bad schedule lacks the (W1, 2, carry-in) violation");
  log.note("optimum " + str(outcome.completion) + ", bad schedule violations " + str(bad.violations.size()));
}

void uniform_exact(Ledger& log) {
  support::Rng rng(0xacc2);
  support::GenConfig config;
  config.min_warehouses = 2;
  config.max_warehouses = 4;
  config.max_products = 8;
  config.sizes = {1};
  config.capacity = config.carry_out = config.carry_in = support::Limit::kFinite;
  config.max_limit = 4;
  for (int run = 0; run < kUniformRuns; ++run) {
    config.min_transit = config.max_transit = rng.uniform(1, 3);
    const Instance inst = support::random_instance(rng, config);
    const Time completion = completion_time(inst, solve_uniform(inst));
    const Time formula = rho_max(inst) + inst.max_transit() - 1;
    const OracleOutcome outcome = optimum(inst, default_horizon(inst));
    log.expect(completion == formula, "run " + str(run) + ": completion " + str(completion) + " vs formula " + str(formula));
    log.expect(outcome.kind == OutcomeKind::kOptimal && outcome.completion == completion,
               "run " + str(run) + ": oracle " + str(outcome.completion) + " vs " + str(completion));
  }
}

void cycle_invariant(Ledger& log) {
  support::Rng rng(0xacc3);
  support::GenConfig config;
  config.max_products = 8;
  std::size_t slices = 0;
  for (int run = 0; run < kUniformRuns; ++run) {
    config.sizes = {rng.uniform(1, 3)};
    config.min_transit = config.max_transit = rng.uniform(1, 3);
    const Instance inst = support::random_instance(rng, config);
    const UniformTrace trace = solve_uniform_traced(inst);
    const DemandGraph graph = trace.split.graph();
    for (const CycleFamily& slice : trace.slices) {
      ++slices;
      log.expect(is_cycle_family(graph, slice.arcs), "run " + str(run) + ": a slice is not a cycle family");
    }
  }
  log.note(str(slices) + " slices");
}

void lp_rounding(Ledger& log) {
  support::Rng rng(0xacc4);
  support::GenConfig config;
  config.max_products = 6;
  int compared = 0;
  for (int run = 0; run < kLpRuns; ++run) {
    const Instance inst = support::random_instance(rng, config);
    const Time t_min = find_min_horizon(inst);
    const OracleOutcome outcome = optimum(inst, default_horizon(inst));
    if (outcome.kind == OutcomeKind::kOptimal) {
      ++compared;
      log.expect(t_min <= outcome.completion, "run " + str(run) + ": T_min " + str(t_min) + " > optimum " + str(outcome.completion));
    }
    const RoundingResult rounded = iterative_round(inst, t_min, RoundingMode::kTwoSided);
    const Schedule& sched = rounded.schedule;
    log.expect(completion_time(inst, sched) <= t_min, "run " + str(run) + ": rounded completion exceeds T_min");
    for (bool out : {true, false}) {
      for (const CarrySet& set : carry_sets(inst, sched, out)) {
        const Warehouse& wh = inst.warehouse(set.house);
        log.expect(within(set.load, out ? wh.carry_out : wh.carry_in, set.largest + set.second),
                   "run " + str(run) + ": set bound broken at (" + wh.id + ", " + str(set.tick) + ")");
      }
    }
    for (std::size_t house = 0; house < inst.warehouse_count(); ++house) {
      const ExtRational& cap = inst.warehouse(house).capacity;
      if (cap.is_infinite()) continue;
      for (Time tick = 0; tick <= t_min; ++tick) {
        log.expect(occupancy(inst, sched, house, tick) <= 2 * cap.value(),
                   "run " + str(run) + ": occupancy above twice the capacity");
      }
    }
  }
  log.note(str(compared) + " of " + str(kLpRuns) + " compared against the oracle");
}

void gap_mode(Ledger& log) {
  support::Rng rng(0xacc5);
  support::GenConfig config;
  config.max_products = 6;
  config.carry_in = support::Limit::kInfinite;
  config.carry_out = support::Limit::kFinite;
  for (int run = 0; run < kGapRuns; ++run) {
    const Instance inst = support::random_instance(rng, config);
    const Time t_min = find_min_horizon(inst);
    const Schedule sched = iterative_round(inst, t_min, RoundingMode::kGapOut).schedule;
    log.expect(completion_time(inst, sched) <= t_min, "run " + str(run) + ": completion exceeds T_min");
    for (const CarrySet& set : carry_sets(inst, sched, true)) {
      Rational largest = 0;
      for (std::size_t prod : inst.outgoing(set.house)) largest = std::max(largest, inst.product(prod).size);
      log.expect(within(set.load, inst.warehouse(set.house).carry_out, largest),
                 "run " + str(run) + ": carry-out above d+ plus the largest size");
    }
  }
}

void binpack_family(Ledger& log) {
  support::Rng rng(0xacc6);
  support::GenConfig config;
  config.min_warehouses = 2;
  config.max_warehouses = 3;
  config.min_products = 2;
  config.max_products = 8;
  config.sizes = {1, 2, 3, 4};
  config.capacity = config.carry_in = support::Limit::kInfinite;
  config.carry_out = support::Limit::kFinite;

  auto check_lower_bound = [&](const Instance& inst, Time best, int run) {
    for (std::size_t house = 0; house < inst.warehouse_count(); ++house) {
      if (inst.outgoing(house).empty()) continue;
      const BinPackingInstance bp = to_binpacking(inst, house);
      Time shortest = inst.product(inst.outgoing(house)[0]).transit;
      for (std::size_t prod : inst.outgoing(house)) shortest = std::min(shortest, inst.product(prod).transit);
      const auto bins = static_cast<Time>(support::brute_bins(sizes_of(bp), bp.capacity));
      log.expect(best >= bins - 1 + shortest, "run " + str(run) + ": optimum below the bin-count bound");
    }
  };
  auto ratio_ok = [](Time got, Time best, const Rational& factor) { return Rational(got) <= factor * Rational(best); };

  for (int run = 0; run < kBinpackRuns; ++run) {
    support::GenConfig local = config;
    local.min_transit = local.max_transit = rng.uniform(1, 3);
    const Instance inst = support::random_instance(rng, local);
    const OracleOutcome outcome = optimum(inst, default_horizon(inst));
    if (outcome.kind != OutcomeKind::kOptimal) {
      log.expect(false, "run " + str(run) + ": oracle gave no optimum");
      continue;
    }
    const Schedule sched = schedule_per_warehouse(inst, BinStrategy::kFfd);
    log.expect(support::naive_feasible(inst, sched), "ffd run " + str(run) + ": infeasible");
    log.expect(ratio_ok(completion_time(inst, sched), outcome.completion, kFfdRatio), "ffd run " + str(run) + ": ratio above 3/2");
    check_lower_bound(inst, outcome.completion, run);
  }
  for (int run = 0; run < kBinpackRuns; ++run) {
    support::GenConfig local = config;
    local.max_transit = 4;
    const Instance inst = support::random_instance(rng, local);
    const OracleOutcome outcome = optimum(inst, default_horizon(inst));
    if (outcome.kind != OutcomeKind::kOptimal) {
      log.expect(false, "run " + str(run) + ": oracle gave no optimum");
      continue;
    }
    const Schedule sched = schedule_per_warehouse(inst, BinStrategy::kFfByTransit);
    log.expect(support::naive_feasible(inst, sched), "ff run " + str(run) + ": infeasible");
    log.expect(ratio_ok(completion_time(inst, sched), outcome.completion, kFfTransitRatio),
               "ff run " + str(run) + ": ratio above 7/4");
    check_lower_bound(inst, outcome.completion, run);
  }
  for (int run = 0; run < kBinpackRuns; ++run) {
    support::GenConfig local = config;
    local.max_transit = 4;
    local.sizes = {rng.uniform(1, 3)};
    const Instance inst = support::random_instance(rng, local);
    const OracleOutcome outcome = optimum(inst, default_horizon(inst));
    if (outcome.kind != OutcomeKind::kOptimal) {
      log.expect(false, "run " + str(run) + ": oracle gave no optimum");
      continue;
    }
    const Schedule sched = schedule_per_warehouse(inst, BinStrategy::kUniformSize);
    log.expect(support::naive_feasible(inst, sched), "uniform-size run " + str(run) + ": infeasible");
    log.expect(completion_time(inst, sched) == outcome.completion, "uniform-size run " + str(run) + ": not optimal");
    check_lower_bound(inst, outcome.completion, run);
  }
}

void repairs(Ledger& log) {
  support::Rng rng(0xacc7);
  support::GenConfig config;
  config.max_products = 6;
  config.capacity = support::Limit::kInfinite;
  for (int run = 0; run < kRepairRuns; ++run) {
    const Instance inst = support::random_instance(rng, config);
    const Time t_min = find_min_horizon(inst);
    const RepairResult six = repair_6approx(inst);
    const RepairResult nine = repair_9approx(inst);
    log.expect(support::naive_feasible(inst, six.schedule), "approx6 run " + str(run) + ": infeasible");
    log.expect(support::naive_feasible(inst, nine.schedule), "approx9 run " + str(run) + ": infeasible");
    log.expect(completion_time(inst, six.schedule) <= kApprox6Factor * t_min, "approx6 run " + str(run) + ": ratio above 6");
    log.expect(completion_time(inst, nine.schedule) <= kApprox9Factor * t_min, "approx9 run " + str(run) + ": ratio above 9");
  }
  support::GenConfig unit = config;
  unit.sizes = {1};
  for (int run = 0; run < kRepairRuns; ++run) {
    const Instance inst = support::random_instance(rng, unit);
    const RepairResult four = repair_4approx_uniform(inst);
    log.expect(four.classes.size() == kApprox4Classes, "approx4 run " + str(run) + ": class count " + str(four.classes.size()));
    log.expect(partitions_all(inst.product_count(), four.classes), "approx4 run " + str(run) + ": classes do not partition");
    for (const auto& cls : four.classes) log.expect(class_fits(inst, four.base, cls), "approx4 run " + str(run) + ": class infeasible");
    log.expect(support::naive_feasible(inst, four.schedule), "approx4 run " + str(run) + ": schedule infeasible");
  }
}

void reductions(Ledger& log) {
  // (a) 3-partition.
  {
    const ThreePartitionInstance yes{{4, 4, 4, 4, 4, 4}, 12};
    const Instance inst = from_3partition(yes);
    const OracleOutcome outcome = optimum(inst, default_horizon(inst));
    log.expect(outcome.kind == OutcomeKind::kOptimal, "(a) yes-instance not feasible");
    if (outcome.kind == OutcomeKind::kOptimal) {
      const Triples triples = induced_partition(yes, outcome.schedule);
      bool valid = triples.size() == yes.groups();
      std::vector<int> used(yes.values.size(), 0);
      for (const auto& triple : triples) {
        std::int64_t sum = 0;
        for (std::size_t i : triple) {
          sum += yes.values[i];
          ++used[i];
        }
        valid &= triple.size() == 3 && sum == yes.bound;
      }
      valid &= std::all_of(used.begin(), used.end(), [](int hits) { return hits == 1; });
      log.expect(valid, "(a) departure slots do not induce a 3-partition");
    }
    const ThreePartitionInstance no{{4, 4, 4, 4, 4, 6}, 13};
    log.expect(!support::brute_three_partition(no.values, no.bound), "(a) no-instance has a partition");
    const Instance no_inst = from_3partition(no);
    log.expect(optimum(no_inst, default_horizon(no_inst)).kind == OutcomeKind::kInfeasibleWithinHorizon,
               "(a) no-instance not reported infeasible");
  }
  // (b) size-{1,2} gadgets.
  {
    const Size12Expansion expanded = size12_expand(three_partition_shape({2, 2, 1}, 5, 1));
    const Gadget& gadget = expanded.gadgets.back();
    const Instance& out = expanded.instance;
    const std::size_t vertices = gadget.u_leaves.size() + gadget.v_leaves.size() + gadget.u_split.size() +
                                 gadget.v_split.size() + 2;
    log.expect(gadget.size == 5 && gadget.u_leaves.size() == 5 && gadget.v_leaves.size() == 5, "(b) leaf counts");
    log.expect(vertices == 24, "(b) gadget has " + str(vertices) + " vertices, expected 24");
    log.expect(gadget.edges.size() == 33, "(b) gadget has " + str(gadget.edges.size()) + " edges, expected 33");
    bool labels = out.warehouse(gadget.u_root).capacity == ExtRational(2L) &&
                  out.warehouse(gadget.v_root).capacity == ExtRational(2L);
    for (std::size_t vert : gadget.u_leaves) labels &= out.warehouse(vert).capacity == ExtRational(1L);
    for (std::size_t vert : gadget.v_leaves) labels &= out.warehouse(vert).capacity == ExtRational(1L);
    for (std::size_t vert : gadget.u_split) labels &= out.warehouse(vert).capacity == ExtRational(2L);
    for (std::size_t vert : gadget.v_split) labels &= out.warehouse(vert).capacity == ExtRational(2L);
    for (const Product& pr : out.products()) labels &= pr.size == 1 || pr.size == 2;
    log.expect(labels, "(b) capacity or size labels differ");

    for (const Instance& tiny : {from_3partition({{1, 1, 1}, 3}), three_partition_shape({2, 2, 2}, 3, 2)}) {
      const Instance big = size12_expand(tiny).instance;
      const FeasibilityOutcome before = is_feasible_within(tiny, default_horizon(tiny));
      const FeasibilityOutcome after = is_feasible_within(big, default_horizon(big));
      log.expect(!before.budget_exceeded && !after.budget_exceeded, "(b) oracle budget exhausted");
      log.expect(before.feasible == after.feasible, "(b) feasibility changed by the expansion");
      log.note("(b) " + str(tiny.product_count()) + " -> " + str(big.product_count()) + " products, feasible " +
               (before.feasible ? "yes" : "no"));
    }
  }
  // (c) bin packing.
  {
    support::Rng rng(0xacc8);
    for (int run = 0; run < kBinReductionRuns; ++run) {
      BinPackingInstance bp;
      const long capacity = rng.uniform(2, 8);
      bp.capacity = lim(capacity);
      const auto count = rng.uniform(1, 6);
      for (int i = 0; i < count; ++i) bp.items.push_back({"i" + std::to_string(i), Rational(rng.uniform(1, capacity))});
      const auto bins = static_cast<Time>(support::brute_bins(sizes_of(bp), bp.capacity));
      const Instance inst = from_binpacking(bp);
      const OracleOutcome outcome = optimum(inst, default_horizon(inst));
      log.expect(outcome.kind == OutcomeKind::kOptimal && outcome.completion == bins,
                 "(c) run " + str(run) + ": oracle " + str(outcome.completion) + " vs bins " + str(bins));
    }
  }
  // (d) flow shop, every delay vector with up to four jobs and delays up to 3.
  {
    std::size_t instances = 0;
    std::function<void(std::vector<std::int64_t>&)> sweep = [&](std::vector<std::int64_t>& delays) {
      if (!delays.empty()) {
        TmfdInstance tm;
        for (std::size_t j = 0; j < delays.size(); ++j) tm.jobs.push_back({"j" + std::to_string(j + 1), delays[j]});
        const Instance inst = from_tmfd(tm);
        const OracleOutcome outcome = optimum(inst, default_horizon(inst));
        const Time flow = support::brute_flow_shop(delays);
        log.expect(outcome.kind == OutcomeKind::kOptimal && outcome.completion + 1 == flow,
                   "(d) delays of size " + str(delays.size()) + ": offset broken");
        ++instances;
      }
      if (delays.size() == 4) return;
      for (std::int64_t delay = 0; delay <= 3; ++delay) {
        delays.push_back(delay);
        sweep(delays);
        delays.pop_back();
      }
    };
    std::vector<std::int64_t> delays;
    sweep(delays);
    log.note("(d) " + str(instances) + " flow-shop instances");
  }
}

void validator_soundness(Ledger& log) {
  support::Rng rng(0xacc9);
  support::GenConfig config;
  config.max_products = 7;
  config.sizes = {1, 2, 3, 5};
  config.max_transit = 3;
  config.slack = 2;
  std::size_t infeasible = 0;
  for (int run = 0; run < kValidatorRuns; ++run) {
    const Instance inst = support::random_instance(rng, config);
    const Schedule sched = support::random_schedule(rng, inst, 4);
    const ValidationReport report = validate_schedule(inst, sched);
    std::set<std::tuple<std::size_t, Time, int>> fast, slow;
    for (const Violation& viol : report.violations) {
      const int kind = viol.kind == ConstraintKind::kCarryOut ? 0 : viol.kind == ConstraintKind::kCarryIn ? 1 : 2;
      fast.insert({viol.warehouse, viol.time, kind});
    }
    for (const auto& viol : support::naive_violations(inst, sched)) slow.insert({viol.warehouse, viol.time, viol.kind});
    log.expect(report.feasible() == slow.empty(), "run " + str(run) + ": verdicts differ");
    log.expect(fast == slow, "run " + str(run) + ": violation sets differ");
    if (!slow.empty()) ++infeasible;
  }
  log.note(str(infeasible) + " of " + str(kValidatorRuns) + " pairs infeasible");
}

struct Criterion {
  int number;
  std::string name;
  double seconds;
  std::function<void(Ledger&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "intro example", kIntroSeconds, intro_example},
      {2, "uniform exact", kUniformSeconds, uniform_exact},
      {3, "cycle invariant", kCycleSeconds, cycle_invariant},
      {4, "LP rounding", kLpSeconds, lp_rounding},
      {5, "gap mode", kGapSeconds, gap_mode},
      {6, "bin-packing family", kBinpackSeconds, binpack_family},
      {7, "repairs", kRepairSeconds, repairs},
      {8, "reductions", kReductionSeconds, reductions},
      {9, "validator soundness", kValidatorSeconds, validator_soundness},
  };
  int failed = 0;
  for (const Criterion& crit : criteria) {
    Ledger log;
    const auto start = std::chrono::steady_clock::now();
    try {
      crit.body(log);
    } catch (const std::exception& ex) {
      log.expect(false, std::string("exception: ") + ex.what());
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    log.expect(elapsed < crit.seconds, "took " + str(elapsed) + " s, limit " + str(crit.seconds) + " s");
    const bool pass = log.ok();
    if (!pass) ++failed;
    std::cout << "criterion " << crit.number << " (" << crit.name << "): " << (pass ? "PASS" : "FAIL") << "  ["
              << log.checks() << " checks, " << elapsed << " s]\n";
    for (const auto& line : log.info()) std::cout << "    " << line << "\n";
    for (const auto& line : log.notes()) std::cout << "    failure: " << line << "\n";
  }
  return failed;
}
