#include "reallocation/lp_rounding.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "reallocation/error.hpp"

namespace reallocation {
namespace {

std::vector<lp::Constraint> as_constraints(const LpProgram& lp) {
  std::vector<lp::Constraint> constraints;
  constraints.reserve(lp.rows.size());
  for (const LpRow& row : lp.rows) {
    constraints.push_back(lp::Constraint{
        row.terms, row.kind == RowKind::kAssignment ? lp::Sense::kEqual : lp::Sense::kLessEqual, row.rhs});
  }
  return constraints;
}

void add_capacity_row(LpProgram& lp, RowKind kind, std::size_t house, Time moment, const ExtRational& limit,
                      std::vector<std::pair<std::size_t, Rational>> terms) {
  if (limit.is_infinite() || terms.empty()) return;
  Rational total = 0;
  for (const auto& term : terms) total += term.second;
  if (total <= limit.value()) return;
  LpRow row;
  row.kind = kind;
  row.warehouse = house;
  row.time = moment;
  row.terms = std::move(terms);
  row.rhs = limit.value();
  lp.rows.push_back(std::move(row));
}

}  // namespace

LpProgram build_lp(const Instance& inst, Time horizon) {
  LpProgram lp;
  lp.horizon = horizon;
  // variable_of[prod][moment]
  std::vector<std::vector<std::size_t>> variable_of(inst.product_count());
  for (std::size_t prod = 0; prod < inst.product_count(); ++prod) {
    const Time last = horizon - inst.product(prod).transit;
    if (last < 0) {
      throw Error(ErrorCode::kHorizonTooSmall, "product '" + inst.product(prod).id + "' cannot arrive by the horizon");
    }
    for (Time moment = 0; moment <= last; ++moment) {
      variable_of[prod].push_back(lp.variables.size());
      lp.variables.push_back(LpVariable{prod, moment});
    }
  }
  for (std::size_t house = 0; house < inst.warehouse_count(); ++house) {
    for (Time moment = 0; moment < horizon; ++moment) {
      std::vector<std::pair<std::size_t, Rational>> terms;
      for (std::size_t prod : inst.outgoing(house)) {
        if (moment + inst.product(prod).transit <= horizon) {
          terms.emplace_back(variable_of[prod][static_cast<std::size_t>(moment)], inst.product(prod).size);
        }
      }
      add_capacity_row(lp, RowKind::kCarryOut, house, moment, inst.warehouse(house).carry_out, std::move(terms));
    }
    for (Time moment = 1; moment <= horizon; ++moment) {
      std::vector<std::pair<std::size_t, Rational>> terms;
      for (std::size_t prod : inst.incoming(house)) {
        const Time departure = moment - inst.product(prod).transit;
        if (departure >= 0) {
          terms.emplace_back(variable_of[prod][static_cast<std::size_t>(departure)], inst.product(prod).size);
        }
      }
      add_capacity_row(lp, RowKind::kCarryIn, house, moment, inst.warehouse(house).carry_in, std::move(terms));
    }
  }
  for (std::size_t prod = 0; prod < inst.product_count(); ++prod) {
    LpRow row;
    row.kind = RowKind::kAssignment;
    row.product = prod;
    for (std::size_t var_idx : variable_of[prod]) row.terms.emplace_back(var_idx, Rational(1));
    row.rhs = 1;
    lp.rows.push_back(std::move(row));
  }
  return lp;
}

std::vector<Rational> solve_lp_extreme_point(const LpProgram& lp) {
  auto point = lp::basic_feasible_solution(lp.variables.size(), as_constraints(lp));
  if (!point) throw Error(ErrorCode::kInfeasible, "LP is infeasible at horizon " + std::to_string(lp.horizon));
  return *point;
}

bool lp_feasible(const LpProgram& lp) {
  return lp::basic_feasible_solution(lp.variables.size(), as_constraints(lp)).has_value();
}

Time find_min_horizon(const Instance& inst) {
  if (inst.product_count() == 0) return 0;
  Time lo = inst.max_transit();
  Time hi = 2 * static_cast<Time>(inst.product_count()) - 1 + inst.max_transit();
  if (!lp_feasible(build_lp(inst, hi))) {
    throw Error(ErrorCode::kInfeasible, "LP infeasible on the whole search range");
  }
  while (lo < hi) {
    const Time mid = lo + (hi - lo) / 2;
    if (lp_feasible(build_lp(inst, mid))) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::string_view to_string(RoundingMode mode) {
  switch (mode) {
    case RoundingMode::kTwoSided: return "two-sided";
    case RoundingMode::kGapOut: return "gap-out";
    case RoundingMode::kGapIn: return "gap-in";
  }
  return "unknown";
}

namespace {

struct TopTwo {
  Rational largest{0};
  Rational second{0};

  void add(const Rational& size) {
    if (size > largest) {
      second = largest;
      largest = size;
    } else if (size > second) {
      second = size;
    }
  }
};

TopTwo top_two(const Instance& inst, const std::vector<std::size_t>& products) {
  TopTwo top;
  for (std::size_t prod : products) top.add(inst.product(prod).size);
  return top;
}

bool within(const Rational& load, const ExtRational& limit, const Rational& slack) {
  return limit.is_infinite() || load <= limit.value() + slack;
}

Rational overshoot(const Rational& load, const ExtRational& limit) {
  if (limit.is_infinite() || load <= limit.value()) return 0;
  return load - limit.value();
}

}  // namespace

AugmentationReport augmentation_achieved(const Instance& inst, const Schedule& sched) {
  AugmentationReport report;
  report.needed.assign(inst.warehouse_count(), WarehouseAugmentation{});
  for (std::size_t house = 0; house < inst.warehouse_count(); ++house) {
    const Warehouse& wh = inst.warehouse(house);
    const TopTwo top_out = top_two(inst, inst.outgoing(house));
    const TopTwo top_in = top_two(inst, inst.incoming(house));
    std::map<Time, std::vector<std::size_t>> departing, arriving;
    for (std::size_t prod : inst.outgoing(house)) departing[sched.departures[prod]].push_back(prod);
    for (std::size_t prod : inst.incoming(house)) arriving[sched.departures[prod] + inst.product(prod).transit].push_back(prod);

    auto record = [&](ConstraintKind kind, Time moment, const std::vector<std::size_t>& set) {
      CarryLoad entry;
      entry.warehouse = house;
      entry.time = moment;
      entry.kind = kind;
      for (std::size_t prod : set) entry.load += inst.product(prod).size;
      const bool out = kind == ConstraintKind::kCarryOut;
      entry.limit = out ? wh.carry_out : wh.carry_in;
      const TopTwo top = top_two(inst, set);
      entry.largest = top.largest;
      entry.second = top.second;
      const TopTwo& house_top = out ? top_out : top_in;
      report.set_pair_bounds &= within(entry.load, entry.limit, Rational(top.largest + top.second));
      (out ? report.set_single_out_bounds : report.set_single_in_bounds) &=
          within(entry.load, entry.limit, top.largest);
      (out ? report.warehouse_pair_out : report.warehouse_pair_in) &=
          within(entry.load, entry.limit, Rational(house_top.largest + house_top.second));
      (out ? report.warehouse_single_out : report.warehouse_single_in) &=
          within(entry.load, entry.limit, house_top.largest);
      Rational& needed = out ? report.needed[house].carry_out : report.needed[house].carry_in;
      needed = std::max(needed, overshoot(entry.load, entry.limit));
      report.loads.push_back(std::move(entry));
    };
    for (const auto& [moment, set] : departing) record(ConstraintKind::kCarryOut, moment, set);
    for (const auto& [moment, set] : arriving) record(ConstraintKind::kCarryIn, moment, set);

    // Occupancy only changes at departure + 1 and at arrivals.
    std::set<Time> checkpoints{0};
    for (const auto& entry : departing) checkpoints.insert(entry.first + 1);
    for (const auto& entry : arriving) checkpoints.insert(entry.first);
    OccupancyPeak peak{house, 0, Rational(0), wh.capacity};
    for (Time moment : checkpoints) {
      Rational occupancy = 0;
      for (std::size_t prod : inst.outgoing(house)) {
        if (sched.departures[prod] >= moment) occupancy += inst.product(prod).size;
      }
      for (std::size_t prod : inst.incoming(house)) {
        if (sched.departures[prod] + inst.product(prod).transit <= moment) occupancy += inst.product(prod).size;
      }
      if (occupancy > peak.load) {
        peak.load = occupancy;
        peak.time = moment;
      }
    }
    report.occupancy_within_double &= within(peak.load, wh.capacity, wh.capacity.is_finite() ? wh.capacity.value() : Rational(0));
    report.needed[house].capacity = overshoot(peak.load, wh.capacity);
    report.peaks.push_back(std::move(peak));
  }
  return report;
}

RoundingResult iterative_round(const Instance& inst, Time horizon, RoundingMode mode) {
  if (mode == RoundingMode::kGapOut && !all_carry_in_infinite(inst)) {
    throw Error(ErrorCode::kPreconditionFailed, "gap-out mode needs carry_in unbounded everywhere");
  }
  if (mode == RoundingMode::kGapIn && !all_carry_out_infinite(inst)) {
    throw Error(ErrorCode::kPreconditionFailed, "gap-in mode needs carry_out unbounded everywhere");
  }
  const Rational threshold = mode == RoundingMode::kTwoSided ? 2 : 1;
  const LpProgram lp = build_lp(inst, horizon);
  const std::size_t var_count = lp.variables.size();

  enum class State { kActive, kZero, kOne };
  std::vector<State> state(var_count, State::kActive);
  std::vector<bool> row_active(lp.rows.size(), true);
  std::vector<Rational> residual;
  for (const LpRow& row : lp.rows) residual.push_back(row.rhs);
  std::vector<std::vector<std::size_t>> rows_of_var(var_count);
  for (std::size_t row_idx = 0; row_idx < lp.rows.size(); ++row_idx) {
    for (const auto& term : lp.rows[row_idx].terms) rows_of_var[term.first].push_back(row_idx);
  }
  std::vector<std::vector<std::size_t>> vars_of_product(inst.product_count());
  for (std::size_t var_idx = 0; var_idx < var_count; ++var_idx) vars_of_product[lp.variables[var_idx].product].push_back(var_idx);

  auto fix_one = [&](std::size_t var_idx) {
    state[var_idx] = State::kOne;
    for (std::size_t row_idx : rows_of_var[var_idx]) {
      for (const auto& [var, coeff] : lp.rows[row_idx].terms) {
        if (var == var_idx) residual[row_idx] -= coeff;
      }
    }
    for (std::size_t other : vars_of_product[lp.variables[var_idx].product]) {
      if (state[other] == State::kActive) state[other] = State::kZero;
    }
  };

  RoundingResult result;
  std::size_t remaining = var_count;
  while (remaining > 0) {
    ++result.iterations;
    // Compact LP over the active variables and rows.
    std::vector<std::size_t> local_of(var_count, static_cast<std::size_t>(-1));
    std::vector<std::size_t> active_vars;
    for (std::size_t var_idx = 0; var_idx < var_count; ++var_idx) {
      if (state[var_idx] == State::kActive) {
        local_of[var_idx] = active_vars.size();
        active_vars.push_back(var_idx);
      }
    }
    std::vector<lp::Constraint> constraints;
    std::vector<std::size_t> constraint_row;
    for (std::size_t row_idx = 0; row_idx < lp.rows.size(); ++row_idx) {
      if (!row_active[row_idx]) continue;
      lp::Constraint con;
      con.sense = lp.rows[row_idx].kind == RowKind::kAssignment ? lp::Sense::kEqual : lp::Sense::kLessEqual;
      con.rhs = residual[row_idx];
      for (const auto& [var, coeff] : lp.rows[row_idx].terms) {
        if (state[var] == State::kActive) con.terms.emplace_back(local_of[var], coeff);
      }
      if (con.terms.empty()) {
        row_active[row_idx] = false;  // nothing left to constrain
        continue;
      }
      constraints.push_back(std::move(con));
      constraint_row.push_back(row_idx);
    }
    auto solution = lp::basic_feasible_solution(active_vars.size(), constraints);
    if (!solution) {
      if (result.iterations == 1) throw Error(ErrorCode::kInfeasible, "LP is infeasible at the given horizon");
      throw Error(ErrorCode::kInvariantViolated, "rounding lost LP feasibility");
    }
    const std::vector<Rational>& values = *solution;

    bool fixed = false;
    for (std::size_t i = 0; i < active_vars.size(); ++i) {
      const std::size_t var_idx = active_vars[i];
      if (state[var_idx] != State::kActive) continue;
      if (values[i] == 1) {
        fix_one(var_idx);
        fixed = true;
      } else if (values[i] == 0) {
        state[var_idx] = State::kZero;
        fixed = true;
      }
    }
    if (!fixed) {
      bool removed = false;
      for (std::size_t con_idx = 0; con_idx < constraints.size() && !removed; ++con_idx) {
        const std::size_t row_idx = constraint_row[con_idx];
        if (lp.rows[row_idx].kind == RowKind::kAssignment) continue;
        Rational gap = 0;
        for (const auto& term : constraints[con_idx].terms) gap += 1 - values[term.first];
        if (gap <= threshold) {
          row_active[row_idx] = false;
          removed = true;
        }
      }
      if (!removed) throw Error(ErrorCode::kStuck, "no integral variable and no removable row");
    }
    remaining = static_cast<std::size_t>(std::count(state.begin(), state.end(), State::kActive));
  }

  result.schedule.departures.assign(inst.product_count(), -1);
  for (std::size_t var_idx = 0; var_idx < var_count; ++var_idx) {
    if (state[var_idx] == State::kOne) result.schedule.departures[lp.variables[var_idx].product] = lp.variables[var_idx].departure;
  }
  for (Time tick : result.schedule.departures) {
    if (tick < 0) throw Error(ErrorCode::kInvariantViolated, "rounding left a product unscheduled");
  }
  result.report = augmentation_achieved(inst, result.schedule);
  return result;
}

}  // namespace reallocation
