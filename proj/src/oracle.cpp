#include "reallocation/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "reallocation/error.hpp"

namespace reallocation {
namespace {

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint64_t>& key) const noexcept {
    std::uint64_t hash = 1469598103934665603ULL;
    for (std::uint64_t word : key) {
      hash ^= word + 0x9e3779b97f4a7c15ULL + (hash << 6) + (hash >> 2);
    }
    return static_cast<std::size_t>(hash);
  }
};

// Integer image of the instance: every size and finite capacity multiplied by
// the lcm of their denominators.
struct ScaledInstance {
  std::vector<std::int64_t> size;
  std::vector<std::size_t> source, sink;
  std::vector<Time> transit;
  std::vector<std::int64_t> capacity, carry_out, carry_in;
  std::vector<std::vector<std::size_t>> outgoing;

  explicit ScaledInstance(const Instance& inst) {
    mpz_class scale = 1;
    auto absorb = [&](const Rational& amount) { mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), amount.get_den_mpz_t()); };
    for (const Product& prod : inst.products()) absorb(prod.size);
    for (const Warehouse& house : inst.warehouses()) {
      for (const ExtRational* limit : {&house.capacity, &house.carry_out, &house.carry_in}) {
        if (limit->is_finite()) absorb(limit->value());
      }
    }
    mpz_class total = 0;
    auto to_int = [&](const Rational& amount) {
      mpz_class scaled = amount.get_num() * (scale / amount.get_den());
      if (!scaled.fits_slong_p() || scaled > mpz_class(std::int64_t{1} << 52)) {
        throw Error(ErrorCode::kPreconditionFailed, "values too large for the exhaustive oracle");
      }
      return static_cast<std::int64_t>(scaled.get_si());
    };
    auto to_limit = [&](const ExtRational& amount) { return amount.is_infinite() ? kUnbounded : to_int(amount.value()); };
    for (const Product& prod : inst.products()) {
      size.push_back(to_int(prod.size));
      total += size.back();
      source.push_back(prod.source);
      sink.push_back(prod.sink);
      transit.push_back(prod.transit);
    }
    if (total > mpz_class(std::int64_t{1} << 60)) {
      throw Error(ErrorCode::kPreconditionFailed, "values too large for the exhaustive oracle");
    }
    for (const Warehouse& house : inst.warehouses()) {
      capacity.push_back(to_limit(house.capacity));
      carry_out.push_back(to_limit(house.carry_out));
      carry_in.push_back(to_limit(house.carry_in));
    }
    outgoing.resize(inst.warehouse_count());
    for (std::size_t prod = 0; prod < size.size(); ++prod) outgoing[source[prod]].push_back(prod);
  }
};

// Time-stepped depth-first search. At each time step it picks the subset of
// still-waiting products that depart now. Failed states are memoized by
// (waiting set, in-transit arrival offsets) together with the largest
// remaining slack at which they failed; constraints are time invariant, so a
// state that failed with slack s fails for every smaller slack.
class Search {
 public:
  Search(const ScaledInstance& si, std::uint64_t budget) : si_(si), budget_(budget) {
    m_ = si.size.size();
    n_ = si.capacity.size();
  }

  bool exceeded() const { return exceeded_; }
  std::uint64_t nodes() const { return nodes_; }

  // True and fills `out` when every product can arrive by `target`.
  bool run(Time target, std::vector<Time>& out) {
    target_ = target;
    departure_.assign(m_, -1);
    arrival_load_.assign(n_, std::vector<std::int64_t>(static_cast<std::size_t>(target) + 2, 0));
    waiting_out_.assign(n_, 0);
    for (std::size_t prod = 0; prod < m_; ++prod) waiting_out_[si_.source[prod]] += si_.size[prod];
    std::vector<std::int64_t> arrived(n_, 0);
    std::uint64_t waiting = m_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << m_) - 1);
    if (!step(0, waiting, arrived)) return false;
    out = departure_;
    return true;
  }

 private:
  bool charge() {
    if (++nodes_ > budget_) exceeded_ = true;
    return !exceeded_;
  }

  std::vector<std::uint64_t> state_key(Time moment, std::uint64_t waiting) const {
    std::vector<std::uint64_t> key{waiting};
    for (std::size_t prod = 0; prod < m_; ++prod) {
      if (departure_[prod] >= 0) {
        const Time arrival = departure_[prod] + si_.transit[prod];
        if (arrival > moment) key.push_back((static_cast<std::uint64_t>(prod) << 32) | static_cast<std::uint64_t>(arrival - moment));
      }
    }
    return key;
  }

  // `arrived[house]`: total size that has arrived at house by time moment.
  bool step(Time moment, std::uint64_t waiting, const std::vector<std::int64_t>& arrived) {
    if (!charge()) return false;
    if (waiting == 0) return true;
    const Time slack = target_ - moment;
    std::vector<std::size_t> candidates;
    for (std::size_t prod = 0; prod < m_; ++prod) {
      if (waiting >> prod & 1) {
        if (si_.transit[prod] > slack) return false;
        candidates.push_back(prod);
      }
    }
    // Each warehouse needs enough rounds to ship what is still waiting.
    for (std::size_t house = 0; house < n_; ++house) {
      if (si_.carry_out[house] == kUnbounded || waiting_out_[house] == 0) continue;
      const std::int64_t rounds = (waiting_out_[house] + si_.carry_out[house] - 1) / si_.carry_out[house];
      Time shortest = std::numeric_limits<Time>::max();
      for (std::size_t prod : si_.outgoing[house]) {
        if (waiting >> prod & 1) shortest = std::min(shortest, si_.transit[prod]);
      }
      if (rounds - 1 + shortest > slack) return false;
    }
    auto key = state_key(moment, waiting);
    if (auto it = memo_.find(key); it != memo_.end() && it->second >= slack) return false;

    Frame frame{moment, waiting, &arrived, candidates, std::vector<std::int64_t>(n_, 0),
                std::vector<std::int64_t>(n_, 0)};
    for (std::size_t prod : candidates) frame.undecided_out[si_.source[prod]] += si_.size[prod];
    const bool ok = choose(frame, 0);
    if (!ok && !exceeded_) {
      if (memo_.size() < kMemoLimit) {
        auto& entry = memo_[std::move(key)];
        entry = std::max(entry, slack);
      }
    }
    return ok;
  }

  struct Frame {
    Time moment;
    std::uint64_t waiting;
    const std::vector<std::int64_t>* arrived;
    std::vector<std::size_t> candidates;
    std::vector<std::int64_t> out_now;
    std::vector<std::int64_t> undecided_out;
  };

  // Lower bound on the occupancy of house at moment + 1 given the decisions so far.
  std::int64_t occupancy_floor(const Frame& f, std::size_t house) const {
    return waiting_out_[house] - f.undecided_out[house] + (*f.arrived)[house] +
           arrival_load_[house][static_cast<std::size_t>(f.moment) + 1];
  }

  bool choose(Frame& f, std::size_t idx) {
    if (exceeded_) return false;
    if (idx == f.candidates.size()) {
      if (!charge()) return false;
      std::vector<std::int64_t> next_arrived(n_);
      for (std::size_t house = 0; house < n_; ++house) {
        next_arrived[house] = (*f.arrived)[house] + arrival_load_[house][static_cast<std::size_t>(f.moment) + 1];
        if (si_.capacity[house] != kUnbounded && waiting_out_[house] + next_arrived[house] > si_.capacity[house]) return false;
      }
      std::uint64_t next_waiting = f.waiting;
      for (std::size_t prod : f.candidates) {
        if (departure_[prod] == f.moment) next_waiting &= ~(std::uint64_t{1} << prod);
      }
      return step(f.moment + 1, next_waiting, next_arrived);
    }
    const std::size_t prod = f.candidates[idx];
    const std::size_t from = si_.source[prod];
    const std::size_t tick = si_.sink[prod];
    const std::int64_t size = si_.size[prod];
    const Time arrival = f.moment + si_.transit[prod];
    const auto at = static_cast<std::size_t>(arrival);
    f.undecided_out[from] -= size;

    bool found = false;
    // Depart now.
    if (f.out_now[from] + size <= si_.carry_out[from] &&
        (si_.carry_in[tick] == kUnbounded || arrival_load_[tick][at] + size <= si_.carry_in[tick])) {
      f.out_now[from] += size;
      arrival_load_[tick][at] += size;
      waiting_out_[from] -= size;
      departure_[prod] = f.moment;
      const bool fits = si_.capacity[tick] == kUnbounded || occupancy_floor(f, tick) <= si_.capacity[tick];
      if (fits) found = choose(f, idx + 1);
      if (!found) {
        departure_[prod] = -1;
        waiting_out_[from] += size;
        arrival_load_[tick][at] -= size;
        f.out_now[from] -= size;
      }
    }
    // Wait, unless this is the last admissible departure time.
    if (!found && !exceeded_ && arrival < target_) {
      if (si_.capacity[from] == kUnbounded || occupancy_floor(f, from) <= si_.capacity[from]) {
        found = choose(f, idx + 1);
      }
    }
    f.undecided_out[from] += size;
    return found;
  }

  static constexpr std::size_t kMemoLimit = 4'000'000;

  const ScaledInstance& si_;
  std::uint64_t budget_;
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  Time target_ = 0;
  std::uint64_t nodes_ = 0;
  bool exceeded_ = false;
  std::vector<Time> departure_;
  std::vector<std::vector<std::int64_t>> arrival_load_;
  std::vector<std::int64_t> waiting_out_;
  std::unordered_map<std::vector<std::uint64_t>, Time, KeyHash> memo_;
};

}  // namespace

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::kOptimal: return "Optimal";
    case OutcomeKind::kInfeasibleWithinHorizon: return "InfeasibleWithinHorizon";
    case OutcomeKind::kBudgetExceeded: return "BudgetExceeded";
  }
  return "Unknown";
}

Time default_horizon(const Instance& inst) {
  return static_cast<Time>(inst.product_count()) + inst.max_transit() + 2;
}

OracleOutcome exact_min_completion(const Instance& inst, const SearchConfig& config) {
  if (inst.product_count() > 64) {
    throw Error(ErrorCode::kPreconditionFailed, "the exhaustive oracle handles at most 64 products");
  }
  OracleOutcome outcome;
  if (inst.product_count() == 0) {
    outcome.kind = OutcomeKind::kOptimal;
    return outcome;
  }
  const ScaledInstance scaled(inst);
  Search search(scaled, config.node_budget);
  Time first = std::max(lower_bound(inst), inst.max_transit());
  if (config.objective == Objective::kFeasibilityOnly) first = config.horizon;
  for (Time target = first; target <= config.horizon; ++target) {
    std::vector<Time> departures;
    if (search.run(target, departures)) {
      outcome.kind = OutcomeKind::kOptimal;
      outcome.schedule.departures = std::move(departures);
      outcome.completion = completion_time(inst, outcome.schedule);
      outcome.nodes = search.nodes();
      return outcome;
    }
    if (search.exceeded()) {
      outcome.kind = OutcomeKind::kBudgetExceeded;
      outcome.nodes = search.nodes();
      return outcome;
    }
  }
  outcome.kind = OutcomeKind::kInfeasibleWithinHorizon;
  outcome.nodes = search.nodes();
  return outcome;
}

FeasibilityOutcome is_feasible_within(const Instance& inst, Time horizon, std::uint64_t node_budget) {
  OracleOutcome outcome =
      exact_min_completion(inst, SearchConfig{horizon, node_budget, Objective::kFeasibilityOnly});
  FeasibilityOutcome result;
  result.feasible = outcome.kind == OutcomeKind::kOptimal;
  result.budget_exceeded = outcome.kind == OutcomeKind::kBudgetExceeded;
  if (result.feasible) result.witness = std::move(outcome.schedule);
  return result;
}

}  // namespace reallocation
