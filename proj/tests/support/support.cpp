#include "support.hpp"

#include <algorithm>
#include <functional>

namespace support {

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t Rng::uniform(std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<std::int64_t>(next() % span);
}

bool Rng::chance(int percent) { return uniform(0, 99) < percent; }

namespace {

bool fits(const Rational& load, const ExtRational& limit) { return limit.is_infinite() || load <= limit.value(); }

}  // namespace

Time naive_completion(const Instance& inst, const Schedule& sched) {
  Time last = 0;
  for (std::size_t i = 0; i < inst.products().size(); ++i) {
    last = std::max(last, sched.departures[i] + inst.products()[i].transit);
  }
  return last;
}

std::vector<NaiveViolation> naive_violations(const Instance& inst, const Schedule& sched) {
  std::vector<NaiveViolation> found;
  const Time horizon = naive_completion(inst, sched);
  const auto& items = inst.products();
  for (std::size_t house = 0; house < inst.warehouses().size(); ++house) {
    const auto& limits = inst.warehouses()[house];
    for (Time now = 0; now <= horizon; ++now) {
      Rational leaving(0), landing(0), stored(0);
      for (std::size_t i = 0; i < items.size(); ++i) {
        const Time go = sched.departures[i];
        const Time land = go + items[i].transit;
        if (items[i].source == house) {
          if (go == now) leaving += items[i].size;
          if (go >= now) stored += items[i].size;
        }
        if (items[i].sink == house) {
          if (land == now) landing += items[i].size;
          if (land <= now) stored += items[i].size;
        }
      }
      if (!fits(leaving, limits.carry_out)) found.push_back({house, now, 0});
      if (!fits(landing, limits.carry_in)) found.push_back({house, now, 1});
      if (!fits(stored, limits.capacity)) found.push_back({house, now, 2});
    }
  }
  return found;
}

bool naive_feasible(const Instance& inst, const Schedule& sched) { return naive_violations(inst, sched).empty(); }

std::optional<Time> brute_min_completion(const Instance& inst, Time horizon) {
  const std::size_t count = inst.products().size();
  if (count == 0) return 0;
  Schedule sched{std::vector<Time>(count, 0)};
  std::optional<Time> best;
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (i == count) {
      const Time done = naive_completion(inst, sched);
      if ((!best || done < *best) && naive_feasible(inst, sched)) best = done;
      return;
    }
    for (Time go = 0; go + inst.products()[i].transit <= horizon; ++go) {
      sched.departures[i] = go;
      assign(i + 1);
    }
  };
  assign(0);
  return best;
}

std::size_t brute_bins(const std::vector<Rational>& sizes, const ExtRational& capacity) {
  if (sizes.empty()) return 0;
  std::size_t best = sizes.size();
  std::vector<Rational> loads;
  std::function<void(std::size_t)> place = [&](std::size_t i) {
    if (i == sizes.size()) {
      best = std::min(best, loads.size());
      return;
    }
    // Restricted growth: item i joins an existing bin or opens the next one.
    const std::size_t open = loads.size();
    for (std::size_t bin = 0; bin < open; ++bin) {
      loads[bin] += sizes[i];
      if (fits(loads[bin], capacity)) place(i + 1);
      loads[bin] -= sizes[i];
    }
    loads.push_back(sizes[i]);
    place(i + 1);
    loads.pop_back();
  };
  place(0);
  return best;
}

bool brute_three_partition(const std::vector<std::int64_t>& values, std::int64_t bound) {
  const std::size_t groups = values.size() / 3;
  std::vector<std::size_t> label(values.size(), 0);
  while (true) {
    std::vector<std::int64_t> sum(groups, 0);
    std::vector<int> members(groups, 0);
    for (std::size_t i = 0; i < values.size(); ++i) {
      sum[label[i]] += values[i];
      ++members[label[i]];
    }
    bool ok = true;
    for (std::size_t g = 0; g < groups; ++g) ok = ok && sum[g] == bound && members[g] == 3;
    if (ok) return true;
    std::size_t i = 0;
    while (i < label.size() && ++label[i] == groups) label[i++] = 0;
    if (i == label.size()) return false;
  }
}

Time brute_flow_shop(const std::vector<std::int64_t>& delays) {
  if (delays.empty()) return 0;
  const std::size_t jobs = delays.size();
  for (Time makespan = 2;; ++makespan) {
    std::vector<Time> start(jobs, 0);
    bool exhausted = false;
    while (!exhausted) {
      bool ok = true;
      for (std::size_t a = 0; a < jobs && ok; ++a) {
        ok = start[a] + delays[a] + 2 <= makespan;
        for (std::size_t b = a + 1; b < jobs && ok; ++b) {
          ok = start[a] != start[b] && start[a] + delays[a] != start[b] + delays[b];
        }
      }
      if (ok) return makespan;
      std::size_t i = 0;
      while (i < jobs && ++start[i] > makespan) start[i++] = 0;
      exhausted = i == jobs;
    }
  }
}

namespace {

ExtRational draw_limit(Rng& rng, Limit kind, const Rational& minimum, const GenConfig& config, bool& ok) {
  const bool infinite = kind == Limit::kInfinite || (kind == Limit::kEither && rng.chance(50));
  if (infinite) return ExtRational::infinity();
  Rational value = minimum + Rational(rng.uniform(0, config.slack));
  if (value > config.max_limit) value = config.max_limit;
  if (value < minimum) ok = false;
  return ExtRational(value);
}

}  // namespace

Instance random_instance(Rng& rng, const GenConfig& config) {
  while (true) {
    const auto houses = static_cast<std::size_t>(rng.uniform(config.min_warehouses, config.max_warehouses));
    const auto count = static_cast<std::size_t>(rng.uniform(config.min_products, config.max_products));
    std::vector<reallocation::Product> items;
    for (std::size_t i = 0; i < count; ++i) {
      const auto from = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(houses) - 1));
      auto to = static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(houses) - 2));
      if (to >= from) ++to;
      const std::int64_t size = config.sizes[static_cast<std::size_t>(
          rng.uniform(0, static_cast<std::int64_t>(config.sizes.size()) - 1))];
      items.push_back({"p" + std::to_string(i + 1), Rational(size), from, to,
                       rng.uniform(config.min_transit, config.max_transit)});
    }
    bool ok = true;
    std::vector<reallocation::Warehouse> warehouses;
    for (std::size_t house = 0; house < houses; ++house) {
      Rational out_sum(0), in_sum(0), out_max(1), in_max(1);
      for (const auto& item : items) {
        if (item.source == house) {
          out_sum += item.size;
          out_max = std::max(out_max, item.size);
        }
        if (item.sink == house) {
          in_sum += item.size;
          in_max = std::max(in_max, item.size);
        }
      }
      warehouses.push_back({"w" + std::to_string(house + 1),
                            draw_limit(rng, config.capacity, std::max({out_sum, in_sum, Rational(1)}), config, ok),
                            draw_limit(rng, config.carry_out, out_max, config, ok),
                            draw_limit(rng, config.carry_in, in_max, config, ok)});
    }
    if (ok) return Instance(std::move(warehouses), std::move(items));
  }
}

Schedule random_schedule(Rng& rng, const Instance& inst, Time max_departure) {
  Schedule sched;
  for (std::size_t i = 0; i < inst.products().size(); ++i) sched.departures.push_back(rng.uniform(0, max_departure));
  return sched;
}

}  // namespace support
