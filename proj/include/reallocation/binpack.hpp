#pragma once

#include <map>
#include <string>
#include <vector>

#include "reallocation/core_model.hpp"

namespace reallocation {

struct Item {
  std::string id;
  Rational size;
};

// An infinite capacity is allowed: everything fits in one bin.
struct BinPackingInstance {
  std::vector<Item> items;
  ExtRational capacity;
};

// Bins in order; each bin lists item indices.
using Packing = std::vector<std::vector<std::size_t>>;

bool is_valid_packing(const BinPackingInstance& bp, const Packing& packing);

// Items are the products leaving w with capacity carry_out(w). When carry_out
// is unbounded everywhere instead of carry_in, the mirrored form is used:
// products entering w with capacity carry_in(w). Requires unbounded warehouse
// capacities (kPreconditionFailed).
BinPackingInstance to_binpacking(const Instance& inst, std::size_t house);

// First fit over a given item order.
Packing first_fit(const BinPackingInstance& bp, const std::vector<std::size_t>& order);

// First fit decreasing: size descending, then id ascending.
Packing ffd(const BinPackingInstance& bp);

// First fit over transit descending, then id ascending. Throws kMissingTransit.
Packing ff_by_transit(const BinPackingInstance& bp, const std::map<std::string, Time>& transit);

enum class BinStrategy { kFfd, kFfByTransit, kUniformSize };

std::string_view to_string(BinStrategy strategy);

// Packs every warehouse independently and departs bin k at time k. Requires
// unbounded warehouse capacities and one unbounded carry side; kFfd also needs
// uniform transit and kUniformSize uniform size (kPreconditionFailed).
Schedule schedule_per_warehouse(const Instance& inst, BinStrategy strategy);

}  // namespace reallocation
