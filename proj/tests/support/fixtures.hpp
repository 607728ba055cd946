#pragma once

#include <string>
#include <utility>
#include <vector>

#include "reallocation/core_model.hpp"

namespace fixtures {

using namespace reallocation;

inline ExtRational inf() { return ExtRational::infinity(); }
inline ExtRational lim(long value) { return ExtRational(value); }

inline Warehouse house(std::string id, ExtRational capacity, ExtRational carry_out, ExtRational carry_in) {
  return Warehouse{std::move(id), std::move(capacity), std::move(carry_out), std::move(carry_in)};
}

inline ProductRecord item(std::string id, long size, std::string from, std::string to, Time transit = 1) {
  return ProductRecord{std::move(id), Rational(size), std::move(from), std::move(to), transit};
}

// The two-warehouse exchange used throughout the tests. The product that
// stays in place is left out, since products must move.
inline Instance intro_instance() {
  return make_instance({house("W1", lim(20), lim(5), lim(6)), house("W2", lim(10), lim(5), lim(5))},
                       {item("p1", 1, "W1", "W2"), item("p2", 3, "W1", "W2"), item("p3", 5, "W1", "W2"),
                        item("p5", 3, "W2", "W1"), item("p6", 4, "W2", "W1", 2)});
}

inline Schedule intro_good_schedule(const Instance& inst) {
  return schedule_from_map(inst, {{"p1", 0}, {"p2", 0}, {"p5", 0}, {"p3", 1}, {"p6", 1}});
}

inline Schedule intro_bad_schedule(const Instance& inst) {
  return schedule_from_map(inst, {{"p1", 0}, {"p2", 0}, {"p6", 0}, {"p3", 1}, {"p5", 1}});
}

// Same instance with every limit unbounded.
inline Instance intro_unbounded() {
  return make_instance({house("W1", inf(), inf(), inf()), house("W2", inf(), inf(), inf())},
                       {item("p1", 1, "W1", "W2"), item("p2", 3, "W1", "W2"), item("p3", 5, "W1", "W2"),
                        item("p5", 3, "W2", "W1"), item("p6", 4, "W2", "W1", 2)});
}

}  // namespace fixtures
