#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "reallocation/rational.hpp"

namespace reallocation::lp {

enum class Sense { kLessEqual, kEqual };

struct Constraint {
  std::vector<std::pair<std::size_t, Rational>> terms;  // (variable, coefficient)
  Sense sense = Sense::kLessEqual;
  Rational rhs;
};

// Phase-one simplex over exact rationals with Bland's rule. Returns a basic
// feasible solution of { x >= 0 : constraints }, i.e. a vertex of that
// polyhedron, or nullopt when it is empty.
std::optional<std::vector<Rational>> basic_feasible_solution(std::size_t variable_count,
                                                             const std::vector<Constraint>& constraints);

}  // namespace reallocation::lp
