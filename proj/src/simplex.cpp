#include "reallocation/simplex.hpp"

namespace reallocation::lp {
namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

class Tableau {
 public:
  Tableau(std::size_t variable_count, const std::vector<Constraint>& constraints)
      : variable_count_(variable_count) {
    const std::size_t rows = constraints.size();
    std::size_t slacks = 0;
    std::size_t artificials = 0;
    for (const Constraint& con : constraints) {
      if (con.sense == Sense::kLessEqual) ++slacks;
      if (con.sense == Sense::kEqual || con.rhs < 0) ++artificials;
    }
    first_artificial_ = variable_count + slacks;
    columns_ = first_artificial_ + artificials;
    cells_.assign(rows, std::vector<Rational>(columns_ + 1));
    basis_.assign(rows, kNone);
    objective_.assign(columns_ + 1, Rational(0));

    std::size_t next_slack = variable_count;
    std::size_t next_artificial = first_artificial_;
    for (std::size_t idx = 0; idx < rows; ++idx) {
      const Constraint& con = constraints[idx];
      // Rows are stored with a nonnegative right-hand side.
      const bool flip = con.rhs < 0;
      auto& row = cells_[idx];
      for (const auto& [var, coeff] : con.terms) {
        if (flip) {
          row[var] -= coeff;
        } else {
          row[var] += coeff;
        }
      }
      row[columns_] = flip ? Rational(-con.rhs) : con.rhs;
      if (con.sense == Sense::kLessEqual) {
        row[next_slack] = flip ? -1 : 1;
        if (!flip) basis_[idx] = next_slack;
        ++next_slack;
      }
      if (basis_[idx] == kNone) {
        row[next_artificial] = 1;
        basis_[idx] = next_artificial++;
      }
    }
    // Reduced costs of the phase-one objective (sum of artificials).
    for (std::size_t idx = 0; idx < rows; ++idx) {
      if (basis_[idx] < first_artificial_) continue;
      for (std::size_t j = 0; j <= columns_; ++j) {
        if (j < first_artificial_ || j == columns_) objective_[j] -= cells_[idx][j];
      }
    }
  }

  // Runs phase one; true when the artificial objective reaches zero.
  bool phase_one() {
    while (true) {
      std::size_t entering = kNone;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (sgn(objective_[j]) < 0) {
          entering = j;
          break;
        }
      }
      if (entering == kNone) break;
      std::size_t leaving = kNone;
      Rational best_ratio;
      for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
        if (removed(idx) || sgn(cells_[idx][entering]) <= 0) continue;
        Rational ratio = cells_[idx][columns_] / cells_[idx][entering];
        if (leaving == kNone || ratio < best_ratio || (ratio == best_ratio && basis_[idx] < basis_[leaving])) {
          leaving = idx;
          best_ratio = ratio;
        }
      }
      if (leaving == kNone) break;  // cannot happen: phase one is bounded
      pivot(leaving, entering);
    }
    return sgn(objective_[columns_]) == 0;
  }

  // Pivots zero-valued artificials out of the basis; rows where that is
  // impossible are linearly dependent and get dropped.
  void expel_artificials() {
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
      if (basis_[idx] < first_artificial_ || removed(idx)) continue;
      std::size_t column = kNone;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (sgn(cells_[idx][j]) != 0) {
          column = j;
          break;
        }
      }
      if (column == kNone) {
        basis_[idx] = kRemoved;
      } else {
        pivot(idx, column);
      }
    }
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> values(variable_count_, Rational(0));
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
      if (!removed(idx) && basis_[idx] < variable_count_) values[basis_[idx]] = cells_[idx][columns_];
    }
    return values;
  }

 private:
  static constexpr std::size_t kRemoved = static_cast<std::size_t>(-2);

  bool removed(std::size_t idx) const { return basis_[idx] == kRemoved; }

  void pivot(std::size_t row, std::size_t column) {
    auto& pivot_row = cells_[row];
    const Rational pivot_value = pivot_row[column];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j <= columns_; ++j) {
      if (sgn(pivot_row[j]) != 0) {
        pivot_row[j] /= pivot_value;
        nonzero.push_back(j);
      }
    }
    auto eliminate = [&](std::vector<Rational>& target) {
      if (sgn(target[column]) == 0) return;
      const Rational factor = target[column];
      for (std::size_t j : nonzero) target[j] -= factor * pivot_row[j];
    };
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
      if (idx != row && !removed(idx)) eliminate(cells_[idx]);
    }
    eliminate(objective_);
    basis_[row] = column;
  }

  std::size_t variable_count_;
  std::size_t first_artificial_ = 0;
  std::size_t columns_ = 0;
  std::vector<std::vector<Rational>> cells_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> objective_;
};

}  // namespace

std::optional<std::vector<Rational>> basic_feasible_solution(std::size_t variable_count,
                                                             const std::vector<Constraint>& constraints) {
  Tableau tableau(variable_count, constraints);
  if (!tableau.phase_one()) return std::nullopt;
  tableau.expel_artificials();
  return tableau.solution();
}

}  // namespace reallocation::lp
