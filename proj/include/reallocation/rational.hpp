#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace reallocation {

using Rational = mpq_class;

// A nonnegative rational or +infinity. Used for all capacities.
class ExtRational {
 public:
  ExtRational() = default;
  ExtRational(const Rational& value) : value_(value) {}  // NOLINT: implicit by design
  ExtRational(long value) : value_(value) {}              // NOLINT

  static ExtRational infinity() {
    ExtRational result;
    result.infinite_ = true;
    return result;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  // Only meaningful when finite.
  const Rational& value() const { return value_; }

  // True when `load` fits under this limit.
  bool admits(const Rational& load) const { return infinite_ || load <= value_; }

  ExtRational operator+(const Rational& degree_cap) const {
    if (infinite_) return *this;
    return ExtRational(Rational(value_ + degree_cap));
  }

  friend bool operator==(const ExtRational& a, const ExtRational& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  bool infinite_ = false;
  Rational value_{0};
};

// Accepts "7", "-3", "3/4", "2.5" and "1e-2". Throws Error(kInvalidDocument).
Rational parse_rational(std::string_view text);
// As parse_rational, plus "inf" / "infinity".
ExtRational parse_ext_rational(std::string_view text);

// "3" or "3/4".
std::string format_rational(const Rational& value);
// As above, or "inf".
std::string format_ext_rational(const ExtRational& value);

std::int64_t floor_to_int(const Rational& value);
std::int64_t ceil_to_int(const Rational& value);
bool is_integer(const Rational& value);

}  // namespace reallocation
