#include "reallocation/rational.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "reallocation/error.hpp"

namespace reallocation {
namespace {

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::kInvalidDocument, "not a number: '" + std::string(text) + "'");
}

bool all_digits(std::string_view sv) {
  return !sv.empty() && std::all_of(sv.begin(), sv.end(), [](unsigned char ch) { return std::isdigit(ch); });
}

mpz_class parse_integer(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  if (!all_digits(text)) bad_number(whole);
  mpz_class value(std::string(text), 10);
  return negative ? mpz_class(-value) : value;
}

Rational parse_decimal(std::string_view text) {
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto eid = text.find_first_of("eE"); eid != std::string_view::npos) {
    mantissa = text.substr(0, eid);
    exponent = parse_integer(text.substr(eid + 1), text).get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  auto dot = mantissa.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(mantissa);
  } else {
    std::string_view frac = mantissa.substr(dot + 1);
    digits = std::string(mantissa.substr(0, dot)) + std::string(frac);
    exponent -= static_cast<long>(frac.size());
  }
  if (!all_digits(digits)) bad_number(text);
  Rational value(mpz_class(digits, 10));
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) {
    value *= ten_pow;
  } else {
    value /= ten_pow;
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad_number(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash), text);
    mpz_class den = parse_integer(text.substr(slash + 1), text);
    if (den == 0) bad_number(text);
    Rational value(num, den);
    value.canonicalize();
    return value;
  }
  return parse_decimal(text);
}

ExtRational parse_ext_rational(std::string_view text) {
  std::string lowered(text);
  std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lowered == "inf" || lowered == "+inf" || lowered == "infinity") return ExtRational::infinity();
  return ExtRational(parse_rational(text));
}

std::string format_rational(const Rational& value) { return value.get_str(10); }

std::string format_ext_rational(const ExtRational& value) {
  return value.is_infinite() ? "inf" : format_rational(value.value());
}

std::int64_t floor_to_int(const Rational& value) {
  mpz_class qsets;
  mpz_fdiv_q(qsets.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  if (!qsets.fits_slong_p()) throw Error(ErrorCode::kInvalidDocument, "integer out of range");
  return qsets.get_si();
}

std::int64_t ceil_to_int(const Rational& value) {
  mpz_class qsets;
  mpz_cdiv_q(qsets.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  if (!qsets.fits_slong_p()) throw Error(ErrorCode::kInvalidDocument, "integer out of range");
  return qsets.get_si();
}

bool is_integer(const Rational& value) { return value.get_den() == 1; }

}  // namespace reallocation
