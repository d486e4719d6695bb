#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace waring {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational kept in lowest terms with a positive
// denominator.
class ExactRational {
 public:
  ExactRational() = default;
  ExactRational(std::int64_t value) : value_(value) {}  // NOLINT(implicit)
  ExactRational(const BigInt& num, const BigInt& den);

  // Every finite double is a dyadic rational; the conversion is exact.
  static ExactRational from_double(double x);

  BigInt numerator() const;
  BigInt denominator() const;

  double to_double() const;
  std::string str() const;

  BigInt floor() const;
  BigInt ceil() const;
  // x - floor(x), in [0, 1).
  ExactRational fractional_part() const;

  bool is_zero() const { return value_ == 0; }
  int sign() const;

  ExactRational operator-() const;
  ExactRational& operator+=(const ExactRational& o);
  ExactRational& operator-=(const ExactRational& o);
  ExactRational& operator*=(const ExactRational& o);
  ExactRational& operator/=(const ExactRational& o);

  friend ExactRational operator+(ExactRational a, const ExactRational& b) { return a += b; }
  friend ExactRational operator-(ExactRational a, const ExactRational& b) { return a -= b; }
  friend ExactRational operator*(ExactRational a, const ExactRational& b) { return a *= b; }
  friend ExactRational operator/(ExactRational a, const ExactRational& b) { return a /= b; }

  friend bool operator==(const ExactRational& a, const ExactRational& b) {
    return a.value_ == b.value_;
  }
  friend std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b);

  friend std::ostream& operator<<(std::ostream& os, const ExactRational& r) {
    return os << r.str();
  }

  const boost::multiprecision::cpp_rational& raw() const { return value_; }

 private:
  explicit ExactRational(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}

  boost::multiprecision::cpp_rational value_;
};

// Floor division for signed 64-bit integers (b > 0).
constexpr std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a < 0)) --q;
  return q;
}

constexpr std::int64_t ceil_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && (a > 0)) ++q;
  return q;
}

// Least non-negative residue of a modulo m (m > 0).
constexpr std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace waring
