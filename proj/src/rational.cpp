#include "waring/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace waring {

namespace mp = boost::multiprecision;

ExactRational::ExactRational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::invalid_argument("ExactRational: zero denominator");
  value_ = den < 0 ? mp::cpp_rational(-num, -den) : mp::cpp_rational(num, den);
}

ExactRational ExactRational::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("ExactRational: non-finite double");
  int exp = 0;
  double mant = std::frexp(x, &exp);
  // mant * 2^53 is an integer for any double.
  auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  BigInt num = scaled;
  BigInt den = 1;
  if (exp >= 0) {
    num <<= exp;
  } else {
    den <<= -exp;
  }
  return ExactRational(num, den);
}

BigInt ExactRational::numerator() const { return mp::numerator(value_); }
BigInt ExactRational::denominator() const { return mp::denominator(value_); }

double ExactRational::to_double() const { return value_.convert_to<double>(); }

std::string ExactRational::str() const {
  if (denominator() == 1) return numerator().str();
  return numerator().str() + "/" + denominator().str();
}

BigInt ExactRational::floor() const {
  BigInt num = numerator();
  BigInt den = denominator();
  BigInt q = num / den;  // truncates toward zero
  if (num % den != 0 && num < 0) --q;
  return q;
}

BigInt ExactRational::ceil() const {
  BigInt num = numerator();
  BigInt den = denominator();
  BigInt q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

ExactRational ExactRational::fractional_part() const {
  return *this - ExactRational(floor(), BigInt(1));
}

int ExactRational::sign() const { return value_.sign(); }

ExactRational ExactRational::operator-() const { return ExactRational(mp::cpp_rational(-value_)); }

ExactRational& ExactRational::operator+=(const ExactRational& o) {
  value_ += o.value_;
  return *this;
}
ExactRational& ExactRational::operator-=(const ExactRational& o) {
  value_ -= o.value_;
  return *this;
}
ExactRational& ExactRational::operator*=(const ExactRational& o) {
  value_ *= o.value_;
  return *this;
}
ExactRational& ExactRational::operator/=(const ExactRational& o) {
  if (o.is_zero()) throw std::domain_error("ExactRational: division by zero");
  value_ /= o.value_;
  return *this;
}

std::strong_ordering operator<=>(const ExactRational& a, const ExactRational& b) {
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (a.value_ > b.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace waring
