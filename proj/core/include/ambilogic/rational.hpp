// ===== rational.hpp — exact rational arithmetic =====
//
// All probability mass in this library is exact: conditioning chains multiply
// denominators, so the backing integers must be arbitrary precision. The
// wrapper keeps values canonical (lowest terms, denominator > 0) and gives
// them value semantics, ordering, and a stable "n" / "n/d" text form.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

namespace ambilogic {

class Rational {
public:
  using Backend = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long n) : value_(n) {}
  Rational(long long num, long long den);
  explicit Rational(Backend v) : value_(std::move(v)) {}

  // Parses "n" or "n/d" with an optional leading '-'. Returns nullopt on any
  // malformed input, including a zero denominator.
  static std::optional<Rational> parse(std::string_view text);

  // Canonical text: "n" when the denominator is 1, otherwise "n/d".
  std::string str() const;

  boost::multiprecision::cpp_int numerator() const;
  boost::multiprecision::cpp_int denominator() const;

  bool is_zero() const { return value_.is_zero(); }
  bool is_one() const { return value_ == 1; }
  bool is_negative() const { return value_ < 0; }
  bool is_integer() const { return denominator() == 1; }

  Rational operator-() const { return Rational(Backend(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.value_ != b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.value_ <= b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.value_ > b.value_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.value_ >= b.value_; }

  std::size_t hash() const;

  const Backend& backend() const { return value_; }

private:
  Backend value_{};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

}  // namespace ambilogic

template <>
struct std::hash<ambilogic::Rational> {
  std::size_t operator()(const ambilogic::Rational& r) const { return r.hash(); }
};
