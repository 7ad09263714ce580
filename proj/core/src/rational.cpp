#include "ambilogic/rational.hpp"

#include <boost/functional/hash.hpp>

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace ambilogic {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational::Rational(long long num, long long den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  value_ = Backend(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= o.value_;
  return *this;
}

std::optional<Rational> Rational::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  std::string_view num = text;
  std::string_view den = "1";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
  }
  if (!all_digits(num) || !all_digits(den)) return std::nullopt;
  boost::multiprecision::cpp_int n{std::string(num)};
  boost::multiprecision::cpp_int d{std::string(den)};
  if (d == 0) return std::nullopt;
  if (negative) n = -n;
  return Rational(Backend(n, d));
}

std::string Rational::str() const {
  std::string out = numerator().str();
  if (!is_integer()) {
    out += '/';
    out += denominator().str();
  }
  return out;
}

boost::multiprecision::cpp_int Rational::numerator() const {
  return boost::multiprecision::numerator(value_);
}

boost::multiprecision::cpp_int Rational::denominator() const {
  return boost::multiprecision::denominator(value_);
}

std::size_t Rational::hash() const {
  std::size_t seed = boost::hash<boost::multiprecision::cpp_int>{}(numerator());
  boost::hash_combine(seed, boost::hash<boost::multiprecision::cpp_int>{}(denominator()));
  return seed;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace ambilogic
