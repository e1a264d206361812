#pragma once

// Exact rational values for quasi-measures and cover costs.

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace quasi {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Renders a rational as "p/q", always with an explicit denominator.
inline std::string to_string(const Rational& r) {
  return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

inline Integer parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw std::invalid_argument("malformed rational: expected digits");
  }
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace detail

/// Parses "p/q" or a bare integer "p". Throws std::invalid_argument on
/// malformed text or a zero denominator.
inline Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(detail::parse_integer(text));
  Integer num = detail::parse_integer(text.substr(0, slash));
  auto den_text = text.substr(slash + 1);
  if (!detail::all_digits(den_text)) {
    throw std::invalid_argument("malformed rational: bad denominator");
  }
  Integer den(std::string{den_text});
  if (den == 0) throw std::invalid_argument("malformed rational: zero denominator");
  return Rational(num, den);
}

/// A probability value: an exact rational in [0, 1], kept in lowest terms.
class QValue {
 public:
  QValue() = default;

  explicit QValue(const Rational& value) : value_(value) {
    if (value_ < 0 || value_ > 1) {
      throw std::out_of_range("value outside [0,1]: " + to_string(value_));
    }
  }

  QValue(long num, long den) : QValue(make(num, den)) {}

  static QValue zero() { return QValue(); }
  static QValue one() { return QValue(Rational(1)); }

  const Rational& get() const noexcept { return value_; }
  std::string str() const { return to_string(value_); }

  friend bool operator==(const QValue& a, const QValue& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const QValue& a, const QValue& b) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  static Rational make(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  }

  Rational value_{0};
};

}  // namespace quasi
