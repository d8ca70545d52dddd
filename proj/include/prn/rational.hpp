#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

#include "prn/errors.hpp"

namespace prn {

// All probabilities and transition weights are exact rationals. Floating
// point appears only in the iterative steady-state solver.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

namespace detail {

inline BigInt parse_digits(std::string_view text) {
  if (text.empty()) throw SyntaxError("expected digits");
  for (char c : text)
    if (c < '0' || c > '9') throw SyntaxError("expected digits, got '" + std::string(text) + "'");
  return BigInt(std::string(text));
}

// True when den = 2^a 5^b; k receives the number of decimal places needed.
inline bool decimal_denominator(BigInt den, unsigned& k) {
  unsigned a = 0, b = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++a;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++b;
  }
  k = a > b ? a : b;
  return den == 1;
}

inline std::string digits_to_decimal(BigInt scaled, unsigned places, bool negative) {
  std::string digits = scaled.str();
  if (digits.size() < places + 1) digits.insert(0, places + 1 - digits.size(), '0');
  std::string out = digits.substr(0, digits.size() - places);
  if (places > 0) {
    out += '.';
    out += digits.substr(digits.size() - places);
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  if (negative && out != "0") out.insert(out.begin(), '-');
  return out;
}

}  // namespace detail

// Accepts integers ("3"), fractions ("46/100"), and decimals ("0.46", ".46"),
// with an optional sign. The value is stored exactly.
inline Rational parse_rational(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  if (rest.empty()) throw SyntaxError("invalid number '" + std::string(text) + "'");
  Rational value;
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    BigInt num = detail::parse_digits(rest.substr(0, slash));
    BigInt den = detail::parse_digits(rest.substr(slash + 1));
    if (den == 0) throw SyntaxError("zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else {
    auto dot = rest.find('.');
    std::string_view whole = rest.substr(0, dot == std::string_view::npos ? rest.size() : dot);
    std::string_view frac = dot == std::string_view::npos ? std::string_view() : rest.substr(dot + 1);
    if (whole.empty() && frac.empty())
      throw SyntaxError("invalid number '" + std::string(text) + "'");
    BigInt num = whole.empty() ? BigInt(0) : detail::parse_digits(whole);
    BigInt den = 1;
    for (char c : frac) {
      if (c < '0' || c > '9')
        throw SyntaxError("invalid number '" + std::string(text) + "'");
      num = num * 10 + (c - '0');
      den *= 10;
    }
    value = Rational(num, den);
  }
  return negative ? Rational(-value) : value;
}

// "11/100", or "3" when the denominator is 1.
inline std::string format_fraction(const Rational& r) {
  BigInt num = numerator(r), den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

// Shortest exact decimal ("0.46") when one exists, otherwise the fraction.
inline std::string format_rational(const Rational& r) {
  BigInt num = numerator(r), den = denominator(r);
  unsigned places = 0;
  if (!detail::decimal_denominator(den, places)) return format_fraction(r);
  if (places == 0) return num.str();
  BigInt scale = pow(BigInt(10), places);
  BigInt scaled = abs(num) * (scale / den);
  return detail::digits_to_decimal(scaled, places, num < 0);
}

// Rounded decimal for display of values with no exact decimal form.
inline std::string format_decimal_approx(const Rational& r, unsigned places = 12) {
  BigInt num = abs(numerator(r)), den = denominator(r);
  BigInt scale = pow(BigInt(10), places);
  BigInt scaled = (num * scale + den / 2) / den;
  return detail::digits_to_decimal(scaled, places, numerator(r) < 0);
}

// Fraction plus a decimal gloss: "11/100 (= 0.11)" or "1/3 (~ 0.333333333333)".
inline std::string format_annotated(const Rational& r) {
  unsigned places = 0;
  if (detail::decimal_denominator(denominator(r), places))
    return format_fraction(r) + " (= " + format_rational(r) + ")";
  return format_fraction(r) + " (~ " + format_decimal_approx(r) + ")";
}

// A rational confined to [0, 1]. Selection probabilities in a network must
// additionally be positive; that is enforced where networks are built.
class Probability {
 public:
  explicit Probability(Rational value) : value_(std::move(value)) {
    if (value_ < 0 || value_ > 1)
      throw ValidationError("probability " + format_fraction(value_) + " outside [0, 1]");
  }

  static Probability parse(std::string_view text) { return Probability(parse_rational(text)); }

  const Rational& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }
  std::string str() const { return format_rational(value_); }

  friend bool operator==(const Probability& a, const Probability& b) {
    return a.value_ == b.value_;
  }
  friend bool operator<(const Probability& a, const Probability& b) { return a.value_ < b.value_; }

 private:
  Rational value_;
};

}  // namespace prn
