#include "cbd/rational.hpp"

#include <cctype>

namespace cbd {
namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// Boost reads a leading zero as an octal prefix.
boost::multiprecision::mpz_int parse_integer(std::string_view digits) {
  auto first = digits.find_first_not_of('0');
  if (first == std::string_view::npos) return 0;
  return boost::multiprecision::mpz_int(std::string(digits.substr(first)));
}

[[noreturn]] void reject(std::string_view text) {
  throw std::invalid_argument("not an exact rational: '" + std::string(text) + "'");
}

}  // namespace

Rational power_of_ten(int exponent) {
  boost::multiprecision::mpz_int p = 1;
  for (int i = 0; i < (exponent < 0 ? -exponent : exponent); ++i) p *= 10;
  return exponent < 0 ? Rational(boost::multiprecision::mpz_int(1), p) : Rational(p);
}

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) reject(text);

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) reject(text);
    boost::multiprecision::mpz_int d = parse_integer(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    value = Rational(parse_integer(num), d);
  } else {
    int exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = s.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!all_digits(exp_text) || exp_text.size() > 6) reject(text);
      exponent = std::stoi(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string_view int_part = s;
    std::string_view frac_part;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      int_part = s.substr(0, dot);
      frac_part = s.substr(dot + 1);
      if (int_part.empty() && frac_part.empty()) reject(text);
      if (!int_part.empty() && !all_digits(int_part)) reject(text);
      if (!frac_part.empty() && !all_digits(frac_part)) reject(text);
    } else if (!all_digits(int_part)) {
      reject(text);
    }
    std::string digits = std::string(int_part) + std::string(frac_part);
    if (digits.empty()) reject(text);
    value = Rational(parse_integer(digits)) *
            power_of_ten(exponent - static_cast<int>(frac_part.size()));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

}  // namespace cbd
