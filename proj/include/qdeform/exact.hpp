#pragma once

// Arbitrary-precision scalars for the exact q-integer layer, plus small
// parsing/printing helpers shared by the exact suites and the CLI.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <stdexcept>
#include <string>

namespace qdeform {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

inline BigInt big_numerator(const BigRat& r) {
  return boost::multiprecision::numerator(r);
}
inline BigInt big_denominator(const BigRat& r) {
  return boost::multiprecision::denominator(r);
}

inline BigInt binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

// r^e for any integer e; exact, e < 0 inverts.
inline BigRat rational_pow(const BigRat& r, long e) {
  if (e == 0) return BigRat(1);
  if (r == 0) {
    if (e < 0) throw std::domain_error("rational_pow: 0 to a negative power");
    return BigRat(0);
  }
  const unsigned long mag =
      e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  BigInt pn = boost::multiprecision::pow(big_numerator(r), mag);
  BigInt pd = boost::multiprecision::pow(big_denominator(r), mag);
  return e > 0 ? BigRat(pn, pd) : BigRat(pd, pn);
}

inline std::string to_string(const BigRat& r) { return r.str(); }

// Accepts "a/b", integers, and plain decimals ("0.35", "-1.25e-2"),
// all converted exactly.
inline BigRat parse_rational(const std::string& text) {
  const auto fail = [&]() -> BigRat {
    throw std::invalid_argument("parse_rational: cannot parse '" + text + "'");
  };
  if (text.empty()) return fail();

  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    try {
      BigInt num(text.substr(0, slash));
      BigInt den(text.substr(slash + 1));
      if (den == 0) throw std::invalid_argument("zero denominator");
      return BigRat(num, den);
    } catch (const std::exception&) {
      return fail();
    }
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  BigInt mantissa = 0;
  long frac_digits = 0;
  bool seen_digit = false, seen_point = false;
  for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
    if (text[i] == '.') {
      if (seen_point) return fail();
      seen_point = true;
    } else if (std::isdigit(static_cast<unsigned char>(text[i]))) {
      mantissa = mantissa * 10 + (text[i] - '0');
      if (seen_point) ++frac_digits;
      seen_digit = true;
    } else {
      return fail();
    }
  }
  if (!seen_digit) return fail();

  long exponent = 0;
  if (i < text.size()) {  // exponent part
    ++i;
    if (i >= text.size()) return fail();
    try {
      exponent = std::stol(text.substr(i));
    } catch (const std::exception&) {
      return fail();
    }
  }

  BigRat value(mantissa);
  const long shift = exponent - frac_digits;
  value *= rational_pow(BigRat(10), shift);
  return negative ? -value : value;
}

}  // namespace qdeform
