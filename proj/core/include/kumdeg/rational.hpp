#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include <boost/rational.hpp>

namespace kumdeg {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

/// Largest r with r*r <= n, for n >= 0.
constexpr std::int64_t isqrt(std::int64_t n) {
  if (n <= 0) return 0;
  std::int64_t r = 0;
  std::int64_t bit = std::int64_t{1} << 62;
  while (bit > n) bit >>= 2;
  while (bit != 0) {
    if (n >= r + bit) {
      n -= r + bit;
      r = (r >> 1) + bit;
    } else {
      r >>= 1;
    }
    bit >>= 2;
  }
  return r;
}

/// Smallest r >= 0 with r*r >= n.
constexpr std::int64_t isqrt_ceil(std::int64_t n) {
  if (n <= 0) return 0;
  std::int64_t r = isqrt(n);
  return r * r == n ? r : r + 1;
}

constexpr bool is_square(std::int64_t n) {
  if (n < 0) return false;
  std::int64_t r = isqrt(n);
  return r * r == n;
}

/// binom(a, 2) = a(a-1)/2.
constexpr std::int64_t triangular(std::int64_t a) { return a * (a - 1) / 2; }

}  // namespace kumdeg
