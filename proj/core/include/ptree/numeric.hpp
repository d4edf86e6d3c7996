#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ptree {

using i64 = std::int64_t;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(i64 n) {
  BigInt f = 1;
  for (i64 i = 2; i <= n; ++i) f *= i;
  return f;
}

// Grow-on-demand factorial table. Not thread-safe; share one per sweep.
class FactorialCache {
 public:
  const BigInt& operator()(i64 n) {
    while (static_cast<i64>(table_.size()) <= n) {
      table_.push_back(table_.back() * static_cast<i64>(table_.size()));
    }
    return table_[static_cast<std::size_t>(n)];
  }

 private:
  std::vector<BigInt> table_{1};
};

inline BigInt binomial(i64 n, i64 k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (i64 i = 1; i <= k; ++i) {
    r *= n - i + 1;
    r /= i;
  }
  return r;
}

// total! / prod(parts[i]!); parts must sum to total.
inline BigInt multinomial(i64 total, std::span<const i64> parts) {
  BigInt r = factorial(total);
  for (i64 p : parts) r /= factorial(p);
  return r;
}

inline BigInt ipow(BigInt base, i64 exp) {
  BigInt r = 1;
  while (exp > 0) {
    if (exp & 1) r *= base;
    base *= base;
    exp >>= 1;
  }
  return r;
}

}  // namespace ptree
