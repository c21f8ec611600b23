#pragma once

// Exact integer roots. Every quantity downstream (eta, bmax2, Wulff side
// lengths, the h1 exponent) is a floor/ceil of a root, so nothing here
// touches floating point.

#include <cstdint>
#include <limits>
#include <stdexcept>

namespace eip {

using i64 = std::int64_t;
using u64 = std::uint64_t;
__extension__ using i128 = __int128;

namespace detail {

// base^k saturated at `cap + 1` so the comparison against cap stays exact.
constexpr i128 saturating_pow(i128 base, int k, i128 cap) {
  i128 result = 1;
  for (int i = 0; i < k; ++i) {
    if (base != 0 && result > cap / base) return cap + 1;
    result *= base;
  }
  return result;
}

}  // namespace detail

/// Largest r >= 0 with r^k <= n. Monotone binary search.
constexpr u64 iroot(u64 n, int k) {
  if (k < 1) throw std::invalid_argument("iroot: k must be >= 1");
  if (k == 1 || n < 2) return n;
  u64 lo = 1;
  u64 hi = 1;
  const auto cap = static_cast<i128>(n);
  while (detail::saturating_pow(hi, k, cap) <= cap) hi *= 2;
  // invariant: lo^k <= n < hi^k
  while (hi - lo > 1) {
    const u64 mid = lo + (hi - lo) / 2;
    if (detail::saturating_pow(mid, k, cap) <= cap) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

constexpr u64 isqrt(u64 n) { return iroot(n, 2); }
constexpr u64 icbrt(u64 n) { return iroot(n, 3); }

/// Smallest r with r^2 >= n.
constexpr u64 ceil_sqrt(u64 n) {
  const u64 r = isqrt(n);
  return r * r == n ? r : r + 1;
}

/// Largest t >= 0 with (c * t)^k <= n, i.e. floor(n^(1/k) / c) exactly.
constexpr u64 floor_root_over(u64 n, int k, u64 c) {
  if (c == 0) throw std::invalid_argument("floor_root_over: c must be positive");
  const auto cap = static_cast<i128>(n);
  u64 lo = 0;
  u64 hi = 1;
  while (detail::saturating_pow(static_cast<i128>(c) * hi, k, cap) <= cap) hi *= 2;
  while (hi - lo > 1) {
    const u64 mid = lo + (hi - lo) / 2;
    if (detail::saturating_pow(static_cast<i128>(c) * mid, k, cap) <= cap) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace eip
