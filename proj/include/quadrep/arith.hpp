#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace quadrep::arith {

/// Prime factorization as a list of (prime, exponent) pairs with strictly
/// increasing primes. The empty list represents 1.
struct Factorization {
  std::vector<std::pair<std::int64_t, int>> pairs;

  /// Reassembles the factored integer.
  std::int64_t value() const {
    unsigned __int128 n = 1;
    for (const auto& [p, e] : pairs)
      for (int i = 0; i < e; ++i) n *= static_cast<std::uint64_t>(p);
    return static_cast<std::int64_t>(n);
  }
};

/// Exact floor of sqrt(n).
inline std::uint64_t isqrt(std::uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && static_cast<unsigned __int128>(r) * r > n) --r;
  while (static_cast<unsigned __int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// True iff n is a perfect square; stores the nonnegative root.
inline bool is_square(std::int64_t n, std::int64_t& root) {
  if (n < 0) return false;
  const std::uint64_t r = isqrt(static_cast<std::uint64_t>(n));
  if (static_cast<std::int64_t>(r * r) != n) return false;
  root = static_cast<std::int64_t>(r);
  return true;
}

/// Kronecker symbol (a|n), total on all integer pairs.
///
/// Conventions: (a|0) = 1 iff a = ±1 else 0; (a|-1) = -1 iff a < 0 else 1;
/// (a|2) = 0 for even a, +1 for a ≡ ±1 (mod 8), -1 for a ≡ ±3 (mod 8).
/// Agrees with the Legendre symbol when n is an odd prime not dividing a.
inline int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int result = 1;
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos % 2 == 1) {
    const int a_mod8 = static_cast<int>(((a % 8) + 8) % 8);
    if (a_mod8 == 3 || a_mod8 == 5) result = -result;
  }
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // n is now odd and positive; (a|n) depends only on a mod n.
  a %= n;
  if (a < 0) a += n;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      const auto n_mod8 = n % 8;
      if (n_mod8 == 3 || n_mod8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

/// base^exp mod modulus, overflow-safe. Rejects modulus 0.
inline std::uint64_t mod_pow(std::uint64_t base, std::uint64_t exp,
                             std::uint64_t modulus) {
  if (modulus == 0)
    throw std::invalid_argument("mod_pow: modulus must be >= 1");
  std::uint64_t result = 1 % modulus;
  base %= modulus;
  while (exp > 0) {
    if (exp & 1)
      result = static_cast<std::uint64_t>(
          static_cast<unsigned __int128>(result) * base % modulus);
    base = static_cast<std::uint64_t>(static_cast<unsigned __int128>(base) *
                                      base % modulus);
    exp >>= 1;
  }
  return result;
}

/// Deterministic primality test, exact for the whole 64-bit range.
///
/// Miller-Rabin with the 7-witness set {2, 325, 9375, 28178, 450775,
/// 9780504, 1795265022}, which is known to have no strong pseudoprime
/// below 2^64.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u})
    if (n % p == 0) return n == p;
  if (n < 41 * 41) return true;
  std::uint64_t d = n - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  for (std::uint64_t base :
       {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
    std::uint64_t x = mod_pow(base % n, d, n);
    if (x == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < r; ++i) {
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace detail {

/// Brent-cycle rho split of an odd composite with no small factors.
/// The polynomial offset walks 1, 2, 3, ... so the search is deterministic;
/// the caller re-verifies whatever comes back.
inline std::uint64_t rho_split(std::uint64_t n) {
  const auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  for (std::uint64_t c = 1;; ++c) {
    const auto advance = [&](std::uint64_t x) {
      std::uint64_t v = mulmod(x, x) + c;
      if (v >= n) v -= n;
      return v;
    };
    std::uint64_t y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
    const std::uint64_t batch = 128;
    while (g == 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = advance(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += batch) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(batch, r - k); ++i) {
          y = advance(y);
          q = mulmod(q, x > y ? x - y : y - x);
        }
        g = std::gcd(q, n);
      }
      r *= 2;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = advance(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n) return g;
  }
}

}  // namespace detail

/// Factors a positive 63-bit integer: trial division for small primes, then
/// rho splitting for the remainder. Every emitted prime is re-checked by the
/// primality test and the product is re-checked against n.
inline Factorization factorize(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be >= 1");
  Factorization out;
  std::uint64_t m = static_cast<std::uint64_t>(n);

  const auto strip = [&](std::uint64_t p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e > 0) out.pairs.emplace_back(static_cast<std::int64_t>(p), e);
  };
  strip(2);
  strip(3);
  // 6k±1 wheel up to 2^16; anything left either is prime or splits via rho.
  for (std::uint64_t p = 5; p <= 65536 && p * p <= m; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (m > 1) {
    std::vector<std::uint64_t> stack{m};
    std::vector<std::uint64_t> primes;
    while (!stack.empty()) {
      std::uint64_t v = stack.back();
      stack.pop_back();
      if (is_prime(v)) {
        primes.push_back(v);
        continue;
      }
      const std::uint64_t d = detail::rho_split(v);
      stack.push_back(d);
      stack.push_back(v / d);
    }
    std::sort(primes.begin(), primes.end());
    for (std::size_t i = 0; i < primes.size();) {
      std::size_t j = i;
      while (j < primes.size() && primes[j] == primes[i]) ++j;
      out.pairs.emplace_back(static_cast<std::int64_t>(primes[i]),
                             static_cast<int>(j - i));
      i = j;
    }
  }
  if (out.value() != n)
    throw std::logic_error("factorize: verification failed");
  return out;
}

/// Number of positive divisors: product of (exponent + 1).
inline std::int64_t tau(const Factorization& f) {
  std::int64_t t = 1;
  for (const auto& [p, e] : f.pairs) t *= e + 1;
  return t;
}

/// Sum of kronecker(D, c) over all positive divisors c of the factored
/// integer, computed multiplicatively one prime at a time.
inline std::int64_t divisor_char_sum(const Factorization& f, std::int64_t D) {
  std::int64_t total = 1;
  for (const auto& [p, e] : f.pairs) {
    const int chi = kronecker(D, p);
    std::int64_t local;
    if (chi == 1)
      local = e + 1;
    else if (chi == 0)
      local = 1;
    else
      local = (e % 2 == 0) ? 1 : 0;
    total *= local;
  }
  return total;
}

/// Sum of kronecker(c, m) over all positive divisors c of the factored
/// integer; the symbol is completely multiplicative in its top argument
/// for fixed positive m, so the same prime-by-prime evaluation applies.
inline std::int64_t divisor_char_sum_bottom(const Factorization& f,
                                            std::int64_t m) {
  std::int64_t total = 1;
  for (const auto& [p, e] : f.pairs) {
    const int chi = kronecker(p, m);
    std::int64_t local;
    if (chi == 1)
      local = e + 1;
    else if (chi == 0)
      local = 1;
    else
      local = (e % 2 == 0) ? 1 : 0;
    total *= local;
  }
  return total;
}

}  // namespace quadrep::arith
