#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "quadrep/arith.hpp"
#include "quadrep/errors.hpp"
#include "quadrep/rings.hpp"

namespace quadrep::classify {

/// Behaviour of a rational prime relative to the form x^2 + a*y^2: the
/// kronecker(D, p) trichotomy, with split primes refined by whether the
/// form itself represents them.
enum class PrimeClass { ExpressibleSplit, NonexpressibleSplit, Inert, Ramified };

inline const char* to_string(PrimeClass c) {
  switch (c) {
    case PrimeClass::ExpressibleSplit:
      return "ExpressibleSplit";
    case PrimeClass::NonexpressibleSplit:
      return "NonexpressibleSplit";
    case PrimeClass::Inert:
      return "Inert";
    case PrimeClass::Ramified:
      return "Ramified";
  }
  return "unknown";
}

/// True iff p = x^2 + a*y^2 for some integers x, y, decided by direct
/// search over y in [0, sqrt(p/a)]. p is assumed prime; the search itself
/// works for any positive integer.
inline bool is_expressible_prime(std::int64_t p, std::int64_t a) {
  rings::form_params(a);
  if (p < 1) throw std::invalid_argument("is_expressible_prime: p must be >= 1");
  for (std::int64_t y = 0; a * y * y <= p; ++y) {
    std::int64_t x;
    if (arith::is_square(p - a * y * y, x)) return true;
  }
  return false;
}

namespace detail {

inline PrimeClass prime_class_uncached(std::int64_t p, std::int64_t a) {
  const auto& fp = rings::form_params(a);
  const int chi = arith::kronecker(fp.discriminant, p);
  if (chi == 0) return PrimeClass::Ramified;
  if (chi == -1) return PrimeClass::Inert;
  return is_expressible_prime(p, a) ? PrimeClass::ExpressibleSplit
                                    : PrimeClass::NonexpressibleSplit;
}

}  // namespace detail

/// Classification of prime p for coefficient a, memoized per thread:
/// verification sweeps re-query the same small primes heavily, and a
/// thread-local cache keeps the function safe for concurrent use.
inline PrimeClass prime_class(std::int64_t p, std::int64_t a) {
  thread_local std::map<std::pair<std::int64_t, std::int64_t>, PrimeClass>
      cache;
  const auto key = std::make_pair(p, a);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  const PrimeClass result = detail::prime_class_uncached(p, a);
  cache.emplace(key, result);
  return result;
}

/// True iff 2 is a cubic residue modulo the prime q ≡ 1 (mod 3), i.e.
/// 2^((q-1)/3) ≡ 1 (mod q). Equivalently, q = x^2 + 27y^2 is solvable.
inline bool is_cubic_residue_two(std::int64_t q) {
  if (q < 7 || q % 3 != 1)
    throw std::invalid_argument(
        "is_cubic_residue_two: q must be a prime congruent to 1 mod 3");
  return arith::mod_pow(2, static_cast<std::uint64_t>((q - 1) / 3),
                        static_cast<std::uint64_t>(q)) == 1;
}

/// The sub-factorization of n that obstructs expressibility, as a value
/// and its divisor count.
struct NqPart {
  std::int64_t n_q;
  std::int64_t tau_nq;
  friend auto operator<=>(const NqPart&, const NqPart&) = default;
};

/// n_q = product, with multiplicity, of the prime powers of f whose primes
/// are NonexpressibleSplit (Heegner a), or ≡ 1 mod 3 with 2 a cubic
/// non-residue (a = 27). The ramified prime a never qualifies:
/// kronecker(D, a) = 0 keeps it out of the split classes, and for a = 27
/// the callers' gcd(6, n) = 1 precondition keeps 3 out of f entirely.
inline NqPart n_q_part(const arith::Factorization& f, std::int64_t a) {
  const auto& fp = rings::form_params(a);
  std::int64_t n_q = 1;
  std::int64_t tau_nq = 1;
  for (const auto& [p, e] : f.pairs) {
    bool obstructs;
    if (fp.kind == rings::FormKind::TwentySeven)
      obstructs = p % 3 == 1 && !is_cubic_residue_two(p);
    else
      obstructs = prime_class(p, a) == PrimeClass::NonexpressibleSplit;
    if (!obstructs) continue;
    for (int i = 0; i < e; ++i) n_q *= p;
    tau_nq *= e + 1;
  }
  return {n_q, tau_nq};
}

}  // namespace quadrep::classify
