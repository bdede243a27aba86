#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "quadrep/arith.hpp"

using namespace quadrep::arith;

TEST_CASE("isqrt is the exact floor square root", "[arith]") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(1) == 1);
  CHECK(isqrt(2) == 1);
  CHECK(isqrt(3) == 1);
  CHECK(isqrt(4) == 2);
  CHECK(isqrt(99) == 9);
  CHECK(isqrt(100) == 10);
  CHECK(isqrt(UINT64_MAX) == 4294967295ULL);
  CHECK(isqrt(4294967295ULL * 4294967295ULL) == 4294967295ULL);

  std::mt19937_64 rng(12345);
  for (int i = 0; i < 20000; ++i) {
    const std::uint64_t n = rng();
    const std::uint64_t r = isqrt(n);
    CAPTURE(n, r);
    REQUIRE(static_cast<unsigned __int128>(r) * r <= n);
    REQUIRE(static_cast<unsigned __int128>(r + 1) * (r + 1) > n);
  }
}

TEST_CASE("is_square detects exactly the squares", "[arith]") {
  std::int64_t root = -1;
  CHECK(is_square(0, root));
  CHECK(root == 0);
  CHECK(is_square(1, root));
  CHECK(root == 1);
  CHECK(is_square(437805LL * 437805LL, root));
  CHECK(root == 437805);
  CHECK_FALSE(is_square(-1, root));
  CHECK_FALSE(is_square(2, root));
  CHECK_FALSE(is_square(437805LL * 437805LL + 1, root));

  int squares = 0;
  for (std::int64_t n = 0; n <= 10000; ++n)
    if (is_square(n, root)) {
      REQUIRE(root * root == n);
      ++squares;
    }
  CHECK(squares == 101);  // 0^2 .. 100^2
}

TEST_CASE("kronecker symbol golden values", "[arith]") {
  // bottom collapses: (a|0) and (a|-1)
  CHECK(kronecker(1, 0) == 1);
  CHECK(kronecker(-1, 0) == 1);
  CHECK(kronecker(2, 0) == 0);
  CHECK(kronecker(0, 0) == 0);
  CHECK(kronecker(5, -1) == 1);
  CHECK(kronecker(-5, -1) == -1);
  CHECK(kronecker(0, -1) == 1);

  // even bottom: (a|2) by a mod 8
  CHECK(kronecker(7, 2) == 1);
  CHECK(kronecker(17, 2) == 1);
  CHECK(kronecker(3, 2) == -1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(6, 2) == 0);

  // the discriminant characters used by the counting formulas
  CHECK(kronecker(-4, 3) == -1);
  CHECK(kronecker(-4, 5) == 1);
  CHECK(kronecker(-8, 3) == 1);
  CHECK(kronecker(-11, 3) == 1);
  CHECK(kronecker(-11, 5) == 1);
  CHECK(kronecker(-11, 2) == -1);
  CHECK(kronecker(-11, 11) == 0);
  CHECK(kronecker(-163, 2) == -1);

  // (c|3): the period-3 character
  CHECK(kronecker(1, 3) == 1);
  CHECK(kronecker(2, 3) == -1);
  CHECK(kronecker(3, 3) == 0);
  CHECK(kronecker(4, 3) == 1);

  // zero top against plus/minus one bottom is the documented edge:
  // (0*b | -1) != (0|-1)(b|-1) for negative b, so the multiplicativity
  // property below keeps its operands nonzero.
  CHECK(kronecker(0, -1) * kronecker(-5, -1) == -1);
  CHECK(kronecker(0 * -5, -1) == 1);
}

TEST_CASE("kronecker agrees with Euler's criterion on odd primes", "[arith]") {
  // (a|p) for odd prime p must match a^((p-1)/2) mod p
  std::mt19937_64 rng(99);
  const std::int64_t primes[] = {3,  5,  7,  11, 13, 17, 19,  23,  29,
                                 31, 37, 41, 43, 47, 53, 997, 7919};
  for (std::int64_t p : primes)
    for (int i = 0; i < 200; ++i) {
      const std::int64_t a =
          static_cast<std::int64_t>(rng() % 2000000) - 1000000;
      const std::int64_t r = ((a % p) + p) % p;
      int expect;
      if (r == 0)
        expect = 0;
      else {
        const std::uint64_t e = mod_pow(static_cast<std::uint64_t>(r),
                                        static_cast<std::uint64_t>((p - 1) / 2),
                                        static_cast<std::uint64_t>(p));
        expect = e == 1 ? 1 : -1;
      }
      CAPTURE(a, p);
      REQUIRE(kronecker(a, p) == expect);
    }
}

TEST_CASE("kronecker is multiplicative in both arguments", "[arith]") {
  std::mt19937_64 rng(2024);
  auto draw = [&rng]() {
    std::int64_t v = 0;
    while (v == 0) v = static_cast<std::int64_t>(rng() % 400001) - 200000;
    return v;
  };
  for (int i = 0; i < 10000; ++i) {
    const std::int64_t a1 = draw(), a2 = draw(), n1 = draw(), n2 = draw();
    CAPTURE(a1, a2, n1, n2);
    REQUIRE(kronecker(a1 * a2, n1) == kronecker(a1, n1) * kronecker(a2, n1));
    REQUIRE(kronecker(a1, n1 * n2) == kronecker(a1, n1) * kronecker(a1, n2));
  }
}

TEST_CASE("kronecker reciprocity for the odd coefficients", "[arith]") {
  for (std::int64_t a : {3, 7, 11, 19, 43, 67, 163})
    for (std::int64_t c = 1; c <= 2000; ++c) {
      CAPTURE(a, c);
      REQUIRE(kronecker(-a, c) == kronecker(c, a));
      REQUIRE((kronecker(c, a) == 0) == (std::gcd(c, a) > 1));
    }
}

TEST_CASE("kronecker top characters are periodic in the discriminant", "[arith]") {
  // D = 0 or 1 mod 4 makes kronecker(D, .) a character of period |D|
  for (std::int64_t D : {-3, -4, -7, -8, -11, -19, -43, -67, -163}) {
    const std::int64_t period = -D;
    for (std::int64_t n = 1; n <= 10 * period; ++n) {
      CAPTURE(D, n);
      REQUIRE(kronecker(D, n + period) == kronecker(D, n));
    }
  }
}

TEST_CASE("mod_pow computes modular powers", "[arith]") {
  CHECK(mod_pow(2, 10, 1000) == 24);
  CHECK(mod_pow(2, 2, 7) == 4);
  CHECK(mod_pow(2, 10, 31) == 1);
  CHECK(mod_pow(0, 0, 7) == 1);
  CHECK(mod_pow(5, 0, 7) == 1);
  CHECK(mod_pow(7, 1, 7) == 0);
  CHECK(mod_pow(3, 5, 1) == 0);
  CHECK_THROWS_AS(mod_pow(2, 3, 0), std::invalid_argument);

  // 64-bit safety: results stay correct near the top of the range
  const std::uint64_t p = 18446744073709551557ULL;  // largest 64-bit prime
  CHECK(mod_pow(2, p - 1, p) == 1);                 // Fermat

  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const std::uint64_t b = rng() % 1000, e = rng() % 30, m = 1 + rng() % 1000;
    std::uint64_t want = 1 % m;
    for (std::uint64_t k = 0; k < e; ++k) want = want * b % m;
    CAPTURE(b, e, m);
    REQUIRE(mod_pow(b, e, m) == want);
  }
}

namespace {

bool trial_is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("is_prime matches trial division and known hard cases", "[arith]") {
  for (std::uint64_t n = 0; n <= 20000; ++n) {
    CAPTURE(n);
    REQUIRE(is_prime(n) == trial_is_prime(n));
  }
  CHECK(is_prime((1ULL << 31) - 1));
  CHECK(is_prime((1ULL << 61) - 1));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK_FALSE(is_prime(561));         // Carmichael
  CHECK_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to 2,3,5,7
  CHECK_FALSE(is_prime((1ULL << 62) - 1));
}

TEST_CASE("factorize round-trips and yields prime parts", "[arith]") {
  CHECK(factorize(1).pairs.empty());
  CHECK(factorize(2).pairs == std::vector<std::pair<std::int64_t, int>>{{2, 1}});
  CHECK(factorize(437805).pairs ==
        std::vector<std::pair<std::int64_t, int>>{{3, 4}, {5, 1}, {23, 1}, {47, 1}});
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
  CHECK_THROWS_AS(factorize(-6), std::invalid_argument);

  SECTION("large semiprime-ish values") {
    auto f = factorize((1LL << 62) - 1);
    REQUIRE(f.pairs == std::vector<std::pair<std::int64_t, int>>{
                           {3, 1}, {715827883, 1}, {2147483647, 1}});
    auto g = factorize(9223372036854775807LL);  // 2^63 - 1
    REQUIRE(g.pairs == std::vector<std::pair<std::int64_t, int>>{
                           {7, 2},
                           {73, 1},
                           {127, 1},
                           {337, 1},
                           {92737, 1},
                           {649657, 1}});
  }

  SECTION("exhaustive round-trip to 10^5") {
    for (std::int64_t n = 1; n <= 100000; ++n) {
      auto f = factorize(n);
      CAPTURE(n);
      REQUIRE(f.value() == n);
      std::int64_t prev = 1;
      for (const auto& [p, e] : f.pairs) {
        REQUIRE(p > prev);
        REQUIRE(e >= 1);
        REQUIRE(is_prime(static_cast<std::uint64_t>(p)));
        prev = p;
      }
    }
  }

  SECTION("random 62-bit round-trip") {
    std::mt19937_64 rng(314159);
    for (int i = 0; i < 1000; ++i) {
      const std::int64_t n =
          1 + static_cast<std::int64_t>(rng() % ((1ULL << 62) - 1));
      auto f = factorize(n);
      CAPTURE(n);
      REQUIRE(f.value() == n);
      std::int64_t prev = 1;
      for (const auto& [p, e] : f.pairs) {
        REQUIRE(p > prev);
        REQUIRE(e >= 1);
        REQUIRE(is_prime(static_cast<std::uint64_t>(p)));
        prev = p;
      }
    }
  }
}

TEST_CASE("tau counts divisors", "[arith]") {
  CHECK(tau(factorize(1)) == 1);
  CHECK(tau(factorize(12)) == 6);
  CHECK(tau(factorize(9315)) == 20);  // 3^4 * 5 * 23
  CHECK(tau(factorize(437805)) == 40);
}

namespace {

std::vector<std::int64_t> divisors_of(std::int64_t n) {
  std::vector<std::int64_t> ds;
  for (std::int64_t c = 1; c * c <= n; ++c)
    if (n % c == 0) {
      ds.push_back(c);
      if (c != n / c) ds.push_back(n / c);
    }
  return ds;
}

}  // namespace

TEST_CASE("divisor character sums match direct enumeration", "[arith]") {
  CHECK(divisor_char_sum(factorize(25), -4) == 3);
  CHECK(divisor_char_sum(factorize(437805), -11) == 40);
  CHECK(divisor_char_sum_bottom(factorize(437805), 11) == 40);
  CHECK(divisor_char_sum_bottom(factorize(4), 3) == 1);

  const std::int64_t discs[] = {-3, -4, -7, -8, -11, -19, -43, -67, -163};
  for (std::int64_t n = 1; n <= 10000; ++n) {
    const auto f = factorize(n);
    const auto ds = divisors_of(n);
    for (std::int64_t D : discs) {
      std::int64_t top = 0, bottom = 0;
      for (std::int64_t c : ds) {
        top += kronecker(D, c);
        bottom += kronecker(c, -D);
      }
      CAPTURE(n, D);
      REQUIRE(divisor_char_sum(f, D) == top);
      REQUIRE(divisor_char_sum_bottom(f, -D) == bottom);
    }
  }
}
