#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "quadrep/arith.hpp"
#include "quadrep/classify.hpp"
#include "quadrep/errors.hpp"
#include "quadrep/rings.hpp"

namespace quadrep::count {

/// Which closed-form case produced an x_count.
enum class Branch {
  A1,
  A2,
  A3Even,
  A3Odd,
  A7Odd,
  A7TwoMod4,
  A7Div4,
  HeegnerEven,
  HeegnerOdd,
  InertOddValuation,
  A27ThreeNot9,
  A27Div9,
  A27Even,
  A27Coprime6,
};

inline const char* to_string(Branch b) {
  switch (b) {
    case Branch::A1:
      return "a1";
    case Branch::A2:
      return "a2";
    case Branch::A3Even:
      return "a3-even";
    case Branch::A3Odd:
      return "a3-odd";
    case Branch::A7Odd:
      return "a7-odd";
    case Branch::A7TwoMod4:
      return "a7-2mod4";
    case Branch::A7Div4:
      return "a7-div4";
    case Branch::HeegnerEven:
      return "heegner-even";
    case Branch::HeegnerOdd:
      return "heegner-odd";
    case Branch::InertOddValuation:
      return "inert-odd-valuation";
    case Branch::A27ThreeNot9:
      return "a27-3not9";
    case Branch::A27Div9:
      return "a27-div9";
    case Branch::A27Even:
      return "a27-even";
    case Branch::A27Coprime6:
      return "a27-coprime6";
  }
  return "unknown";
}

/// One (n, a) result row. y_count, n_q and tau_nq are populated only by the
/// branches that define them: y_count for the nine Heegner coefficients,
/// n_q/tau_nq for the odd-n (a ≥ 11) and gcd(6,n) = 1 (a = 27) cases.
struct CountReport {
  std::int64_t n = 0;
  std::int64_t a = 0;
  std::int64_t x_count = 0;
  std::optional<std::int64_t> y_count;
  Branch branch = Branch::A1;
  std::optional<std::int64_t> n_q;
  std::optional<std::int64_t> tau_nq;
  arith::Factorization factorization;
};

namespace detail {

// |Y(n,a)| from an existing factorization: unit_count * sum over divisors
// of the discriminant character. For a ≡ 3 (mod 4) the reciprocal form
// u * sum of (c|a) must agree; mismatch would falsify the symbol algebra.
inline std::int64_t y_count_from(const arith::Factorization& f,
                                 const rings::FormParams& fp) {
  const std::int64_t sum = arith::divisor_char_sum(f, fp.discriminant);
  if (fp.a % 4 == 3) {
    const std::int64_t reciprocal = arith::divisor_char_sum_bottom(f, fp.a);
    if (sum != reciprocal)
      throw std::logic_error("y_count: reciprocity forms disagree");
  }
  return fp.unit_count * sum;
}

}  // namespace detail

/// |Y(n,a)|: ring elements of norm n, by the closed form
/// unit_count(a) * Σ_{c|n} (D|c). Undefined for a = 27, whose norms live
/// in the a = 3 ring.
inline std::int64_t y_count(std::int64_t n, std::int64_t a) {
  const auto& fp = rings::form_params(a);
  if (fp.kind == rings::FormKind::TwentySeven)
    throw UnsupportedCoefficient(
        "y_count: undefined for a=27; its norms live in the a=3 ring");
  if (n < 1) throw std::invalid_argument("y_count: n must be >= 1");
  return detail::y_count_from(arith::factorize(n), fp);
}

/// |T(v_1,...,v_m)|: the number of tuples (b_1,...,b_m) with 0 ≤ b_j ≤ v_j
/// and Σ(v_j + b_j) ≡ 0 (mod 3), via the closed form (V + 2(V|3))/3 with
/// V = Π(v_j + 1). Exact in integers for every V.
inline std::int64_t t_cardinality(const std::vector<int>& vs) {
  std::int64_t V = 1;
  for (int v : vs) {
    if (v < 0) throw std::invalid_argument("t_cardinality: negative valuation");
    V *= v + 1;
  }
  return (V + 2 * arith::kronecker(V, 3)) / 3;
}

/// Oracle for t_cardinality: full enumeration of the tuple space, guarded
/// to Π(v_j + 1) ≤ 10^7.
inline std::int64_t t_bruteforce(const std::vector<int>& vs) {
  constexpr std::int64_t kGuard = 10'000'000;
  std::int64_t space = 1;
  std::int64_t s = 0;  // running Σ(v_j + b_j), starting at all b_j = 0
  for (int v : vs) {
    if (v < 0) throw std::invalid_argument("t_bruteforce: negative valuation");
    space *= v + 1;
    if (space > kGuard)
      throw GuardExceeded("t_bruteforce: tuple space exceeds 1e7");
    s += v;
  }
  std::vector<int> b(vs.size(), 0);
  std::int64_t total = 0;
  while (true) {
    if (s % 3 == 0) ++total;
    std::size_t i = 0;
    while (i < b.size()) {
      if (b[i] < vs[i]) {
        ++b[i];
        ++s;
        break;
      }
      s -= b[i];
      b[i] = 0;
      ++i;
    }
    if (i == b.size()) break;
  }
  return total;
}

namespace detail {

// Removes 2^2 from a factorization of a multiple of 4.
inline arith::Factorization quarter_of(const arith::Factorization& f) {
  arith::Factorization out;
  for (auto [p, e] : f.pairs) {
    if (p == 2) e -= 2;
    if (e > 0) out.pairs.push_back({p, e});
  }
  return out;
}

// The fractional form (1/3)[1 + 2(τ|3)/τ] · base equals x; asserted in
// integers as 3·τ·x == base·(τ + 2(τ|3)).
inline void assert_fractional_form(std::int64_t x, std::int64_t base,
                                   std::int64_t tau_nq) {
  const std::int64_t k = arith::kronecker(tau_nq, 3);
  if (3 * tau_nq * x != base * (tau_nq + 2 * k))
    throw std::logic_error("x_count: fractional form disagrees");
}

}  // namespace detail

inline CountReport x_count(std::int64_t n, std::int64_t a);

namespace detail {

// Closed-form dispatch for the five coefficients with 2 inert and class
// number > 1 phenomena: a ∈ {11, 19, 43, 67, 163}.
inline void x_count_heegner_large(CountReport& r,
                                  const rings::FormParams& fp) {
  const auto& f = r.factorization;
  for (const auto& [p, e] : f.pairs) {
    if (classify::prime_class(p, fp.a) == classify::PrimeClass::Inert &&
        e % 2 == 1) {
      r.x_count = 0;
      r.y_count = y_count_from(f, fp);
      if (*r.y_count != 0)
        throw std::logic_error("x_count: inert odd valuation but |Y| != 0");
      r.branch = Branch::InertOddValuation;
      return;
    }
  }
  if (r.n % 2 == 0) {
    r.x_count = y_count_from(f, fp);
    r.y_count = r.x_count;
    r.branch = Branch::HeegnerEven;
    return;
  }
  std::int64_t expressible_product = 1;
  std::vector<int> q_valuations;
  for (const auto& [p, e] : f.pairs) {
    switch (classify::prime_class(p, fp.a)) {
      case classify::PrimeClass::ExpressibleSplit:
        expressible_product *= e + 1;
        break;
      case classify::PrimeClass::NonexpressibleSplit:
        q_valuations.push_back(e);
        break;
      case classify::PrimeClass::Inert:      // even valuation, contributes 1
      case classify::PrimeClass::Ramified:   // unit-power associates only
        break;
    }
  }
  r.x_count = 2 * expressible_product * t_cardinality(q_valuations);
  r.y_count = y_count_from(f, fp);
  const auto [n_q, tau_nq] = classify::n_q_part(f, fp.a);
  assert_fractional_form(r.x_count, *r.y_count, tau_nq);
  r.branch = Branch::HeegnerOdd;
  r.n_q = n_q;
  r.tau_nq = tau_nq;
}

// Closed-form dispatch for a = 27 with gcd(6, n) = 1: the cubic-residue
// analogue of the odd-n Heegner case, cross-checked against |X(n,3)|.
inline void x_count_27_coprime6(CountReport& r) {
  const auto& f = r.factorization;
  bool inert_odd = false;
  std::int64_t residue_product = 1;
  std::vector<int> q_valuations;
  for (const auto& [p, e] : f.pairs) {
    if (p % 3 == 2) {
      if (e % 2 == 1) inert_odd = true;
    } else if (classify::is_cubic_residue_two(p)) {
      residue_product *= e + 1;
    } else {
      q_valuations.push_back(e);
    }
  }
  const auto [n_q, tau_nq] = classify::n_q_part(f, 27);
  if (inert_odd) {
    r.x_count = 0;
    r.branch = Branch::InertOddValuation;
  } else {
    r.x_count = 2 * residue_product * t_cardinality(q_valuations);
    r.branch = Branch::A27Coprime6;
    r.n_q = n_q;
    r.tau_nq = tau_nq;
  }
  // Same correction-factor identity, with |X(n,3)| as the base count.
  assert_fractional_form(r.x_count, x_count(r.n, 3).x_count, tau_nq);
}

}  // namespace detail

/// |X(n,a)|: integer pairs with x^2 + a*y^2 = n, by the closed-form case
/// analysis for the supported coefficients. The report records which case
/// fired and the quantities it used.
inline CountReport x_count(std::int64_t n, std::int64_t a) {
  const auto& fp = rings::form_params(a);
  if (n < 1) throw std::invalid_argument("x_count: n must be >= 1");
  CountReport r;
  r.n = n;
  r.a = a;
  r.factorization = arith::factorize(n);
  const auto& f = r.factorization;
  if (a == 1) {
    r.x_count = 4 * arith::divisor_char_sum(f, -4);
    r.y_count = r.x_count;
    r.branch = Branch::A1;
  } else if (a == 2) {
    const std::int64_t sum = arith::divisor_char_sum(f, -8);
    if (sum != arith::divisor_char_sum(f, -2))
      throw std::logic_error("x_count: -8 and -2 characters disagree");
    r.x_count = 2 * sum;
    r.y_count = r.x_count;
    r.branch = Branch::A2;
  } else if (a == 3) {
    const std::int64_t sum = arith::divisor_char_sum_bottom(f, 3);
    r.x_count = (n % 2 == 0 ? 6 : 2) * sum;
    r.y_count = detail::y_count_from(f, fp);
    r.branch = n % 2 == 0 ? Branch::A3Even : Branch::A3Odd;
  } else if (a == 7) {
    if (n % 4 == 2) {
      r.x_count = 0;
      r.branch = Branch::A7TwoMod4;
    } else if (n % 4 == 0) {
      r.x_count = 2 * arith::divisor_char_sum_bottom(detail::quarter_of(f), 7);
      r.branch = Branch::A7Div4;
    } else {
      r.x_count = 2 * arith::divisor_char_sum_bottom(f, 7);
      r.branch = Branch::A7Odd;
    }
    r.y_count = detail::y_count_from(f, fp);
  } else if (fp.kind == rings::FormKind::Heegner) {
    detail::x_count_heegner_large(r, fp);
  } else {  // a == 27
    if (n % 3 == 0) {
      if (n % 9 != 0) {
        r.x_count = 0;
        r.branch = Branch::A27ThreeNot9;
      } else {
        r.x_count = x_count(n / 9, 3).x_count;
        r.branch = Branch::A27Div9;
      }
    } else if (n % 2 == 0) {
      const std::int64_t thirds = x_count(n, 3).x_count;
      if (thirds % 3 != 0)
        throw std::logic_error("x_count: |X(n,3)| not divisible by 3");
      r.x_count = thirds / 3;
      r.branch = Branch::A27Even;
    } else {
      detail::x_count_27_coprime6(r);
    }
  }
  return r;
}

}  // namespace quadrep::count
