#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "quadrep/arith.hpp"
#include "quadrep/errors.hpp"

namespace quadrep::rings {

/// Integral-basis shape of the ring of integers of Q(sqrt(-a)):
/// {1, sqrt(-a)} when a ≡ 1,2 (mod 4), {1, (-1+sqrt(-a))/2} when a ≡ 3.
enum class Basis { IntegerBasis, HalfIntegerBasis };

enum class FormKind { Heegner, TwentySeven };

/// Per-coefficient constants for the form x^2 + a*y^2.
struct FormParams {
  std::int64_t a;
  std::int64_t discriminant;
  int unit_count;
  Basis basis;
  FormKind kind;
};

inline constexpr std::array<std::int64_t, 10> kSupportedCoefficients = {
    1, 2, 3, 7, 11, 19, 27, 43, 67, 163};

inline bool is_supported(std::int64_t a) {
  return std::find(kSupportedCoefficients.begin(), kSupportedCoefficients.end(),
                   a) != kSupportedCoefficients.end();
}

/// Constants for the ten supported coefficients; throws
/// UnsupportedCoefficient otherwise. For a = 27 the field data is that of
/// a = 3 (same quadratic field), tagged TwentySeven so callers can reroute.
inline const FormParams& form_params(std::int64_t a) {
  static constexpr std::array<FormParams, 10> table = {{
      {1, -4, 4, Basis::IntegerBasis, FormKind::Heegner},
      {2, -8, 2, Basis::IntegerBasis, FormKind::Heegner},
      {3, -3, 6, Basis::HalfIntegerBasis, FormKind::Heegner},
      {7, -7, 2, Basis::HalfIntegerBasis, FormKind::Heegner},
      {11, -11, 2, Basis::HalfIntegerBasis, FormKind::Heegner},
      {19, -19, 2, Basis::HalfIntegerBasis, FormKind::Heegner},
      {27, -3, 2, Basis::HalfIntegerBasis, FormKind::TwentySeven},
      {43, -43, 2, Basis::HalfIntegerBasis, FormKind::Heegner},
      {67, -67, 2, Basis::HalfIntegerBasis, FormKind::Heegner},
      {163, -163, 2, Basis::HalfIntegerBasis, FormKind::Heegner},
  }};
  for (const auto& fp : table)
    if (fp.a == a) return fp;
  throw UnsupportedCoefficient::for_coefficient(a);
}

/// An integer pair with x^2 + a*y^2 = n.
struct Solution {
  std::int64_t x;
  std::int64_t y;
  friend auto operator<=>(const Solution&, const Solution&) = default;
};

/// Ring element in integral-basis coordinates: s + t*sqrt(-a) over an
/// IntegerBasis, s + t*lambda_a with lambda_a = (-1+sqrt(-a))/2 over a
/// HalfIntegerBasis. Coordinates are always whole integers.
struct RingElement {
  std::int64_t s;
  std::int64_t t;
  friend auto operator<=>(const RingElement&, const RingElement&) = default;
};

/// Field norm of z: s^2 + a*t^2 (IntegerBasis) or
/// s^2 - s*t + ((a+1)/4)*t^2 (HalfIntegerBasis).
inline std::int64_t norm(const RingElement& z, const FormParams& fp) {
  const __int128 s = z.s;
  const __int128 t = z.t;
  __int128 value;
  if (fp.basis == Basis::IntegerBasis)
    value = s * s + fp.a * t * t;
  else
    value = s * s - s * t + ((fp.a + 1) / 4) * t * t;
  return static_cast<std::int64_t>(value);
}

/// Conjugate of z: (s, -t) over an IntegerBasis, (s - t, -t) over a
/// HalfIntegerBasis.
inline RingElement conjugate(const RingElement& z, const FormParams& fp) {
  if (fp.basis == Basis::IntegerBasis) return {z.s, -z.t};
  return {z.s - z.t, -z.t};
}

namespace detail {

// Emits every sign combination of (x, y), collapsing signs on zero
// coordinates.
template <typename Pair>
void emit_signs(std::int64_t x, std::int64_t y, std::vector<Pair>& out) {
  out.push_back({x, y});
  if (x != 0) out.push_back({-x, y});
  if (y != 0) out.push_back({x, -y});
  if (x != 0 && y != 0) out.push_back({-x, -y});
}

}  // namespace detail

/// All integer solutions of x^2 + a*y^2 = n by exhaustive search over y,
/// sorted lexicographically by (x, y).
inline std::vector<Solution> enumerate_X(std::int64_t n, std::int64_t a) {
  form_params(a);
  if (n < 1) throw std::invalid_argument("enumerate_X: n must be >= 1");
  std::vector<Solution> out;
  for (std::int64_t y = 0; a * y * y <= n; ++y) {
    std::int64_t x;
    if (arith::is_square(n - a * y * y, x)) detail::emit_signs(x, y, out);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// All ring-of-integers elements of norm n, sorted lexicographically by
/// (s, t). Rejects a = 27: its elements of norm n live in the a = 3 ring.
///
/// Over a HalfIntegerBasis the search runs on the doubled lattice
/// u^2 + a*v^2 = 4n with u ≡ v (mod 2), where z = (u + v*sqrt(-a))/2; this
/// covers every element because 2z always has integer coordinates over
/// {1, sqrt(-a)}. Coordinates convert back by t = v, s = (u + v)/2.
inline std::vector<RingElement> enumerate_Y(std::int64_t n, std::int64_t a) {
  const FormParams& fp = form_params(a);
  if (fp.kind == FormKind::TwentySeven)
    throw UnsupportedCoefficient(
        "enumerate_Y: undefined for a=27; its norms live in the a=3 ring");
  if (n < 1) throw std::invalid_argument("enumerate_Y: n must be >= 1");
  std::vector<RingElement> out;
  if (fp.basis == Basis::IntegerBasis) {
    for (std::int64_t t = 0; a * t * t <= n; ++t) {
      std::int64_t s;
      if (arith::is_square(n - a * t * t, s)) detail::emit_signs(s, t, out);
    }
  } else {
    const std::int64_t target = 4 * n;
    std::vector<RingElement> doubled;
    for (std::int64_t v = 0; a * v * v <= target; ++v) {
      std::int64_t u;
      if (arith::is_square(target - a * v * v, u) && (u - v) % 2 == 0)
        detail::emit_signs(u, v, doubled);
    }
    out.reserve(doubled.size());
    for (const auto& [u, v] : doubled) out.push_back({(u + v) / 2, v});
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace quadrep::rings
