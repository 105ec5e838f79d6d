#pragma once

/**
 * @file coinv.hpp
 * @brief Classes of eventually periodic integer sequences modulo the image
 *        of (1 - S), and the linear functionals that evaluate them.
 *
 * A bounded eventually periodic integer sequence a lies in the image of
 * (1 - S) iff both tail means vanish: finite sums of a (1 - S) b are
 * differences of two values of b, and conversely the partial sums of a
 * sequence with zero tail means are bounded and eventually periodic.
 * The class of a is therefore the pair (left mean, right mean).
 */

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "hbe/error.hpp"
#include "hbe/rational.hpp"
#include "hbe/seq.hpp"

namespace hbe {

using IntSeq = EPSeq<std::int64_t>;

struct CoinvClass {
  Rational mu_minus{0};
  Rational mu_plus{0};

  bool is_zero() const { return mu_minus.numerator() == 0 && mu_plus.numerator() == 0; }

  CoinvClass& operator+=(const CoinvClass& o) {
    mu_minus += o.mu_minus;
    mu_plus += o.mu_plus;
    return *this;
  }
  friend CoinvClass operator+(CoinvClass a, const CoinvClass& b) { return a += b; }
  friend CoinvClass operator-(const CoinvClass& a) { return {-a.mu_minus, -a.mu_plus}; }
  friend CoinvClass operator-(const CoinvClass& a, const CoinvClass& b) { return a + (-b); }
  friend bool operator==(const CoinvClass&, const CoinvClass&) = default;
};

/// x |-> c_minus * mu_minus(x) + c_plus * mu_plus(x).
struct Functional {
  Rational c_minus{0};
  Rational c_plus{0};

  /// Dual of the constant sequence (..., 1, 1, 1, ...).
  static Functional constant_dual() { return {Rational(1, 2), Rational(1, 2)}; }
  /// Dual of the half-half sequence (..., 1, 1, -1, -1, ...).
  static Functional half_half_dual() { return {Rational(1, 2), Rational(-1, 2)}; }

  friend Functional operator+(const Functional& a, const Functional& b) {
    return {a.c_minus + b.c_minus, a.c_plus + b.c_plus};
  }
  friend bool operator==(const Functional&, const Functional&) = default;
};

inline Rational pair(const Functional& f, const CoinvClass& x) {
  return f.c_minus * x.mu_minus + f.c_plus * x.mu_plus;
}

namespace detail {
inline Rational mean(const std::vector<std::int64_t>& v) {
  const auto sum = std::accumulate(v.begin(), v.end(), std::int64_t{0});
  return Rational(sum, static_cast<std::int64_t>(v.size()));
}
}  // namespace detail

inline CoinvClass coinv_class(const IntSeq& a) {
  return {detail::mean(a.left()), detail::mean(a.right())};
}

inline bool is_trivial(const IntSeq& a) { return coinv_class(a).is_zero(); }

inline bool coinv_equal(const IntSeq& a, const IntSeq& b) { return is_trivial(a - b); }

/**
 * Bounded b with delta(b) == a, built from partial sums anchored at the core
 * offset and shifted so that the right cycle of b has minimum 0.
 * For a unit impulse at m this is the step sequence (1 for i <= m, 0 after).
 */
inline IntSeq certificate_trivial(const IntSeq& a) {
  if (!is_trivial(a))
    throw Error(ErrorCode::NotTrivial, "sequence has nonzero tail means");
  const Index o = a.core_offset();
  const Index e = a.core_end();

  std::vector<std::int64_t> core;
  std::int64_t b = 0;
  for (Index i = o; i < e; ++i) {
    core.push_back(b);
    b -= a(i);
  }
  std::vector<std::int64_t> right;
  for (Index k = 0; k < a.right_period(); ++k) {
    right.push_back(b);
    b -= a(e + k);
  }
  std::vector<std::int64_t> left(static_cast<std::size_t>(a.left_period()));
  b = 0;
  for (Index i = o - 1; i >= o - a.left_period(); --i) {
    b += a(i);
    left[static_cast<std::size_t>(i - (o - a.left_period()))] = b;
  }

  const auto floor = *std::min_element(right.begin(), right.end());
  for (auto* v : {&left, &core, &right})
    for (auto& x : *v) x -= floor;
  return canonicalize(IntSeq(std::move(left), std::move(core), o, std::move(right)));
}

/**
 * Two-sided periodic representative of q = p/n: period n, with |p| unit
 * entries per period distributed as evenly as possible (sign of p), first
 * entry at `anchoring`. iota_rep(1/3) is (1, 0, 0) repeated.
 */
inline IntSeq iota_rep(const Rational& q, Index anchoring = 0) {
  const std::int64_t p = q.numerator();
  const std::int64_t n = q.denominator();
  const std::int64_t mag = p < 0 ? -p : p;
  const std::int64_t sign = p < 0 ? -1 : 1;
  auto ceil_div = [](std::int64_t x, std::int64_t y) { return (x + y - 1) / y; };
  std::vector<std::int64_t> period;
  for (std::int64_t k = 0; k < n; ++k)
    period.push_back(sign * (ceil_div((k + 1) * mag, n) - ceil_div(k * mag, n)));
  return IntSeq::periodic(std::move(period), anchoring);
}

/// Average over one period of a two-sided periodic sequence.
inline Rational cesaro(const IntSeq& a) {
  if (!is_two_sided_periodic(a))
    throw Error(ErrorCode::NotPeriodic, "sequence is not two-sided periodic");
  return detail::mean(a.right());
}

}  // namespace hbe
