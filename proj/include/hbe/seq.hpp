#pragma once

/**
 * @file seq.hpp
 * @brief Two-sided eventually periodic sequences.
 *
 * An EPSeq is a finite description of a sequence indexed by Z: a finite core
 * placed at `core_offset`, a left cycle repeated toward -infinity and a right
 * cycle repeated toward +infinity. The cycles are anchored at the core
 * boundaries, so
 *
 *   eval(core_offset - 1)          == left.back()
 *   eval(core_offset + core.size()) == right.front()
 *
 * The entry type is a parameter: exact integers for exponent sequences,
 * complex doubles for operator diagonals.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "hbe/error.hpp"

namespace hbe {

using Index = std::int64_t;

/// Floor modulus; the result is in [0, m).
constexpr Index pmod(Index a, Index m) {
  const Index r = a % m;
  return r < 0 ? r + m : r;
}

template <class T>
class EPSeq {
 public:
  using value_type = T;

  EPSeq() : EPSeq({T{}}, {}, 0, {T{}}) {}

  EPSeq(std::vector<T> left, std::vector<T> core, Index core_offset,
        std::vector<T> right)
      : left_(std::move(left)),
        core_(std::move(core)),
        offset_(core_offset),
        right_(std::move(right)) {
    if (left_.empty() || right_.empty())
      throw Error(ErrorCode::InvalidInput, "EPSeq cycles must be nonempty");
  }

  static EPSeq constant(T c) { return EPSeq({c}, {}, 0, {c}); }

  static EPSeq zero() { return constant(T{}); }

  /// Finitely supported: `core` placed at `offset`, zero elsewhere.
  static EPSeq finite(std::vector<T> core, Index offset) {
    return EPSeq({T{}}, std::move(core), offset, {T{}});
  }

  /// Unit impulse at index m.
  static EPSeq impulse(Index m, T value = T{1}) { return finite({value}, m); }

  /// Two-sided periodic; eval(anchor + k) == period[k] for 0 <= k < size.
  static EPSeq periodic(std::vector<T> period, Index anchor) {
    auto left = period;
    return EPSeq(std::move(left), {}, anchor, std::move(period));
  }

  /// `left_value` for i < boundary and `right_value` for i >= boundary.
  static EPSeq two_tails(T left_value, T right_value, Index boundary) {
    return EPSeq({left_value}, {}, boundary, {right_value});
  }

  const std::vector<T>& left() const noexcept { return left_; }
  const std::vector<T>& core() const noexcept { return core_; }
  const std::vector<T>& right() const noexcept { return right_; }
  Index core_offset() const noexcept { return offset_; }
  Index core_end() const noexcept {
    return offset_ + static_cast<Index>(core_.size());
  }
  Index left_period() const noexcept { return static_cast<Index>(left_.size()); }
  Index right_period() const noexcept { return static_cast<Index>(right_.size()); }

  T operator()(Index i) const {
    if (i < offset_) {
      const Index back = offset_ - 1 - i;
      return left_[static_cast<std::size_t>(left_period() - 1 - pmod(back, left_period()))];
    }
    if (i >= core_end())
      return right_[static_cast<std::size_t>(pmod(i - core_end(), right_period()))];
    return core_[static_cast<std::size_t>(i - offset_)];
  }

  /// Field-wise equality. Use observationally_equal for equality as sequences.
  bool operator==(const EPSeq&) const = default;

 private:
  std::vector<T> left_;
  std::vector<T> core_;
  Index offset_;
  std::vector<T> right_;
};

template <class T>
T eval(const EPSeq<T>& seq, Index i) {
  return seq(i);
}

/// eval(shift(a, k), i) == eval(a, i + k).
template <class T>
EPSeq<T> shift(const EPSeq<T>& a, Index k = 1) {
  return EPSeq<T>(a.left(), a.core(), a.core_offset() - k, a.right());
}

template <class T, class F>
auto map(const EPSeq<T>& a, F f) -> EPSeq<decltype(f(std::declval<T>()))> {
  using U = decltype(f(std::declval<T>()));
  auto apply = [&](const std::vector<T>& v) {
    std::vector<U> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(f(x));
    return out;
  };
  return EPSeq<U>(apply(a.left()), apply(a.core()), a.core_offset(), apply(a.right()));
}

/// Pointwise combination; the result's cycles have lcm length.
template <class T, class U, class F>
auto zip(const EPSeq<T>& a, const EPSeq<U>& b, F f)
    -> EPSeq<decltype(f(std::declval<T>(), std::declval<U>()))> {
  using R = decltype(f(std::declval<T>(), std::declval<U>()));
  const Index lo = std::min(a.core_offset(), b.core_offset());
  const Index hi = std::max(a.core_end(), b.core_end());
  const Index lp = std::lcm(a.left_period(), b.left_period());
  const Index rp = std::lcm(a.right_period(), b.right_period());
  std::vector<R> left, core, right;
  left.reserve(static_cast<std::size_t>(lp));
  for (Index i = lo - lp; i < lo; ++i) left.push_back(f(a(i), b(i)));
  for (Index i = lo; i < hi; ++i) core.push_back(f(a(i), b(i)));
  for (Index i = hi; i < hi + rp; ++i) right.push_back(f(a(i), b(i)));
  return EPSeq<R>(std::move(left), std::move(core), lo, std::move(right));
}

template <class T>
EPSeq<T> operator+(const EPSeq<T>& a, const EPSeq<T>& b) {
  return zip(a, b, [](const T& x, const T& y) { return x + y; });
}

template <class T>
EPSeq<T> operator-(const EPSeq<T>& a, const EPSeq<T>& b) {
  return zip(a, b, [](const T& x, const T& y) { return x - y; });
}

template <class T>
EPSeq<T> operator-(const EPSeq<T>& a) {
  return map(a, [](const T& x) { return -x; });
}

/// (1 - S) a, i.e. eval(delta(a), i) == a(i) - a(i + 1).
template <class T>
EPSeq<T> delta(const EPSeq<T>& a) {
  return a - shift(a);
}

/// lcm of both cycle lengths.
template <class T>
Index tail_period(const EPSeq<T>& a) {
  return std::lcm(a.left_period(), a.right_period());
}

/// Index range outside of which both sequences are in their periodic tails,
/// padded by one full period on each side. Agreement on this range implies
/// agreement everywhere.
template <class T, class U>
std::pair<Index, Index> certification_window(const EPSeq<T>& a, const EPSeq<U>& b) {
  const Index lp = std::lcm(a.left_period(), b.left_period());
  const Index rp = std::lcm(a.right_period(), b.right_period());
  return {std::min(a.core_offset(), b.core_offset()) - lp,
          std::max(a.core_end(), b.core_end()) + rp};
}

template <class T>
bool observationally_equal(const EPSeq<T>& a, const EPSeq<T>& b) {
  const auto [lo, hi] = certification_window(a, b);
  for (Index i = lo; i < hi; ++i)
    if (!(a(i) == b(i))) return false;
  return true;
}

template <class T>
bool approx_equal(const EPSeq<T>& a, const EPSeq<T>& b, double tol) {
  const auto [lo, hi] = certification_window(a, b);
  for (Index i = lo; i < hi; ++i)
    if (std::abs(a(i) - b(i)) > tol) return false;
  return true;
}

template <class T>
bool is_identically(const EPSeq<T>& a, const T& value, double tol = 0.0) {
  auto check = [&](const std::vector<T>& v) {
    return std::all_of(v.begin(), v.end(),
                       [&](const T& x) { return std::abs(x - value) <= tol; });
  };
  return check(a.left()) && check(a.core()) && check(a.right());
}

namespace detail {

template <class T>
std::size_t minimal_cyclic_period(const std::vector<T>& v) {
  const std::size_t n = v.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) ok = v[k] == v[(k + p) % n];
    if (ok) return p;
  }
  return n;
}

template <class T>
void rotate_left_one(std::vector<T>& v) {
  std::rotate(v.begin(), v.begin() + 1, v.end());
}

template <class T>
void rotate_right_one(std::vector<T>& v) {
  std::rotate(v.rbegin(), v.rbegin() + 1, v.rend());
}

}  // namespace detail

/**
 * Canonical representative: minimal cycles, minimal core, and the boundary
 * pushed as far right as the left cycle allows. Two-sided periodic sequences
 * are anchored at 0 with an empty core. Idempotent; observationally equal
 * inputs with exactly comparable entries map to identical outputs.
 */
template <class T>
EPSeq<T> canonicalize(const EPSeq<T>& a) {
  std::vector<T> left = a.left();
  std::vector<T> right = a.right();
  std::vector<T> core = a.core();
  Index offset = a.core_offset();

  const auto lp = detail::minimal_cyclic_period(left);
  left.erase(left.begin(), left.end() - static_cast<std::ptrdiff_t>(lp));
  right.resize(detail::minimal_cyclic_period(right));

  while (!core.empty() && core.back() == right.back()) {
    core.pop_back();
    detail::rotate_right_one(right);
  }
  while (!core.empty() && core.front() == left.front()) {
    core.erase(core.begin());
    ++offset;
    detail::rotate_left_one(left);
  }
  if (core.empty()) {
    const Index limit = std::lcm(static_cast<Index>(left.size()),
                                 static_cast<Index>(right.size()));
    Index steps = 0;
    while (steps < limit && right.front() == left.front()) {
      ++offset;
      detail::rotate_left_one(left);
      detail::rotate_left_one(right);
      ++steps;
    }
    if (steps == limit) {
      // Two-sided periodic: both cycles now describe the same sequence.
      const EPSeq<T> seq(left, {}, offset, right);
      const Index p = static_cast<Index>(right.size());
      std::vector<T> period;
      for (Index k = 0; k < p; ++k) period.push_back(seq(k));
      return EPSeq<T>::periodic(std::move(period), 0);
    }
  }
  return EPSeq<T>(std::move(left), std::move(core), offset, std::move(right));
}

/// True when the sequence is invariant under shift by its tail period.
template <class T>
bool is_two_sided_periodic(const EPSeq<T>& a) {
  return observationally_equal(a, shift(a, tail_period(a)));
}

}  // namespace hbe
