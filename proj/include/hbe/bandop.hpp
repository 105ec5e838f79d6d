#pragma once

/**
 * @file bandop.hpp
 * @brief Finite-propagation operators on l^2(Z) with eventually periodic
 *        diagonals.
 *
 * Diagonal d of an operator holds the sequence i |-> U(i, i + d). The shift
 * S acts by (S x)_i = x_{i+1}, so S e_k = e_{k-1} and shift_op(1) has its only
 * nonzero diagonal at d = +1.
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "hbe/error.hpp"
#include "hbe/seq.hpp"

namespace hbe {

using Complex = std::complex<double>;
using CSeq = EPSeq<Complex>;

/// Entries at or below this modulus count as zero when reading off the band.
inline constexpr double kZeroEntryTol = 1e-14;
inline constexpr double kUnitarityGate = 1e-9;
inline constexpr double kIntegerSnapTol = 1e-6;

class EPBandOp {
 public:
  EPBandOp() = default;

  /// Diagonals outside [-band, band] are rejected; missing ones are zero.
  EPBandOp(Index band, std::map<Index, CSeq> diagonals)
      : band_(band), diagonals_(std::move(diagonals)) {
    if (band_ < 0) throw Error(ErrorCode::InvalidInput, "negative band");
    for (const auto& [d, seq] : diagonals_)
      if (d < -band_ || d > band_)
        throw Error(ErrorCode::InvalidInput, "diagonal outside declared band");
  }

  Index band() const noexcept { return band_; }
  const std::map<Index, CSeq>& diagonals() const noexcept { return diagonals_; }

  CSeq diagonal(Index d) const {
    const auto it = diagonals_.find(d);
    return it == diagonals_.end() ? CSeq::zero() : it->second;
  }

  Complex entry(Index i, Index j) const {
    const auto it = diagonals_.find(j - i);
    return it == diagonals_.end() ? Complex{} : it->second(i);
  }

 private:
  Index band_ = 0;
  std::map<Index, CSeq> diagonals_;
};

inline EPBandOp identity_op() { return EPBandOp(0, {{0, CSeq::constant(1.0)}}); }

/// S^k: (S^k x)_i = x_{i+k}.
inline EPBandOp shift_op(Index k) {
  return EPBandOp(k < 0 ? -k : k, {{k, CSeq::constant(1.0)}});
}

inline EPBandOp diagonal_op(CSeq values) { return EPBandOp(0, {{0, std::move(values)}}); }

inline Complex matrix_entry(const EPBandOp& op, Index i, Index j) { return op.entry(i, j); }

/// Smallest L with U(i, j) == 0 whenever |i - j| > L.
inline Index propagation(const EPBandOp& op) {
  Index prop = 0;
  for (const auto& [d, seq] : op.diagonals())
    if (!is_identically(seq, Complex{}, kZeroEntryTol)) prop = std::max(prop, d < 0 ? -d : d);
  return prop;
}

namespace detail {

/// Drops numerically zero diagonals and shrinks the band to what remains.
inline EPBandOp trimmed(std::map<Index, CSeq> diagonals) {
  Index band = 0;
  std::map<Index, CSeq> kept;
  for (auto& [d, seq] : diagonals) {
    if (is_identically(seq, Complex{}, kZeroEntryTol)) continue;
    band = std::max(band, d < 0 ? -d : d);
    kept.emplace(d, canonicalize(seq));
  }
  return EPBandOp(band, std::move(kept));
}

}  // namespace detail

/// (UV)(i, i+d) = sum over d1 + d2 = d of U(i, i+d1) V(i+d1, i+d).
inline EPBandOp compose(const EPBandOp& u, const EPBandOp& v) {
  std::map<Index, CSeq> out;
  for (const auto& [d1, a] : u.diagonals()) {
    for (const auto& [d2, b] : v.diagonals()) {
      auto term = zip(a, shift(b, d1), [](Complex x, Complex y) { return x * y; });
      auto [it, inserted] = out.try_emplace(d1 + d2, term);
      if (!inserted) it->second = it->second + term;
    }
  }
  return detail::trimmed(std::move(out));
}

inline EPBandOp operator*(const EPBandOp& u, const EPBandOp& v) { return compose(u, v); }

/// U*(i, i+d) = conj(U(i+d, i)).
inline EPBandOp adjoint(const EPBandOp& op) {
  std::map<Index, CSeq> out;
  for (const auto& [d, seq] : op.diagonals())
    out.emplace(-d, map(shift(seq, -d), [](Complex x) { return std::conj(x); }));
  return EPBandOp(op.band(), std::move(out));
}

inline EPBandOp power(const EPBandOp& op, Index n) {
  const EPBandOp base = n < 0 ? adjoint(op) : op;
  EPBandOp acc = identity_op();
  for (Index k = 0; k < (n < 0 ? -n : n); ++k) acc = compose(acc, base);
  return acc;
}

/// Index range covering every core plus one tail period and twice the band
/// on each side; entries of U*U and UU* outside it repeat entries inside.
inline std::pair<Index, Index> certification_rows(const EPBandOp& op) {
  Index lo = 0, hi = 0, period = 1;
  bool first = true;
  for (const auto& [d, seq] : op.diagonals()) {
    lo = first ? seq.core_offset() : std::min(lo, seq.core_offset());
    hi = first ? seq.core_end() : std::max(hi, seq.core_end());
    period = std::lcm(period, tail_period(seq));
    first = false;
  }
  const Index pad = period + 2 * op.band();
  return {lo - pad, hi + pad};
}

inline bool approx_equal(const EPBandOp& a, const EPBandOp& b, double tol) {
  const Index band = std::max(a.band(), b.band());
  for (Index d = -band; d <= band; ++d)
    if (!approx_equal(a.diagonal(d), b.diagonal(d), tol)) return false;
  return true;
}

/// Finite slice of a coefficient vector: values[k] sits at index start + k.
struct Window {
  Index start = 0;
  std::vector<Complex> values;

  Index end() const { return start + static_cast<Index>(values.size()); }
  Complex at(Index i) const {
    return (i < start || i >= end()) ? Complex{} : values[static_cast<std::size_t>(i - start)];
  }
};

/// U x restricted to the window's index range, treating x as zero outside it.
/// Exact at indices at least `band` away from both window edges.
inline Window apply_window(const EPBandOp& op, const Window& x) {
  if (static_cast<Index>(x.values.size()) <= 2 * op.band())
    throw Error(ErrorCode::WindowTooNarrow, "window narrower than the operator band");
  Window y{x.start, std::vector<Complex>(x.values.size())};
  for (Index i = x.start; i < x.end(); ++i) {
    Complex acc{};
    for (const auto& [d, seq] : op.diagonals()) acc += seq(i) * x.at(i + d);
    y.values[static_cast<std::size_t>(i - x.start)] = acc;
  }
  return y;
}

/**
 * Largest entry of |U*U - I| and |UU* - I| over rows in the interior of the
 * window [-W/2, W/2] (margin band + m from its edges) together with the
 * certification rows, so a small value certifies unitarity on all of Z.
 */
inline double unitarity_defect(const EPBandOp& op, Index window, Index margin = 0) {
  const Index L = op.band();
  if (window <= 4 * (L + margin))
    throw Error(ErrorCode::WindowTooNarrow, "unitarity window must exceed 4 (band + margin)");
  const Index inner = window / 2 - L - margin;
  auto [lo, hi] = certification_rows(op);
  lo = std::min(lo, -inner);
  hi = std::max(hi, inner + 1);

  double defect = 0.0;
  for (Index i = lo; i < hi; ++i) {
    for (Index j = i - 2 * L; j <= i + 2 * L; ++j) {
      Complex uu{}, vv{};
      for (Index k = i - L; k <= i + L; ++k) {
        uu += std::conj(op.entry(k, i)) * op.entry(k, j);
        vv += op.entry(i, k) * std::conj(op.entry(j, k));
      }
      const Complex id = i == j ? Complex{1.0} : Complex{};
      defect = std::max({defect, std::abs(uu - id), std::abs(vv - id)});
    }
  }
  return defect;
}

inline bool is_unitary(const EPBandOp& op, double tol = kUnitarityGate) {
  return unitarity_defect(op, 8 * op.band() + 32) < tol;
}

/// Flow across the cut between -1 and 0, before integer snapping:
/// sum_{i<0<=j} |U_ij|^2 - sum_{j<0<=i} |U_ij|^2.
inline double corner_flow(const EPBandOp& op) {
  double flow = 0.0;
  for (const auto& [d, seq] : op.diagonals()) {
    if (d > 0)
      for (Index i = -d; i < 0; ++i) flow += std::norm(seq(i));
    else if (d < 0)
      for (Index i = 0; i < -d; ++i) flow -= std::norm(seq(i));
  }
  return flow;
}

/// Fredholm index of the compression of U to indices >= 0; ind(S) = +1.
inline std::int64_t fredholm_index(const EPBandOp& op) {
  const double defect = unitarity_defect(op, 8 * op.band() + 32);
  if (!(defect < kUnitarityGate))
    throw Error(ErrorCode::NotUnitary, "unitarity defect " + std::to_string(defect));
  const double flow = corner_flow(op);
  const double snapped = std::round(flow);
  if (std::abs(flow - snapped) > kIntegerSnapTol)
    throw Error(ErrorCode::NotInteger, "corner flow " + std::to_string(flow));
  return static_cast<std::int64_t>(snapped);
}

/// S^n U S^{-n} == U, i.e. every diagonal is invariant under shift by n.
inline bool is_periodic(const EPBandOp& op, Index n, double tol = 1e-12) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "period must be positive");
  for (const auto& [d, seq] : op.diagonals())
    if (!approx_equal(shift(seq, n), seq, tol)) return false;
  return true;
}

}  // namespace hbe
