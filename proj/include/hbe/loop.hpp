#pragma once

/**
 * @file loop.hpp
 * @brief Monomial loops z |-> phase * S^s * diag(z^{a_i}) of band unitaries.
 */

#include <cmath>
#include <complex>
#include <cstdint>
#include <variant>

#include "hbe/bandop.hpp"
#include "hbe/coinv.hpp"

namespace hbe {

struct MonomialLoop {
  Index shift_power = 0;
  IntSeq exponents = IntSeq::zero();
  Complex phase{1.0, 0.0};
};

struct LoopClass {
  Index component = 0;
  CoinvClass odd_class;

  friend LoopClass operator+(const LoopClass& a, const LoopClass& b) {
    return {a.component + b.component, a.odd_class + b.odd_class};
  }
  friend bool operator==(const LoopClass&, const LoopClass&) = default;
};

inline bool on_unit_circle(Complex z, double tol = 1e-12) {
  return std::abs(std::abs(z) - 1.0) <= tol;
}

/// The band operator phase * S^s * diag(z^a); its only diagonal sits at s.
inline EPBandOp loop_eval(const MonomialLoop& loop, Complex z) {
  if (!on_unit_circle(z)) throw Error(ErrorCode::InvalidInput, "loop argument must be unimodular");
  const double theta = std::arg(z);
  const Complex phase = loop.phase;
  // (S^s D x)_i = z^{a_{i+s}} x_{i+s}
  auto diag = map(shift(loop.exponents, loop.shift_power), [&](std::int64_t a) {
    return phase * std::polar(1.0, static_cast<double>(a) * theta);
  });
  const Index s = loop.shift_power;
  return EPBandOp(s < 0 ? -s : s, {{s, std::move(diag)}});
}

/// Pointwise product l1(z) l2(z), using diag(z^a) S^t = S^t diag(z^{shift(a, -t)}).
inline MonomialLoop loop_product(const MonomialLoop& l1, const MonomialLoop& l2) {
  return {l1.shift_power + l2.shift_power,
          canonicalize(shift(l1.exponents, -l2.shift_power) + l2.exponents),
          l1.phase * l2.phase};
}

inline MonomialLoop loop_inverse(const MonomialLoop& l) {
  return {-l.shift_power, canonicalize(shift(-l.exponents, l.shift_power)), std::conj(l.phase)};
}

/// (pi_0 label of the image component, class of the exponents).
inline LoopClass loop_class(const MonomialLoop& loop) {
  return {loop.shift_power, coinv_class(loop.exponents)};
}

/// Fiberwise winding exponents of a family of line bundles. Linear exponents
/// i |-> slope * i + intercept are not eventually periodic and only exist to
/// be rejected.
struct LinearExponents {
  std::int64_t slope = 0;
  std::int64_t intercept = 0;
};

using ExponentSpec = std::variant<IntSeq, LinearExponents>;

/// Equicontinuity of {z |-> z^{a_i}} on the circle, i.e. boundedness of a.
inline bool equicontinuous_family_check(const ExponentSpec& spec) {
  if (const auto* lin = std::get_if<LinearExponents>(&spec)) return lin->slope == 0;
  return true;
}

}  // namespace hbe
