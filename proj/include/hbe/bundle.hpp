#pragma once

/**
 * @file bundle.hpp
 * @brief Hilbert bundles with ends over fixed two- and four-patch covers,
 *        presented by their transition data, and their degree one and two
 *        characteristic classes.
 *
 * Conventions:
 *  - Circle (two arcs): transitions t_A, t_B are constant band unitaries on
 *    the two overlap components; the jump is read as t_B * t_A^{-1} and
 *    beta1 is its Fredholm index.
 *  - Sphere (two discs): one monomial loop on the equator, oriented as the
 *    boundary of the upper disc; alpha1 pairs a functional with the class of
 *    its exponents.
 *  - Torus (four patches): transition data only; no invariants.
 */

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <variant>

#include "hbe/bandop.hpp"
#include "hbe/coinv.hpp"
#include "hbe/loop.hpp"

namespace hbe {

enum class BaseComplex { CircleTwoArc, SphereTwoDisc, TorusFourPatch };

inline std::string_view to_string(BaseComplex b) {
  switch (b) {
    case BaseComplex::CircleTwoArc: return "circle";
    case BaseComplex::SphereTwoDisc: return "sphere";
    case BaseComplex::TorusFourPatch: return "torus";
  }
  return "unknown";
}

struct CircleTransitions {
  EPBandOp on_a;  ///< t_A on overlap component V_A
  EPBandOp on_b;  ///< t_B on overlap component V_B
};

/// diag(e^{-2 pi i w_0 t}, e^{-2 pi i w_1 t}) for t in [0, 1).
struct TorusTransition {
  std::array<int, 2> windings{0, 0};
};

using TorusTransitions = std::array<TorusTransition, 4>;

class EndCocycle {
 public:
  using Data = std::variant<CircleTransitions, MonomialLoop, TorusTransitions>;

  static EndCocycle circle(EPBandOp t_a, EPBandOp t_b) {
    return EndCocycle(CircleTransitions{std::move(t_a), std::move(t_b)});
  }
  static EndCocycle sphere(MonomialLoop equator) { return EndCocycle(std::move(equator)); }
  static EndCocycle torus(TorusTransitions patches) { return EndCocycle(patches); }

  BaseComplex base() const {
    switch (data_.index()) {
      case 0: return BaseComplex::CircleTwoArc;
      case 1: return BaseComplex::SphereTwoDisc;
      default: return BaseComplex::TorusFourPatch;
    }
  }

  const Data& data() const noexcept { return data_; }

  const CircleTransitions& circle_transitions() const {
    require(BaseComplex::CircleTwoArc);
    return std::get<CircleTransitions>(data_);
  }
  const MonomialLoop& equator() const {
    require(BaseComplex::SphereTwoDisc);
    return std::get<MonomialLoop>(data_);
  }
  const TorusTransitions& torus_patches() const {
    require(BaseComplex::TorusFourPatch);
    return std::get<TorusTransitions>(data_);
  }

 private:
  explicit EndCocycle(Data data) : data_(std::move(data)) {}

  void require(BaseComplex wanted) const {
    if (base() == wanted) return;
    // No class is computable from torus data.
    if (base() == BaseComplex::TorusFourPatch)
      throw Error(ErrorCode::UnsupportedInvariant, "torus cocycles carry no computable invariants");
    throw Error(ErrorCode::WrongBase, "expected a " + std::string(to_string(wanted)) +
                                          " cocycle, got " + std::string(to_string(base())));
  }

  Data data_;
};

inline constexpr double kCocycleTol = 1e-9;

namespace detail {

inline bool unitary_with_inverse(const EPBandOp& t) {
  if (!is_unitary(t, kCocycleTol)) return false;
  return approx_equal(compose(t, adjoint(t)), identity_op(), kCocycleTol) &&
         approx_equal(compose(adjoint(t), t), identity_op(), kCocycleTol);
}

}  // namespace detail

/**
 * Two-patch covers have no triple overlaps, so the check is that each
 * transition is unitary and its stored inverse is a two-sided inverse,
 * at `samples` equally spaced points where the transition varies.
 */
inline bool cocycle_check(const EndCocycle& c, int samples = 64) {
  if (samples < 1) throw Error(ErrorCode::InvalidInput, "samples must be positive");
  switch (c.base()) {
    case BaseComplex::CircleTwoArc: {
      const auto& t = c.circle_transitions();
      return detail::unitary_with_inverse(t.on_a) && detail::unitary_with_inverse(t.on_b);
    }
    case BaseComplex::SphereTwoDisc: {
      const auto& loop = c.equator();
      const auto inverse = loop_inverse(loop);
      for (int k = 0; k < samples; ++k) {
        const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / samples);
        const auto u = loop_eval(loop, z);
        if (!is_unitary(u, kCocycleTol)) return false;
        if (!approx_equal(compose(u, loop_eval(inverse, z)), identity_op(), kCocycleTol))
          return false;
      }
      return true;
    }
    case BaseComplex::TorusFourPatch: {
      for (const auto& patch : c.torus_patches()) {
        for (int k = 0; k < samples; ++k) {
          const double t = static_cast<double>(k) / samples;
          for (int w : patch.windings) {
            const Complex g = std::polar(1.0, -2.0 * std::numbers::pi * w * t);
            const Complex g_inv = std::polar(1.0, 2.0 * std::numbers::pi * w * t);
            if (std::abs(std::abs(g) - 1.0) > kCocycleTol) return false;
            if (std::abs(g * g_inv - 1.0) > kCocycleTol) return false;
          }
        }
      }
      return true;
    }
  }
  return false;
}

inline EndCocycle trivial_circle() { return EndCocycle::circle(identity_op(), identity_op()); }

inline EndCocycle trivial_sphere() { return EndCocycle::sphere(MonomialLoop{}); }

/**
 * Completed sum of the line bundles with winding exponents a_i over the
 * sphere: the equator loop is diag(z^{a_i}). Unbounded exponents give a
 * family that is not equicontinuous and are rejected.
 */
inline EndCocycle completed_sum_sphere(const ExponentSpec& spec) {
  if (!equicontinuous_family_check(spec))
    throw Error(ErrorCode::UnboundedExponents, "exponent family is not equicontinuous");
  if (const auto* lin = std::get_if<LinearExponents>(&spec))
    return EndCocycle::sphere(MonomialLoop{0, IntSeq::constant(lin->intercept), 1.0});
  return EndCocycle::sphere(MonomialLoop{0, std::get<IntSeq>(spec), 1.0});
}

inline void require_cocycle(const EndCocycle& c) {
  if (!cocycle_check(c, 64))
    throw Error(ErrorCode::NotUnitary, "transition data fails the cocycle check");
}

inline Rational alpha1(const EndCocycle& c, const Functional& f) {
  const auto& loop = c.equator();
  require_cocycle(c);
  return pair(f, coinv_class(loop.exponents));
}

/// pi_0 label of the equator loop; alpha1 is computed from the exponent
/// class regardless, and reports flag a nonzero value.
inline Index equator_component(const EndCocycle& c) { return c.equator().shift_power; }

inline EPBandOp circle_jump(const EndCocycle& c) {
  const auto& t = c.circle_transitions();
  return compose(t.on_b, adjoint(t.on_a));
}

inline std::int64_t beta1(const EndCocycle& c) {
  const auto jump = circle_jump(c);
  require_cocycle(c);
  return fredholm_index(jump);
}

inline constexpr Index kMaxEndPeriod = 16;

inline bool periodic_with_some_n(const EPBandOp& op) {
  for (Index n = 1; n <= kMaxEndPeriod; ++n)
    if (is_periodic(op, n)) return true;
  return false;
}

inline bool periodic_end_check(const EndCocycle& c) {
  switch (c.base()) {
    case BaseComplex::CircleTwoArc: {
      const auto& t = c.circle_transitions();
      return periodic_with_some_n(t.on_a) && periodic_with_some_n(t.on_b);
    }
    case BaseComplex::SphereTwoDisc: {
      // Conjugation by S^n fixes phase * S^s and acts on diag(z^a) by
      // shifting a, so periodicity is exact on the exponents.
      const auto& a = c.equator().exponents;
      for (Index n = 1; n <= kMaxEndPeriod; ++n)
        if (observationally_equal(shift(a, n), a)) return true;
      return false;
    }
    case BaseComplex::TorusFourPatch:
      break;
  }
  throw Error(ErrorCode::UnsupportedInvariant, "periodicity is not defined for torus data");
}

inline Rational hat_alpha1(const EndCocycle& c) {
  c.equator();
  if (!periodic_end_check(c)) throw Error(ErrorCode::NotPeriodicEnd, "end is not periodic");
  return alpha1(c, Functional::constant_dual());
}

inline std::int64_t hat_beta1(const EndCocycle& c) {
  c.circle_transitions();
  if (!periodic_end_check(c)) throw Error(ErrorCode::NotPeriodicEnd, "end is not periodic");
  return beta1(c);
}

/// Pushforward of the trivial line bundle along R -> S^1: identity on one
/// overlap component and the shift on the other.
inline EndCocycle pushforward_universal_cover() {
  return EndCocycle::circle(identity_op(), shift_op(1));
}

/// Pullback along a degree-d self-map of the circle, modeled on transition
/// data by raising the jump to the d-th power.
inline EndCocycle pullback_circle(const EndCocycle& c, Index d) {
  const auto& t = c.circle_transitions();
  return EndCocycle::circle(t.on_a, compose(power(circle_jump(c), d), t.on_a));
}

/// Pushforward of the pulled-back trivial bundle along R -> S^1, i.e. the
/// completed sum of copies of the fiber; transitions only permute sheets.
inline EndCocycle transfer_structure() { return pushforward_universal_cover(); }

/// Every stored entry is exactly 0 or 1.
inline bool is_permutation_only(const EPBandOp& op) {
  auto ok = [](const std::vector<Complex>& v) {
    for (const auto& x : v)
      if (x != Complex{0.0} && x != Complex{1.0}) return false;
    return true;
  };
  for (const auto& [d, seq] : op.diagonals())
    if (!ok(seq.left()) || !ok(seq.core()) || !ok(seq.right())) return false;
  return true;
}

struct Translation {
  Index k = 0;
};
struct Negation {};
using DeckMap = std::variant<Translation, Negation>;

inline Index deck_apply(const DeckMap& m, Index x) {
  if (const auto* t = std::get_if<Translation>(&m)) return x + t->k;
  return -x;
}

/// sup_{|x| <= radius} |m(x) - x|.
inline Index deck_displacement(const DeckMap& m, Index radius) {
  Index sup = 0;
  for (Index x = -radius; x <= radius; ++x) {
    const Index d = deck_apply(m, x) - x;
    sup = std::max(sup, d < 0 ? -d : d);
  }
  return sup;
}

/// The permutation matrix of a deck map has finite propagation iff its
/// displacement stays bounded; for translations and negation it either
/// stabilizes immediately or grows linearly, so two radii decide.
inline bool deck_finite_propagation_check(const DeckMap& m) {
  return deck_displacement(m, 64) == deck_displacement(m, 128);
}

}  // namespace hbe
