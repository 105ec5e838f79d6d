#pragma once

/**
 * @file fourier.hpp
 * @brief The Fourier-transform bundle of flat line bundles L_w over the
 *        circle, and the torus cocycle built the same way.
 *
 * Points of the circle are written w = e^{-2 pi i t}. Chart 1 covers
 * t in (0, 3/4) and chart 2 covers t in (1/2, 5/4). Read literally, the
 * overlap has two components:
 *
 *   component A: t in (1/2, 3/4)  -- branches agree, transition 1
 *   component B: t in (0, 1/4)    -- chart 2 reads t + 1, transition S
 *
 * Each chart multiplies a section by e^{2 pi i s t} with w = e^{2 pi i s},
 * so s = -branch and the transition multiplies by e^{-2 pi i k t} where
 * k = branch_2 - branch_1. On the Fourier basis e_n = e^{2 pi i n t} that is
 * e_n |-> e_{n-k}, i.e. S^k.
 */

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "hbe/bandop.hpp"
#include "hbe/bundle.hpp"

namespace hbe::fourier {

enum class Chart { One = 1, Two = 2 };

struct ChartInterval {
  double lo;
  double hi;
};

inline constexpr ChartInterval chart_interval(Chart c) {
  return c == Chart::One ? ChartInterval{0.0, 0.75} : ChartInterval{0.5, 1.25};
}

inline constexpr double kBranchTol = 1e-12;

/// w = e^{-2 pi i t}.
inline Complex circle_point(double t) { return std::polar(1.0, -2.0 * std::numbers::pi * t); }

/// Unique t in the chart's open interval with e^{-2 pi i t} == w.
inline double branch(Chart chart, Complex w) {
  if (!on_unit_circle(w, 1e-9)) throw Error(ErrorCode::InvalidInput, "w must be unimodular");
  double t0 = -std::arg(w) / (2.0 * std::numbers::pi);
  t0 -= std::floor(t0);
  const auto [lo, hi] = chart_interval(chart);
  for (double t : {t0 - 1.0, t0, t0 + 1.0}) {
    if (t > lo && t < hi) {
      if (std::abs(circle_point(t) - w) > kBranchTol)
        throw Error(ErrorCode::ToleranceExceeded, "branch does not exponentiate back to w");
      return t;
    }
  }
  throw Error(ErrorCode::NotInChart, "point outside chart " +
                                         std::to_string(static_cast<int>(chart)));
}

inline bool in_chart(Chart chart, Complex w) {
  try {
    branch(chart, w);
    return true;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NotInChart) return false;
    throw;
  }
}

enum class OverlapComponent { A, B };

/// Alternate labels: component A is also called V2, component B V1. The V1
/// interval is sometimes written t in (-1/4, 0); that set is not inside
/// chart 1, and (0, 1/4) is used here.
inline std::string_view printed_alias(OverlapComponent c) {
  return c == OverlapComponent::A ? "V2" : "V1";
}

/// Integer branch difference branch_2 - branch_1, in {0, 1}.
inline Index branch_jump(Complex w) {
  if (!in_chart(Chart::One, w) || !in_chart(Chart::Two, w))
    throw Error(ErrorCode::NotInOverlap, "point is not in both charts");
  return static_cast<Index>(std::llround(branch(Chart::Two, w) - branch(Chart::One, w)));
}

inline OverlapComponent overlap_component(Complex w) {
  return branch_jump(w) == 0 ? OverlapComponent::A : OverlapComponent::B;
}

inline EPBandOp transition_exact(Complex w) { return shift_op(branch_jump(w)); }

/**
 * <e_m, e^{2 pi i (s_2 - s_1) t} e_n> for |m|, |n| <= modes, by the composite
 * trapezoid rule on `points` uniform nodes of [0, 1). Row m, column n sit at
 * (m + modes, n + modes).
 */
inline Eigen::MatrixXcd transition_numeric(Complex w, int modes, int points) {
  if (points < 8 * (modes + 2))
    throw Error(ErrorCode::InvalidInput, "need at least 8 (modes + 2) quadrature points");
  if (!in_chart(Chart::One, w) || !in_chart(Chart::Two, w))
    throw Error(ErrorCode::NotInOverlap, "point is not in both charts");
  const double s_diff = -(branch(Chart::Two, w) - branch(Chart::One, w));
  const int dim = 2 * modes + 1;
  // The integrand depends on n - m only.
  std::vector<Complex> by_gap(static_cast<std::size_t>(2 * dim - 1));
  for (int gap = -(dim - 1); gap <= dim - 1; ++gap) {
    Complex acc{};
    const double freq = static_cast<double>(gap) + s_diff;
    for (int q = 0; q < points; ++q) {
      const double t = static_cast<double>(q) / points;
      acc += std::polar(1.0, 2.0 * std::numbers::pi * freq * t);
    }
    by_gap[static_cast<std::size_t>(gap + dim - 1)] = acc / static_cast<double>(points);
  }
  Eigen::MatrixXcd out(dim, dim);
  for (int m = 0; m < dim; ++m)
    for (int n = 0; n < dim; ++n) out(m, n) = by_gap[static_cast<std::size_t>(n - m + dim - 1)];
  return out;
}

/// Representative overlap points, one per component.
inline constexpr double kSampleTA = 0.6;
inline constexpr double kSampleTB = 0.1;

inline EndCocycle l1_bundle() {
  return EndCocycle::circle(transition_exact(circle_point(kSampleTA)),
                            transition_exact(circle_point(kSampleTB)));
}

/// The four displayed transitions on U_i x U_j: diag(1, 1), diag(1, e),
/// diag(e, 1), diag(e, e) with e = e^{-2 pi i t}.
inline EndCocycle l2_torus_bundle() {
  return EndCocycle::torus({TorusTransition{{0, 0}}, TorusTransition{{0, 1}},
                            TorusTransition{{1, 0}}, TorusTransition{{1, 1}}});
}

inline Eigen::Matrix2cd torus_transition_value(const TorusTransition& tr, double t) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  for (int k = 0; k < 2; ++k)
    m(k, k) = std::polar(1.0, -2.0 * std::numbers::pi * tr.windings[static_cast<std::size_t>(k)] * t);
  return m;
}

}  // namespace hbe::fourier
