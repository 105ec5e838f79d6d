#pragma once

/**
 * @file grid.hpp
 * @brief Sampled fields on a uniform grid of [-x_max, x_max] with
 *        fourth-order central differences and zero extension.
 */

#include <Eigen/Dense>

#include <cmath>
#include <complex>

#include "hbe/error.hpp"

namespace hbe {

struct GridSpec {
  double x_max = 12.0;
  int n_points = 6144;

  double step() const { return 2.0 * x_max / (n_points - 1); }
  double x(int i) const { return -x_max + step() * i; }

  Eigen::VectorXd nodes() const {
    return Eigen::VectorXd::LinSpaced(n_points, -x_max, x_max);
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

inline constexpr int kMinGridPoints = 1024;
inline constexpr double kBoundaryGate = 1e-10;

inline void require_grid(const GridSpec& g) {
  if (g.n_points < kMinGridPoints || !(g.x_max > 0.0))
    throw Error(ErrorCode::GridTooCoarse, "grid needs x_max > 0 and at least 1024 points");
}

struct GridField1 {
  GridSpec grid;
  Eigen::VectorXcd values;
};

/// C^2-valued field; column c holds component c + 1.
struct GridField2 {
  GridSpec grid;
  Eigen::MatrixX2cd values;
};

namespace stencil {

/// f' with (f_{i-2} - 8 f_{i-1} + 8 f_{i+1} - f_{i+2}) / 12h.
template <class Derived>
Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Derived::ColsAtCompileTime>
first(const Eigen::MatrixBase<Derived>& f, double h) {
  const Eigen::Index n = f.rows();
  Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Derived::ColsAtCompileTime> out(n, f.cols());
  auto at = [&](Eigen::Index i, Eigen::Index c) {
    return (i < 0 || i >= n) ? std::complex<double>{} : std::complex<double>(f(i, c));
  };
  for (Eigen::Index c = 0; c < f.cols(); ++c)
    for (Eigen::Index i = 0; i < n; ++i)
      out(i, c) = (at(i - 2, c) - 8.0 * at(i - 1, c) + 8.0 * at(i + 1, c) - at(i + 2, c)) /
                  (12.0 * h);
  return out;
}

/// f'' with (-f_{i-2} + 16 f_{i-1} - 30 f_i + 16 f_{i+1} - f_{i+2}) / 12h^2.
template <class Derived>
Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Derived::ColsAtCompileTime>
second(const Eigen::MatrixBase<Derived>& f, double h) {
  const Eigen::Index n = f.rows();
  Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Derived::ColsAtCompileTime> out(n, f.cols());
  auto at = [&](Eigen::Index i, Eigen::Index c) {
    return (i < 0 || i >= n) ? std::complex<double>{} : std::complex<double>(f(i, c));
  };
  for (Eigen::Index c = 0; c < f.cols(); ++c)
    for (Eigen::Index i = 0; i < n; ++i)
      out(i, c) = (-at(i - 2, c) + 16.0 * at(i - 1, c) - 30.0 * f(i, c) + 16.0 * at(i + 1, c) -
                   at(i + 2, c)) /
                  (12.0 * h * h);
  return out;
}

}  // namespace stencil

/// L^2 inner product <f, g> (conjugate-linear in f) by the trapezoid rule;
/// fields entering it vanish at the ends.
template <class A, class B>
std::complex<double> inner(const Eigen::MatrixBase<A>& f, const Eigen::MatrixBase<B>& g, double h) {
  return f.conjugate().cwiseProduct(g).sum() * h;
}

inline std::complex<double> inner(const GridField1& f, const GridField1& g) {
  return inner(f.values, g.values, f.grid.step());
}
inline std::complex<double> inner(const GridField2& f, const GridField2& g) {
  return inner(f.values, g.values, f.grid.step());
}

template <class Derived>
double l2_norm(const Eigen::MatrixBase<Derived>& f, double h) {
  return std::sqrt(f.squaredNorm() * h);
}

inline double norm(const GridField1& f) { return l2_norm(f.values, f.grid.step()); }
inline double norm(const GridField2& f) { return l2_norm(f.values, f.grid.step()); }

/// Largest modulus among the two outermost samples at each end.
template <class Derived>
double boundary_magnitude(const Eigen::MatrixBase<Derived>& f) {
  const Eigen::Index n = f.rows();
  double m = 0.0;
  for (Eigen::Index i : {Eigen::Index{0}, Eigen::Index{1}, n - 2, n - 1})
    for (Eigen::Index c = 0; c < f.cols(); ++c) m = std::max(m, std::abs(f(i, c)));
  return m;
}

template <class Derived>
void require_decay(const Eigen::MatrixBase<Derived>& f) {
  if (boundary_magnitude(f) >= kBoundaryGate)
    throw Error(ErrorCode::GridTooCoarse, "field does not decay at the grid boundary");
}

}  // namespace hbe
