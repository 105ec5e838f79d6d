#pragma once

/**
 * @file oscillator.hpp
 * @brief Harmonic-oscillator ladder algebra on a grid, the family of
 *        oscillators parametrized by 2x2 Hermitian unitaries, and the
 *        Hilbert bundle with end over the sphere that their eigenframes
 *        define.
 *
 * One dimension: H = -d^2/dx^2 + a^2 x^2, A = d/dx + a x, A* = -d/dx + a x.
 * Two components: H = -d^2/dx^2 + x^2 acting componentwise, and
 * A_U = d/dx + U x, A_U* = -d/dx + U x for U Hermitian unitary.
 *
 * Frames over the upper (lower) disc are the pole eigenframe at P (-P)
 * transported by the intertwiner Phi+(U) (Phi-(U)), which satisfies
 * Phi U = (+-P) Phi and is a Hermitian involution. The overlap of the two
 * frames on the equator is a diagonal loop with winding -1 on one half of
 * the index set and +1 on the other (Split ordering), or an alternating
 * pattern when the two towers are interleaved.
 */

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hbe/bundle.hpp"
#include "hbe/coinv.hpp"
#include "hbe/error.hpp"
#include "hbe/grid.hpp"
#include "hbe/loop.hpp"

namespace hbe::osc {

using Mat2 = Eigen::Matrix2cd;

enum class Ladder { Annihilate, Create };
enum class Hemisphere { Plus, Minus };
enum class Ordering { Split, Interleaved };

inline std::string_view to_string(Hemisphere h) { return h == Hemisphere::Plus ? "plus" : "minus"; }
inline std::string_view to_string(Ordering o) {
  return o == Ordering::Split ? "split" : "interleaved";
}

// ---------------------------------------------------------------------------
// One dimension

namespace detail {

inline Eigen::VectorXcd times_x(const Eigen::VectorXcd& f, const GridSpec& g) {
  return g.nodes().cast<std::complex<double>>().cwiseProduct(f);
}

/// x_i * (U f_i) at every node.
inline Eigen::MatrixX2cd times_ux(const Eigen::MatrixX2cd& f, const Mat2& u, const GridSpec& g) {
  return g.nodes().cast<std::complex<double>>().asDiagonal() * (f * u.transpose());
}

}  // namespace detail

/// (a/pi)^{1/4} e^{-a x^2 / 2}, unit norm.
inline GridField1 ground_state(double a, const GridSpec& g) {
  require_grid(g);
  if (!(a > 0.0) || a * g.x_max * g.x_max < 50.0)
    throw Error(ErrorCode::GridTooCoarse, "need a > 0 and a x_max^2 >= 50");
  const Eigen::VectorXd x = g.nodes();
  const double c = std::pow(a / std::numbers::pi, 0.25);
  Eigen::VectorXcd v(g.n_points);
  for (int i = 0; i < g.n_points; ++i) v(i) = c * std::exp(-0.5 * a * x(i) * x(i));
  return {g, v};
}

inline GridField1 ladder_1d(const GridField1& f, double a, Ladder dir) {
  require_grid(f.grid);
  require_decay(f.values);
  const Eigen::VectorXcd d = stencil::first(f.values, f.grid.step());
  const Eigen::VectorXcd ax = a * detail::times_x(f.values, f.grid);
  return {f.grid, dir == Ladder::Annihilate ? Eigen::VectorXcd(d + ax) : Eigen::VectorXcd(ax - d)};
}

inline GridField1 hamiltonian_1d(const GridField1& f, double a) {
  require_grid(f.grid);
  require_decay(f.values);
  const Eigen::VectorXd x = f.grid.nodes();
  const Eigen::VectorXcd pot =
      (a * a * x.array().square()).matrix().cast<std::complex<double>>().cwiseProduct(f.values);
  return {f.grid, pot - stencil::second(f.values, f.grid.step())};
}

struct TowerReport {
  std::vector<double> eigen_residuals;  ///< ||H psi_k - (2k+1) a psi_k|| / ||psi_k||
  std::vector<double> ladder_residuals; ///< ||A* psi_{k-1} / sqrt(2 k a) - psi_k||, entry 0 unused
  double gram_error = 0.0;              ///< max |<psi_k, psi_l> - delta_kl|
};

inline TowerReport tower_report(const std::vector<GridField1>& tower, double a) {
  TowerReport rep;
  for (std::size_t k = 0; k < tower.size(); ++k) {
    const auto& psi = tower[k];
    const Eigen::VectorXcd r =
        hamiltonian_1d(psi, a).values - (2.0 * static_cast<double>(k) + 1.0) * a * psi.values;
    rep.eigen_residuals.push_back(l2_norm(r, psi.grid.step()) / norm(psi));
    if (k == 0) {
      rep.ladder_residuals.push_back(0.0);
    } else {
      const auto up = ladder_1d(tower[k - 1], a, Ladder::Create);
      const Eigen::VectorXcd d = up.values / std::sqrt(2.0 * static_cast<double>(k) * a) - psi.values;
      rep.ladder_residuals.push_back(l2_norm(d, psi.grid.step()));
    }
    for (std::size_t l = 0; l < tower.size(); ++l) {
      const double target = k == l ? 1.0 : 0.0;
      rep.gram_error = std::max(rep.gram_error, std::abs(inner(psi, tower[l]) - target));
    }
  }
  return rep;
}

inline constexpr double kTowerResidualScale = 1e-4;
inline constexpr double kGramTol = 1e-6;

/**
 * psi_0, ..., psi_K with psi_k = A* psi_{k-1} / sqrt(2 k a).
 *
 * Applying the discrete A* k times multiplies rounding noise by about 1/h per
 * step, so the levels are generated by the equivalent recurrence
 * psi_k = sqrt(2a/k) x psi_{k-1} - sqrt((k-1)/k) psi_{k-2}, renormalized on
 * the grid. tower_report measures the single-step ladder relation.
 */
inline std::vector<GridField1> hermite_tower(double a, int K, const GridSpec& g) {
  if (K < 0) throw Error(ErrorCode::InvalidInput, "tower height must be nonnegative");
  std::vector<GridField1> tower{ground_state(a, g)};
  const Eigen::VectorXcd x = g.nodes().cast<std::complex<double>>();
  for (int k = 1; k <= K; ++k) {
    Eigen::VectorXcd next = std::sqrt(2.0 * a / k) * x.cwiseProduct(tower.back().values);
    if (k >= 2) next -= std::sqrt((k - 1.0) / k) * tower[static_cast<std::size_t>(k - 2)].values;
    GridField1 f{g, next};
    f.values /= norm(f);
    tower.push_back(std::move(f));
  }
  const auto rep = tower_report(tower, a);
  for (std::size_t k = 0; k < rep.eigen_residuals.size(); ++k)
    if (rep.eigen_residuals[k] > kTowerResidualScale * (1.0 + static_cast<double>(k)))
      throw Error(ErrorCode::ToleranceExceeded,
                  "eigen-residual of level " + std::to_string(k) + " is " +
                      std::to_string(rep.eigen_residuals[k]));
  if (rep.gram_error > kGramTol)
    throw Error(ErrorCode::ToleranceExceeded, "tower Gram error " + std::to_string(rep.gram_error));
  return tower;
}

// ---------------------------------------------------------------------------
// Identity verification

struct IdentityReport {
  std::array<std::string_view, 5> names{};
  std::array<double, 5> max_residual{};
  std::vector<std::array<double, 5>> rows;  ///< one row of relative residuals per trial
};

inline constexpr double kIdentityTol = 1e-5;

/// p(x - c) e^{-(x - c)^2 / (2 s^2)} with complex coefficients of degree <= 4,
/// center c in [-1, 1] and width s in [0.5, 1].
inline Eigen::VectorXcd damped_random_field(std::mt19937_64& rng, const GridSpec& g) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0), center(-1.0, 1.0), width(0.5, 1.0);
  std::array<std::complex<double>, 5> p{};
  for (auto& c : p) c = {coef(rng), coef(rng)};
  const double c0 = center(rng);
  const double s = width(rng);
  Eigen::VectorXcd v(g.n_points);
  for (int i = 0; i < g.n_points; ++i) {
    const double y = g.x(i) - c0;
    std::complex<double> poly{};
    for (auto it = p.rbegin(); it != p.rend(); ++it) poly = poly * y + *it;
    v(i) = poly * std::exp(-0.5 * y * y / (s * s));
  }
  return v;
}

namespace detail {

template <class M>
double relative_residual(const M& lhs, const M& rhs, const M& f, double h) {
  const double scale = std::max(l2_norm(rhs, h), l2_norm(f, h));
  return l2_norm((lhs - rhs).eval(), h) / scale;
}

inline void throw_if_exceeded(const IdentityReport& rep, double tol, const std::string& context) {
  for (std::size_t k = 0; k < 5; ++k)
    if (!(rep.max_residual[k] <= tol))
      throw Error(ErrorCode::ToleranceExceeded,
                  std::string(rep.names[k]) + " residual " + std::to_string(rep.max_residual[k]) +
                      " exceeds " + std::to_string(tol) + context);
}

}  // namespace detail

inline IdentityReport measure_identities_1d(double a, int trials, std::uint64_t seed,
                                            const GridSpec& g = {}) {
  require_grid(g);
  IdentityReport rep;
  rep.names = {"AA* = H + a", "A*A = H - a", "[A,A*] = 2a", "[H,A] = -2aA", "[H,A*] = 2aA*"};
  std::mt19937_64 rng(seed);
  const double h = g.step();
  for (int t = 0; t < trials; ++t) {
    const GridField1 f{g, damped_random_field(rng, g)};
    auto A = [&](const GridField1& u) { return ladder_1d(u, a, Ladder::Annihilate); };
    auto Ad = [&](const GridField1& u) { return ladder_1d(u, a, Ladder::Create); };
    auto H = [&](const GridField1& u) { return hamiltonian_1d(u, a); };
    const auto Af = A(f), Adf = Ad(f), Hf = H(f);
    const Eigen::VectorXcd AAd = A(Adf).values, AdA = Ad(Af).values;
    std::array<double, 5> row{
        detail::relative_residual(AAd, Eigen::VectorXcd(Hf.values + a * f.values), f.values, h),
        detail::relative_residual(AdA, Eigen::VectorXcd(Hf.values - a * f.values), f.values, h),
        detail::relative_residual(Eigen::VectorXcd(AAd - AdA), Eigen::VectorXcd(2.0 * a * f.values),
                                  f.values, h),
        detail::relative_residual(Eigen::VectorXcd(H(Af).values - A(Hf).values),
                                  Eigen::VectorXcd(-2.0 * a * Af.values), f.values, h),
        detail::relative_residual(Eigen::VectorXcd(H(Adf).values - Ad(Hf).values),
                                  Eigen::VectorXcd(2.0 * a * Adf.values), f.values, h),
    };
    for (std::size_t k = 0; k < 5; ++k) rep.max_residual[k] = std::max(rep.max_residual[k], row[k]);
    rep.rows.push_back(row);
  }
  return rep;
}

inline IdentityReport verify_identities_1d(double a, int trials, double tol = kIdentityTol,
                                           std::uint64_t seed = 1, const GridSpec& g = {}) {
  auto rep = measure_identities_1d(a, trials, seed, g);
  detail::throw_if_exceeded(rep, tol, " (a = " + std::to_string(a) + ")");
  return rep;
}

// ---------------------------------------------------------------------------
// Hermitian unitary 2x2 matrices

enum class UH2Component { Sphere, PlusIdentity, MinusIdentity };

inline std::string_view to_string(UH2Component c) {
  switch (c) {
    case UH2Component::Sphere: return "sphere";
    case UH2Component::PlusIdentity: return "plus_identity";
    case UH2Component::MinusIdentity: return "minus_identity";
  }
  return "unknown";
}

inline constexpr double kMatrixTol = 1e-12;

inline Mat2 pole_p() {
  Mat2 p;
  p << 1.0, 0.0, 0.0, -1.0;
  return p;
}

inline bool is_hermitian_unitary(const Mat2& u, double tol = kMatrixTol) {
  return (u - u.adjoint()).cwiseAbs().maxCoeff() <= tol &&
         (u * u.adjoint() - Mat2::Identity()).cwiseAbs().maxCoeff() <= tol;
}

/// Sphere iff det = -1 (equivalently trace 0); otherwise U = +-E.
inline UH2Component uh2_classify(const Mat2& u) {
  if (!is_hermitian_unitary(u))
    throw Error(ErrorCode::NotHermitianUnitary, "matrix is not a Hermitian unitary");
  if (u.determinant().real() < 0.0) return UH2Component::Sphere;
  return u(0, 0).real() > 0.0 ? UH2Component::PlusIdentity : UH2Component::MinusIdentity;
}

/// (+-r, z; conj z, -+r) with r = sqrt(1 - |z|^2); the two agree for |z| = 1.
inline Mat2 u_point(std::complex<double> z, Hemisphere hemi) {
  const double m2 = std::norm(z);
  if (m2 > 1.0 + kMatrixTol) throw Error(ErrorCode::OutOfDisc, "|z| must be at most 1");
  const double r = std::sqrt(std::max(0.0, 1.0 - m2));
  const double s = hemi == Hemisphere::Plus ? r : -r;
  Mat2 u;
  u << s, z, std::conj(z), -s;
  return u;
}

/// Unit vector n on the sphere as n1 sigma_x + n2 sigma_y + n3 sigma_z.
inline Mat2 sphere_point(const Eigen::Vector3d& n) {
  const Eigen::Vector3d v = n.normalized();
  Mat2 u;
  u << v(2), std::complex<double>(v(0), -v(1)), std::complex<double>(v(0), v(1)), -v(2);
  return u;
}

/// Uniform random point of the sphere component.
inline Mat2 random_sphere_point(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Vector3d n;
  do {
    n = {gauss(rng), gauss(rng), gauss(rng)};
  } while (n.norm() < 1e-6);
  return sphere_point(n);
}

namespace detail {

inline void require_hemisphere(const Mat2& u, Hemisphere hemi) {
  if (uh2_classify(u) != UH2Component::Sphere)
    throw Error(ErrorCode::WrongHemisphere, "matrix is not on the sphere component");
  const double s = u(0, 0).real();
  if ((hemi == Hemisphere::Plus && s < -kMatrixTol) || (hemi == Hemisphere::Minus && s > kMatrixTol))
    throw Error(ErrorCode::WrongHemisphere,
                "matrix is not on the " + std::string(to_string(hemi)) + " hemisphere");
}

}  // namespace detail

/**
 * Phi+(U) = 1/sqrt2 (sqrt(1+r), z/sqrt(1+r); conj z/sqrt(1+r), -sqrt(1+r))
 * for U = (r, z; conj z, -r), r >= 0. Writing z = sqrt(1-r^2) e^{i theta},
 * z/sqrt(1+r) = sqrt(1-r) e^{i theta}; this form stays continuous at z = 0.
 */
inline Mat2 phi_plus(const Mat2& u) {
  detail::require_hemisphere(u, Hemisphere::Plus);
  const double r = std::max(0.0, u(0, 0).real());
  const std::complex<double> z = u(0, 1);
  const double q = std::sqrt(1.0 + r);
  Mat2 phi;
  phi << q, z / q, std::conj(z) / q, -q;
  return phi / std::numbers::sqrt2;
}

/// Phi-(U) = 1/sqrt2 (-sqrt(1+r), z/sqrt(1+r); conj z/sqrt(1+r), sqrt(1+r))
/// for U = (-r, z; conj z, r), r >= 0, so that Phi-(U) U = -P Phi-(U).
inline Mat2 phi_minus(const Mat2& u) {
  detail::require_hemisphere(u, Hemisphere::Minus);
  const double r = std::max(0.0, -u(0, 0).real());
  const std::complex<double> z = u(0, 1);
  const double q = std::sqrt(1.0 + r);
  Mat2 phi;
  phi << -q, z / q, std::conj(z) / q, q;
  return phi / std::numbers::sqrt2;
}

inline Mat2 intertwiner(const Mat2& u, Hemisphere hemi) {
  return hemi == Hemisphere::Plus ? phi_plus(u) : phi_minus(u);
}

// ---------------------------------------------------------------------------
// Two components

inline GridField2 ladder_2d(const GridField2& f, const Mat2& u, Ladder dir) {
  require_grid(f.grid);
  require_decay(f.values);
  const Eigen::MatrixX2cd d = stencil::first(f.values, f.grid.step());
  const Eigen::MatrixX2cd ux = detail::times_ux(f.values, u, f.grid);
  return {f.grid, dir == Ladder::Annihilate ? Eigen::MatrixX2cd(d + ux) : Eigen::MatrixX2cd(ux - d)};
}

inline GridField2 hamiltonian_2d(const GridField2& f) {
  require_grid(f.grid);
  require_decay(f.values);
  const Eigen::VectorXd x = f.grid.nodes();
  const Eigen::MatrixX2cd pot =
      x.array().square().matrix().cast<std::complex<double>>().asDiagonal() * f.values;
  return {f.grid, pot - stencil::second(f.values, f.grid.step())};
}

/// Constant matrix applied at every node.
inline Eigen::MatrixX2cd apply_matrix(const Mat2& m, const Eigen::MatrixX2cd& f) {
  return f * m.transpose();
}

inline IdentityReport measure_identities_2d(const Mat2& u, int trials, std::uint64_t seed,
                                            const GridSpec& g = {}) {
  require_grid(g);
  if (!is_hermitian_unitary(u))
    throw Error(ErrorCode::NotHermitianUnitary, "matrix is not a Hermitian unitary");
  IdentityReport rep;
  rep.names = {"A_U A_U* = H + U", "A_U* A_U = H - U", "[A_U,A_U*] = 2U", "[H,A_U] = -2U A_U",
               "[H,A_U*] = 2U A_U*"};
  std::mt19937_64 rng(seed);
  const double h = g.step();
  using M = Eigen::MatrixX2cd;
  for (int t = 0; t < trials; ++t) {
    M fv(g.n_points, 2);
    fv.col(0) = damped_random_field(rng, g);
    fv.col(1) = damped_random_field(rng, g);
    const GridField2 f{g, fv};
    auto A = [&](const GridField2& v) { return ladder_2d(v, u, Ladder::Annihilate); };
    auto Ad = [&](const GridField2& v) { return ladder_2d(v, u, Ladder::Create); };
    const auto Af = A(f), Adf = Ad(f), Hf = hamiltonian_2d(f);
    const M AAd = A(Adf).values, AdA = Ad(Af).values;
    const M Uf = apply_matrix(u, f.values);
    std::array<double, 5> row{
        detail::relative_residual(AAd, M(Hf.values + Uf), f.values, h),
        detail::relative_residual(AdA, M(Hf.values - Uf), f.values, h),
        detail::relative_residual(M(AAd - AdA), M(2.0 * Uf), f.values, h),
        detail::relative_residual(M(hamiltonian_2d(Af).values - A(Hf).values),
                                  M(-2.0 * apply_matrix(u, Af.values)), f.values, h),
        detail::relative_residual(M(hamiltonian_2d(Adf).values - Ad(Hf).values),
                                  M(2.0 * apply_matrix(u, Adf.values)), f.values, h),
    };
    for (std::size_t k = 0; k < 5; ++k) rep.max_residual[k] = std::max(rep.max_residual[k], row[k]);
    rep.rows.push_back(row);
  }
  return rep;
}

inline IdentityReport verify_identities_2d(const Mat2& u, int trials, double tol = kIdentityTol,
                                           std::uint64_t seed = 1, const GridSpec& g = {}) {
  auto rep = measure_identities_2d(u, trials, seed, g);
  detail::throw_if_exceeded(rep, tol, "");
  return rep;
}

// ---------------------------------------------------------------------------
// Frames

/// Where a frame label sits in the pole frame: Hermite level `level` in
/// component `component` (0 or 1).
struct PoleSlot {
  int component = 0;
  int level = 0;
};

/// Split: [-K, K]. Interleaved: [0, 2K + 1], so both towers reach level K.
inline std::vector<int> frame_labels(int K, Ordering ordering) {
  std::vector<int> labels;
  if (ordering == Ordering::Split)
    for (int k = -K; k <= K; ++k) labels.push_back(k);
  else
    for (int k = 0; k <= 2 * K + 1; ++k) labels.push_back(k);
  return labels;
}

/**
 * Split at the north pole P: k >= 0 -> level k in component 1, k < 0 ->
 * level -k-1 in component 2; at the south pole -P the components swap.
 * Interleaved at either pole: 2n -> level n in component 1, 2n+1 -> level n
 * in component 2.
 */
inline PoleSlot pole_slot(Hemisphere hemi, Ordering ordering, int k) {
  if (ordering == Ordering::Interleaved) return {k % 2, k / 2};
  const int creating = hemi == Hemisphere::Plus ? 0 : 1;
  return k >= 0 ? PoleSlot{creating, k} : PoleSlot{1 - creating, -k - 1};
}

/// Level signed by the pole matrix's eigenvalue on the slot's component:
/// H phi = (2 level_signed U + E) phi.
inline int signed_level(Hemisphere hemi, const PoleSlot& slot) {
  const int sign_on_first = hemi == Hemisphere::Plus ? 1 : -1;
  return slot.level * (slot.component == 0 ? sign_on_first : -sign_on_first);
}

struct OscFrame {
  Mat2 u;
  Hemisphere hemisphere = Hemisphere::Plus;
  int K = 0;
  Ordering ordering = Ordering::Split;
  std::vector<int> labels;
  std::vector<int> signed_levels;
  std::vector<GridField2> fields;
  double gram_error = 0.0;
  double energy_residual = 0.0;    ///< max ||H phi - (2|l|+1) phi||
  double relation_residual = 0.0;  ///< max ||H phi - (2 l U + E) phi||
};

inline constexpr double kFrameResidualTol = 1e-3;

/// `tower` is the a = 1 Hermite tower with at least K + 1 levels.
inline OscFrame frame(const Mat2& u, Hemisphere hemi, int K, Ordering ordering,
                      const std::vector<GridField1>& tower) {
  if (K < 0 || static_cast<int>(tower.size()) < K + 1)
    throw Error(ErrorCode::InvalidInput, "tower too short for the requested cutoff");
  const Mat2 phi = intertwiner(u, hemi);
  const GridSpec& g = tower.front().grid;
  const double h = g.step();

  OscFrame fr;
  fr.u = u;
  fr.hemisphere = hemi;
  fr.K = K;
  fr.ordering = ordering;
  fr.labels = frame_labels(K, ordering);
  for (int k : fr.labels) {
    const auto slot = pole_slot(hemi, ordering, k);
    Eigen::MatrixX2cd pole = Eigen::MatrixX2cd::Zero(g.n_points, 2);
    pole.col(slot.component) = tower[static_cast<std::size_t>(slot.level)].values;
    GridField2 f{g, apply_matrix(phi, pole)};
    f.values /= norm(f);
    const int l = signed_level(hemi, slot);
    const auto hf = hamiltonian_2d(f).values;
    const double energy = 2.0 * std::abs(l) + 1.0;
    fr.energy_residual =
        std::max(fr.energy_residual, l2_norm(Eigen::MatrixX2cd(hf - energy * f.values), h));
    const Mat2 rel = 2.0 * l * u + Mat2::Identity();
    fr.relation_residual = std::max(
        fr.relation_residual, l2_norm(Eigen::MatrixX2cd(hf - apply_matrix(rel, f.values)), h));
    fr.signed_levels.push_back(l);
    fr.fields.push_back(std::move(f));
  }
  for (std::size_t a = 0; a < fr.fields.size(); ++a)
    for (std::size_t b = 0; b < fr.fields.size(); ++b)
      fr.gram_error = std::max(
          fr.gram_error, std::abs(inner(fr.fields[a], fr.fields[b]) - (a == b ? 1.0 : 0.0)));

  if (fr.gram_error > kGramTol)
    throw Error(ErrorCode::ToleranceExceeded, "frame Gram error " + std::to_string(fr.gram_error));
  if (fr.energy_residual > kFrameResidualTol || fr.relation_residual > kFrameResidualTol)
    throw Error(ErrorCode::ToleranceExceeded,
                "frame eigen-relation residual " +
                    std::to_string(std::max(fr.energy_residual, fr.relation_residual)));
  return fr;
}

inline OscFrame frame(const Mat2& u, Hemisphere hemi, int K, Ordering ordering,
                      const GridSpec& g = {}) {
  return frame(u, hemi, K, ordering, hermite_tower(1.0, K, g));
}

// ---------------------------------------------------------------------------
// Equator transition

struct OverlapResult {
  Eigen::MatrixXcd matrix;   ///< T(z)_{kl} = <lower frame_k, upper frame_l>
  std::vector<int> labels;
  std::vector<int> pairing;  ///< row paired with each column
  double unitarity_defect = 0.0;
  double off_pattern = 0.0;  ///< largest entry outside the pairing
};

inline constexpr double kOverlapTol = 1e-6;

inline OverlapResult equator_overlap(std::complex<double> z, int K, Ordering ordering,
                                     const std::vector<GridField1>& tower) {
  if (!on_unit_circle(z, 1e-12)) throw Error(ErrorCode::InvalidInput, "z must be unimodular");
  const Mat2 u = u_point(z, Hemisphere::Plus);
  const auto upper = frame(u, Hemisphere::Plus, K, ordering, tower);
  const auto lower = frame(u_point(z, Hemisphere::Minus), Hemisphere::Minus, K, ordering, tower);
  const auto n = static_cast<Eigen::Index>(upper.fields.size());

  OverlapResult res;
  res.labels = upper.labels;
  res.matrix.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k)
    for (Eigen::Index l = 0; l < n; ++l)
      res.matrix(k, l) = inner(lower.fields[static_cast<std::size_t>(k)],
                               upper.fields[static_cast<std::size_t>(l)]);

  std::vector<bool> used(static_cast<std::size_t>(n), false);
  bool permutation = true;
  for (Eigen::Index l = 0; l < n; ++l) {
    Eigen::Index row = 0;
    res.matrix.col(l).cwiseAbs().maxCoeff(&row);
    permutation = permutation && !used[static_cast<std::size_t>(row)];
    used[static_cast<std::size_t>(row)] = true;
    res.pairing.push_back(static_cast<int>(row));
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != row) res.off_pattern = std::max(res.off_pattern, std::abs(res.matrix(k, l)));
  }
  res.unitarity_defect =
      (res.matrix.adjoint() * res.matrix - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();

  if (!permutation || res.off_pattern > kOverlapTol || res.unitarity_defect > kOverlapTol)
    throw Error(ErrorCode::ToleranceExceeded,
                "equator overlap is not a unitary monomial matrix (off-pattern " +
                    std::to_string(res.off_pattern) + ", defect " +
                    std::to_string(res.unitarity_defect) + ")");
  return res;
}

inline OverlapResult equator_overlap(std::complex<double> z, int K,
                                     Ordering ordering = Ordering::Split, const GridSpec& g = {}) {
  return equator_overlap(z, K, ordering, hermite_tower(1.0, K, g));
}

struct WindingResult {
  std::vector<int> labels;
  std::vector<int> windings;       ///< per column label of the upper frame
  std::vector<int> pairing;
  double max_residual = 0.0;       ///< distance of the raw winding from an integer
  double max_step = 0.0;           ///< largest phase increment between samples
  double max_off_pattern = 0.0;
  double max_unitarity_defect = 0.0;
};

inline constexpr double kWindingResidualTol = 0.1;

/// Winding of each paired entry of T(z) as z runs once counterclockwise
/// around the equator, sampled at `samples` points.
inline WindingResult winding_per_index(int K, int samples, Ordering ordering,
                                       const std::vector<GridField1>& tower) {
  if (samples < 64) throw Error(ErrorCode::InvalidInput, "need at least 64 equator samples");
  WindingResult res;
  std::vector<std::complex<double>> first, prev;
  std::vector<double> total;
  for (int j = 0; j <= samples; ++j) {
    const auto z = std::polar(1.0, 2.0 * std::numbers::pi * (j % samples) / samples);
    const auto ov = equator_overlap(z, K, ordering, tower);
    res.max_off_pattern = std::max(res.max_off_pattern, ov.off_pattern);
    res.max_unitarity_defect = std::max(res.max_unitarity_defect, ov.unitarity_defect);
    if (j == 0) {
      res.labels = ov.labels;
      res.pairing = ov.pairing;
      total.assign(ov.pairing.size(), 0.0);
    } else if (ov.pairing != res.pairing) {
      throw Error(ErrorCode::WindingUnstable, "pairing pattern changes along the equator");
    }
    std::vector<std::complex<double>> cur;
    for (std::size_t l = 0; l < res.pairing.size(); ++l)
      cur.push_back(ov.matrix(res.pairing[l], static_cast<Eigen::Index>(l)));
    if (j > 0) {
      for (std::size_t l = 0; l < cur.size(); ++l) {
        const double step = std::arg(cur[l] / prev[l]);
        res.max_step = std::max(res.max_step, std::abs(step));
        total[l] += step;
      }
    }
    prev = std::move(cur);
  }
  if (res.max_step > std::numbers::pi / 2)
    throw Error(ErrorCode::WindingUnstable, "phase steps too large; increase the sample count");
  for (double t : total) {
    const double raw = t / (2.0 * std::numbers::pi);
    const double snapped = std::round(raw);
    res.max_residual = std::max(res.max_residual, std::abs(raw - snapped));
    res.windings.push_back(static_cast<int>(snapped));
  }
  if (res.max_residual > kWindingResidualTol)
    throw Error(ErrorCode::WindingUnstable,
                "winding residual " + std::to_string(res.max_residual));
  return res;
}

inline WindingResult winding_per_index(int K, int samples, Ordering ordering = Ordering::Split,
                                       const GridSpec& g = {}) {
  return winding_per_index(K, samples, ordering, hermite_tower(1.0, K, g));
}

struct OscBundle {
  EndCocycle cocycle;
  WindingResult winding;
  IntSeq exponents;
};

/// Extends the measured Split window on [-K, K] by its end values.
inline IntSeq extend_window(const WindingResult& w) {
  std::vector<std::int64_t> core(w.windings.begin(), w.windings.end());
  return canonicalize(IntSeq({core.front()}, core, w.labels.front(), {core.back()}));
}

inline OscBundle oscillator_bundle(int K, int samples, const std::vector<GridField1>& tower) {
  if (K < 4) throw Error(ErrorCode::InvalidInput, "cutoff K must be at least 4");
  auto w = winding_per_index(K, samples, Ordering::Split, tower);
  auto exps = extend_window(w);
  return {EndCocycle::sphere(MonomialLoop{0, exps, 1.0}), std::move(w), exps};
}

inline OscBundle oscillator_bundle(int K, int samples = 64, const GridSpec& g = {}) {
  return oscillator_bundle(K, samples, hermite_tower(1.0, K, g));
}

struct InterleavedResult {
  WindingResult winding;
  IntSeq extension;
  CoinvClass cls;
};

/// Interleaved windings on [0, 2K + 1], extended two-sidedly with period 2.
inline InterleavedResult interleaved_class(int K, int samples,
                                           const std::vector<GridField1>& tower) {
  if (K < 4) throw Error(ErrorCode::InvalidInput, "cutoff K must be at least 4");
  auto w = winding_per_index(K, samples, Ordering::Interleaved, tower);
  for (std::size_t k = 2; k < w.windings.size(); ++k)
    if (w.windings[k] != w.windings[k - 2])
      throw Error(ErrorCode::WindingUnstable, "interleaved windings are not 2-periodic");
  auto ext = IntSeq::periodic({w.windings[0], w.windings[1]}, 0);
  const auto cls = coinv_class(ext);
  return {std::move(w), std::move(ext), cls};
}

inline InterleavedResult interleaved_class(int K, int samples = 64, const GridSpec& g = {}) {
  return interleaved_class(K, samples, hermite_tower(1.0, K, g));
}

}  // namespace hbe::osc
