// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Each criterion recomputes its evidence and cross-checks it with the
// independent oracles in oracles.hpp where one exists.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace hbe;

namespace {

/// Collects failed checks with a short reason.
class Ledger {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok && failures_.empty()) first_ = what;
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  const std::string& first() const { return first_; }
  std::size_t count() const { return failures_.size(); }

 private:
  std::vector<std::string> failures_;
  std::string first_;
};

const std::vector<GridField1>& tower() {
  static const auto t = osc::hermite_tower(1.0, 12, GridSpec{});
  return t;
}

const Functional kBasisMinus{Rational(1), Rational(0)};
const Functional kBasisPlus{Rational(0), Rational(1)};

void index_generator(Ledger& L) {
  L.check(fredholm_index(shift_op(1)) == 1, "ind S = 1");
  for (Index k = -8; k <= 8; ++k) {
    L.check(fredholm_index(shift_op(k)) == k, "ind S^k = k");
    L.check(fredholm_index(power(shift_op(1), k)) == k, "ind of composed powers");
  }
  std::mt19937_64 rng(101);
  for (int t = 0; t < 200; ++t) {
    const auto u = oracle::random_unitary(rng);
    L.check(fredholm_index(u) == oracle::kernel_index(u), "corner sum vs kernel ranks");
  }
}

void coinvariant_calculus(Ledger& L) {
  std::mt19937_64 rng(102);
  for (int t = 0; t < 100; ++t) {
    std::uniform_int_distribution<int> val(-3, 3), len(0, 6), off(-5, 5);
    std::vector<std::int64_t> core(static_cast<std::size_t>(len(rng)));
    for (auto& x : core) x = val(rng);
    const IntSeq a({0}, core, off(rng), {0});
    L.check(coinv_class(a).is_zero(), "finite support has class (0,0)");
    const auto b = certificate_trivial(a);
    bool witnessed = true;
    for (Index i = -60; i <= 60; ++i) witnessed = witnessed && b(i) - b(i + 1) == a(i);
    L.check(witnessed, "finite-support witness satisfies b - Sb = a");
  }
  for (std::int64_t n = 1; n <= 12; ++n) {
    const Rational q(1, n);
    L.check(coinv_class(iota_rep(q)) == CoinvClass{q, q}, "iota_rep(1/n) class");
  }
  const auto alt = IntSeq::periodic({1, -1}, 0);
  L.check(is_trivial(alt), "alternating is trivial");
  const auto w = certificate_trivial(alt);
  L.check(observationally_equal(delta(w), alt), "alternating witness");
  const auto gap = canonicalize(w - IntSeq::periodic({1, 0}, 0));
  L.check(gap.left().size() == 1 && gap.left() == gap.right() && gap.core().empty(),
          "witness is (..., 1, 0, 1, 0, ...) up to a constant");
  L.check(!is_trivial(IntSeq::two_tails(1, -1, 0)), "half-half is nontrivial");
  L.check(oracle::brute_force_is_trivial(alt, 12, 20), "oracle sees alternating as trivial");

  std::size_t disagreements = 0, total = 0;
  oracle::for_each_small_seq([&](const IntSeq& a) {
    ++total;
    if (is_trivial(a) != oracle::brute_force_is_trivial(a, 12, 40)) ++disagreements;
  });
  L.check(total == 155u * 31u * 155u, "corpus size");
  L.check(disagreements == 0, "zero disagreements on the small corpus");
}

void completed_sums(Ledger& L) {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 50; ++t) {
    const auto b = oracle::random_int_seq(rng);
    const auto e = completed_sum_sphere(b);
    L.check(cocycle_check(e), "completed sum is a cocycle");
    for (const auto& f : {kBasisMinus, kBasisPlus}) {
      const auto a = alpha1(e, f);
      L.check(a == pair(f, coinv_class(b)), "alpha1 = pair(f, class b)");
      L.check(a == oracle::alpha1_winding(e.equator(), f), "alpha1 vs diagonal windings");
    }
    std::uniform_int_distribution<int> val(-4, 4), off(-9, 9);
    const IntSeq bump({0}, {val(rng), val(rng), val(rng)}, off(rng), {0});
    const auto f = oracle::random_functional(rng);
    L.check(alpha1(completed_sum_sphere(b + bump), f) == alpha1(e, f), "finite perturbation");
    L.check(alpha1(completed_sum_sphere(bump), f) == Rational(0), "finite support vanishes");
  }
  L.check(has_code([] { completed_sum_sphere(LinearExponents{1, 0}); }, ErrorCode::UnboundedExponents),
          "Linear(1,0) rejected");
}

void pushforward(Ledger& L) {
  const auto p = pushforward_universal_cover();
  L.check(beta1(p) == 1, "beta1 of the pushforward");
  L.check(oracle::kernel_index(circle_jump(p)) == 1, "pushforward jump vs kernel ranks");
  for (Index d = -4; d <= 4; ++d) {
    const auto q = pullback_circle(p, d);
    L.check(cocycle_check(q), "pullback is a cocycle");
    L.check(beta1(q) == d * beta1(p), "pullback scales beta1");
    L.check(oracle::kernel_index(circle_jump(q)) == d, "pullback jump vs kernel ranks");
  }
  L.check(!deck_finite_propagation_check(Negation{}), "Negation rejected");
  L.check(deck_finite_propagation_check(Translation{5}), "translations accepted");
  const auto transfer = transfer_structure();
  const auto& tr = transfer.circle_transitions();
  L.check(is_permutation_only(tr.on_a) && is_permutation_only(tr.on_b), "transfer is permutation-only");
}

void fourier_bundle(Ledger& L) {
  using namespace hbe::fourier;
  double worst = 0.0;
  int in_b = 0;
  for (int k = 0; k < 512; ++k) {
    const double u = (k + 0.5) / 512;
    for (double t : {0.25 * u, 0.5 + 0.25 * u}) {
      const Complex w = circle_point(t);
      const double diff = branch(Chart::Two, w) - branch(Chart::One, w);
      worst = std::max(worst, std::abs(diff - std::round(diff)));
      in_b += overlap_component(w) == OverlapComponent::B;
    }
  }
  L.check(worst < 1e-12, "branch differences integral at 1024 samples");
  L.check(in_b == 512, "half of the samples in component B");

  constexpr int N = 64, M = 1024;
  for (int j = 0; j < 16; ++j) {
    const double u = (j / 2 + 0.5) / 8.0;
    const Complex w = circle_point(j % 2 == 0 ? 0.5 + 0.25 * u : 0.25 * u);
    const auto num = transition_numeric(w, N, M);
    const auto exact = transition_exact(w);
    double dev = 0.0;
    for (int m = -N; m <= N; ++m)
      for (int n = -N; n <= N; ++n) dev = std::max(dev, std::abs(num(m + N, n + N) - exact.entry(m, n)));
    L.check(dev < 1e-10, "quadrature transition within 1e-10");
  }
  const auto l1 = l1_bundle();
  const auto& tr = l1.circle_transitions();
  const bool a_trivial = approx_equal(tr.on_a, identity_op(), 0.0);
  const bool b_shift = approx_equal(tr.on_b, shift_op(1), 0.0) || approx_equal(tr.on_b, shift_op(-1), 0.0);
  L.check(a_trivial && b_shift, "one component trivial, the other a unit shift");
  L.check(std::abs(beta1(l1)) == 1, "|beta1| = 1");
  L.check(oracle::kernel_index(circle_jump(l1)) == beta1(l1), "Fourier jump vs kernel ranks");

  const auto torus = l2_torus_bundle();
  L.check(cocycle_check(torus), "torus cocycle check");
  L.check(has_code([&] { beta1(torus); }, ErrorCode::UnsupportedInvariant), "torus beta1 refused");
  L.check(has_code([&] { alpha1(torus, kBasisPlus); }, ErrorCode::UnsupportedInvariant),
          "torus alpha1 refused");
  L.check(has_code([&] { hat_beta1(torus); }, ErrorCode::UnsupportedInvariant), "torus hat refused");
}

void oscillator_1d(Ledger& L) {
  for (double a : {0.5, 1.0, 2.0}) {
    const auto rep = osc::measure_identities_1d(a, 20, 201);
    for (double r : rep.max_residual) L.check(r <= 1e-5, "1-D identity residual");
  }
  const auto rep = osc::tower_report(tower(), 1.0);
  for (std::size_t k = 0; k < rep.eigen_residuals.size(); ++k)
    L.check(rep.eigen_residuals[k] <= 1e-4 * (1.0 + static_cast<double>(k)), "tower eigen-residual");
  L.check(rep.gram_error <= 1e-6, "tower Gram");
  // Closed-form cross-check of the tower.
  const GridSpec g{};
  for (int k = 0; k <= 12; ++k) {
    const double c = std::pow(std::numbers::pi, -0.25) / std::sqrt(std::ldexp(std::tgamma(k + 1.0), k));
    double worst = 0.0;
    for (int i = 0; i < g.n_points; i += 11) {
      const double x = g.x(i);
      const double exact = c * std::hermite(static_cast<unsigned>(k), x) * std::exp(-0.5 * x * x);
      worst = std::max(worst, std::abs(tower()[static_cast<std::size_t>(k)].values(i) - exact));
    }
    L.check(worst < 1e-9, "tower vs closed-form Hermite functions");
  }
}

void oscillator_2d(Ledger& L) {
  std::mt19937_64 rng(301);
  for (int t = 0; t < 20; ++t) {
    const auto rep = osc::measure_identities_2d(osc::random_sphere_point(rng), 1, 400 + t);
    for (double r : rep.max_residual) L.check(r <= 1e-5, "2-D identity residual");
  }
  const osc::Mat2 P = osc::pole_p();
  auto dev = [](const osc::Mat2& m) { return m.cwiseAbs().maxCoeff(); };
  for (int t = 0; t < 100; ++t) {
    const osc::Mat2 u = osc::random_sphere_point(rng);
    const bool north = u(0, 0).real() >= 0.0;
    const auto hemi = north ? osc::Hemisphere::Plus : osc::Hemisphere::Minus;
    const osc::Mat2 phi = osc::intertwiner(u, hemi);
    const osc::Mat2 pole = north ? P : osc::Mat2(-P);
    L.check(dev(phi * phi - osc::Mat2::Identity()) <= 1e-12, "Phi involutive");
    L.check(dev(phi * phi.adjoint() - osc::Mat2::Identity()) <= 1e-12, "Phi unitary");
    L.check(dev(phi * u - pole * phi) <= 1e-12, "Phi intertwines");
  }
  for (int t = 0; t < 6; ++t) {
    const osc::Mat2 u = osc::random_sphere_point(rng);
    const auto hemi = u(0, 0).real() >= 0.0 ? osc::Hemisphere::Plus : osc::Hemisphere::Minus;
    for (int K : {4, 8}) {
      const auto fr = osc::frame(u, hemi, K, osc::Ordering::Split, tower());
      L.check(fr.gram_error <= 1e-6, "frame Gram");
      L.check(fr.relation_residual <= 1e-3 && fr.energy_residual <= 1e-3, "frame creation residuals");
    }
  }
}

void oscillator_bundle_class(Ledger& L) {
  for (int j = 0; j < 16; ++j) {
    const auto ov = osc::equator_overlap(std::polar(1.0, 2.0 * std::numbers::pi * j / 16), 6,
                                         osc::Ordering::Split, tower());
    L.check(ov.unitarity_defect <= 1e-6, "equator overlap unitary");
    L.check(ov.off_pattern <= 1e-6, "equator overlap off-pattern");
  }
  const auto b = osc::oscillator_bundle(6, 64, tower());
  L.check(b.winding.max_residual <= 0.1, "phase-tracking residual");
  bool pattern = true;
  for (std::size_t i = 0; i < b.winding.labels.size(); ++i)
    pattern = pattern && b.winding.windings[i] == IntSeq::two_tails(1, -1, 0)(b.winding.labels[i]);
  L.check(pattern && b.winding.labels.front() == -6 && b.winding.labels.back() == 6,
          "half-half winding pattern on [-6, 6]");
  const auto a = alpha1(b.cocycle, Functional::half_half_dual());
  L.check(a == Rational(1) || a == Rational(-1), "alpha1 = +-1");
  L.check(oracle::alpha1_winding(b.cocycle.equator(), Functional::half_half_dual()) == a,
          "oscillator alpha1 vs diagonal windings");
  const auto il = osc::interleaved_class(6, 64, tower());
  L.check(il.cls.is_zero(), "interleaved class (0,0)");
  L.check(observationally_equal(delta(certificate_trivial(il.extension)), il.extension),
          "interleaved witness");
}

void coherence(Ledger& L) {
  std::mt19937_64 rng(401);
  std::vector<EndCocycle> built{trivial_circle(), trivial_sphere(), pushforward_universal_cover(),
                                transfer_structure(), fourier::l1_bundle(), fourier::l2_torus_bundle(),
                                completed_sum_sphere(LinearExponents{0, 2}),
                                osc::oscillator_bundle(4, 64, tower()).cocycle};
  for (Index d = -4; d <= 4; ++d) built.push_back(pullback_circle(pushforward_universal_cover(), d));
  for (int t = 0; t < 100; ++t) built.push_back(completed_sum_sphere(oracle::random_int_seq(rng)));
  for (const auto& c : built) L.check(cocycle_check(c), "constructor output passes cocycle_check");

  for (int t = 0; t < 300; ++t) {
    const auto b = oracle::random_int_seq(rng, 2, 1, 2, 2);
    const auto e = completed_sum_sphere(b);
    if (oracle::is_periodic_seq(b)) {
      L.check(hat_alpha1(e) == cesaro(b), "hat alpha1 defined on periodic ends");
    } else {
      L.check(has_code([&] { hat_alpha1(e); }, ErrorCode::NotPeriodicEnd),
              "hat alpha1 refused on non-periodic ends");
    }
  }
  L.check(hat_beta1(pushforward_universal_cover()) == 1, "hat beta1 on the pushforward");
  L.check(has_code([] { hat_beta1(EndCocycle::circle(identity_op(),
                                                     diagonal_op(CSeq::two_tails(1.0, -1.0, 0)))); },
                   ErrorCode::NotPeriodicEnd),
          "hat beta1 refused on a non-periodic end");

  for (int t = 0; t < 300; ++t) {
    const auto x = oracle::random_int_seq(rng), y = oracle::random_int_seq(rng);
    const auto f = oracle::random_functional(rng), g = oracle::random_functional(rng);
    const auto cx = coinv_class(x), cy = coinv_class(y);
    L.check(pair(f, cx + cy) == pair(f, cx) + pair(f, cy), "pair additive in the class");
    L.check(pair(f + g, cx) == pair(f, cx) + pair(g, cx), "pair additive in the functional");
    const auto ex = completed_sum_sphere(x), ey = completed_sum_sphere(y);
    L.check(alpha1(completed_sum_sphere(x + y), f) == alpha1(ex, f) + alpha1(ey, f),
            "alpha1 additive under direct sum");
    L.check(alpha1(EndCocycle::sphere(loop_product(ex.equator(), ey.equator())), f) ==
                alpha1(ex, f) + alpha1(ey, f),
            "alpha1 additive under tensor of loops");
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Ledger&)>>> criteria{
      {"index generator and kernel-rank oracle", index_generator},
      {"coinvariant calculus and small-corpus oracle", coinvariant_calculus},
      {"completed sums", completed_sums},
      {"pushforward, pullback, deck maps, transfer", pushforward},
      {"Fourier bundle and torus cocycle", fourier_bundle},
      {"1-D oscillator identities and tower", oscillator_1d},
      {"2-D oscillator algebra and frames", oscillator_2d},
      {"oscillator bundle class", oscillator_bundle_class},
      {"cross-module coherence", coherence},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Ledger L;
    try {
      criteria[i].second(L);
    } catch (const std::exception& e) {
      L.check(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (L.ok() ? "PASS" : "FAIL") << "  " << (i + 1) << "  " << criteria[i].first;
    line.precision(2);
    line << std::fixed << "  (" << secs << " s)";
    if (!L.ok()) line << "  " << L.count() << " failed checks, first: " << L.first();
    std::cout << line.str() << "\n";
    failed += !L.ok();
  }
  return failed == 0 ? 0 : 1;
}
