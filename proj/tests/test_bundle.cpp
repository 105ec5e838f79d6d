#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "test_util.hpp"

using namespace hbe;

namespace {

IntSeq finite_support(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> val(-3, 3), len(0, 5), off(-6, 6);
  std::vector<std::int64_t> core(static_cast<std::size_t>(len(rng)));
  for (auto& x : core) x = val(rng);
  return IntSeq({0}, core, off(rng), {0});
}

const Functional kBasisMinus{Rational(1), Rational(0)};
const Functional kBasisPlus{Rational(0), Rational(1)};

}  // namespace

TEST_CASE("constructors produce valid cocycles", "[bundle]") {
  CHECK(cocycle_check(trivial_circle()));
  CHECK(cocycle_check(trivial_sphere()));
  CHECK(cocycle_check(pushforward_universal_cover()));
  CHECK(cocycle_check(transfer_structure()));
  for (Index d = -4; d <= 4; ++d) CHECK(cocycle_check(pullback_circle(pushforward_universal_cover(), d)));
  CHECK(cocycle_check(completed_sum_sphere(LinearExponents{0, 3})));

  std::mt19937_64 rng(31);
  for (int t = 0; t < 50; ++t) REQUIRE(cocycle_check(completed_sum_sphere(oracle::random_int_seq(rng))));
  for (int t = 0; t < 20; ++t) {
    const auto u = oracle::random_unitary(rng);
    const auto v = oracle::random_unitary(rng);
    REQUIRE(cocycle_check(EndCocycle::circle(u, v)));
  }
}

TEST_CASE("cocycle_check rejects non-unitary transitions", "[bundle]") {
  const auto twice = diagonal_op(CSeq::constant(2.0));
  CHECK_FALSE(cocycle_check(EndCocycle::circle(identity_op(), twice)));
  const auto bump = diagonal_op(CSeq({1.0}, {1.0, 0.5}, 40, {1.0}));
  CHECK_FALSE(cocycle_check(EndCocycle::circle(bump, identity_op())));
  CHECK(has_code([&] { alpha1(EndCocycle::circle(identity_op(), twice), kBasisPlus); },
                 ErrorCode::WrongBase));
  CHECK(has_code([&] { beta1(EndCocycle::circle(identity_op(), twice)); },
                 ErrorCode::NotUnitary));
  CHECK(has_code([] { cocycle_check(trivial_sphere(), 0); }, ErrorCode::InvalidInput));
}

TEST_CASE("alpha1 of completed sums matches the winding oracle", "[bundle][oracle]") {
  std::mt19937_64 rng(32);
  for (int t = 0; t < 50; ++t) {
    const auto b = oracle::random_int_seq(rng);
    const auto e = completed_sum_sphere(b);
    for (const auto& f : {kBasisMinus, kBasisPlus}) {
      REQUIRE(alpha1(e, f) == pair(f, coinv_class(b)));
      REQUIRE(alpha1(e, f) == oracle::alpha1_winding(e.equator(), f));
    }
  }
  const auto hh = completed_sum_sphere(IntSeq::two_tails(1, -1, 0));
  CHECK(alpha1(hh, Functional::half_half_dual()) == Rational(1));
  CHECK(alpha1(hh, Functional::constant_dual()) == Rational(0));
}

TEST_CASE("alpha1 ignores finite perturbations and finite support", "[bundle][property]") {
  std::mt19937_64 rng(33);
  for (int t = 0; t < 100; ++t) {
    const auto b = oracle::random_int_seq(rng);
    const auto c = finite_support(rng);
    const auto f = oracle::random_functional(rng);
    REQUIRE(alpha1(completed_sum_sphere(b + c), f) == alpha1(completed_sum_sphere(b), f));
    REQUIRE(alpha1(completed_sum_sphere(c), f) == Rational(0));
    REQUIRE(oracle::alpha1_winding(completed_sum_sphere(c).equator(), f) == Rational(0));
  }
}

TEST_CASE("unbounded exponents are rejected", "[bundle]") {
  CHECK(has_code([] { completed_sum_sphere(LinearExponents{1, 0}); }, ErrorCode::UnboundedExponents));
  CHECK(has_code([] { completed_sum_sphere(LinearExponents{-2, 5}); }, ErrorCode::UnboundedExponents));
  CHECK_FALSE(equicontinuous_family_check(LinearExponents{1, 0}));
  CHECK(equicontinuous_family_check(LinearExponents{0, 4}));
  CHECK(alpha1(completed_sum_sphere(LinearExponents{0, 4}), Functional::constant_dual()) ==
        Rational(4));
}

TEST_CASE("alpha1 is additive in the exponents and in the functional", "[bundle][property]") {
  std::mt19937_64 rng(34);
  for (int t = 0; t < 200; ++t) {
    const auto a = oracle::random_int_seq(rng);
    const auto b = oracle::random_int_seq(rng);
    const auto f = oracle::random_functional(rng);
    const auto g = oracle::random_functional(rng);
    const auto ea = completed_sum_sphere(a), eb = completed_sum_sphere(b);
    REQUIRE(alpha1(completed_sum_sphere(a + b), f) == alpha1(ea, f) + alpha1(eb, f));
    REQUIRE(alpha1(ea, f + g) == alpha1(ea, f) + alpha1(ea, g));
    // Tensoring the equator loops adds exponents.
    const auto prod = EndCocycle::sphere(loop_product(ea.equator(), eb.equator()));
    REQUIRE(alpha1(prod, f) == alpha1(ea, f) + alpha1(eb, f));
  }
}

TEST_CASE("pushforward along the universal cover", "[bundle]") {
  const auto p = pushforward_universal_cover();
  CHECK(beta1(p) == 1);
  CHECK(oracle::kernel_index(circle_jump(p)) == 1);
  CHECK(beta1(trivial_circle()) == 0);
  CHECK(is_permutation_only(transfer_structure().circle_transitions().on_a));
  CHECK(is_permutation_only(transfer_structure().circle_transitions().on_b));
  CHECK_FALSE(is_permutation_only(diagonal_op(CSeq::constant(Complex(0, 1)))));
}

TEST_CASE("pullback multiplies beta1 by the degree", "[bundle]") {
  const auto p = pushforward_universal_cover();
  for (Index d = -4; d <= 4; ++d) {
    const auto q = pullback_circle(p, d);
    CHECK(beta1(q) == d * beta1(p));
    CHECK(oracle::kernel_index(circle_jump(q)) == d);
  }
  std::mt19937_64 rng(35);
  for (int t = 0; t < 20; ++t) {
    const auto c = EndCocycle::circle(oracle::random_unitary(rng, 2), oracle::random_unitary(rng, 2));
    const auto b = beta1(c);
    for (Index d = -3; d <= 3; ++d) REQUIRE(beta1(pullback_circle(c, d)) == d * b);
  }
}

TEST_CASE("deck maps of finite propagation", "[bundle]") {
  CHECK(deck_finite_propagation_check(Translation{3}));
  CHECK(deck_finite_propagation_check(Translation{-7}));
  CHECK_FALSE(deck_finite_propagation_check(Negation{}));
  CHECK(deck_displacement(Negation{}, 10) == 20);
}

TEST_CASE("hat invariants exist exactly on periodic ends", "[bundle]") {
  CHECK(hat_alpha1(completed_sum_sphere(IntSeq::periodic({1, 0, 0}, 0))) == Rational(1, 3));
  CHECK(has_code([] { hat_alpha1(completed_sum_sphere(IntSeq::two_tails(1, -1, 0))); },
                 ErrorCode::NotPeriodicEnd));
  CHECK(has_code([] { hat_alpha1(completed_sum_sphere(IntSeq::impulse(0))); },
                 ErrorCode::NotPeriodicEnd));
  CHECK(hat_beta1(pushforward_universal_cover()) == 1);
  const auto step_phase = diagonal_op(CSeq::two_tails(1.0, Complex(0, 1), 0));
  CHECK(has_code([&] { hat_beta1(EndCocycle::circle(identity_op(), step_phase)); },
                 ErrorCode::NotPeriodicEnd));

  std::mt19937_64 rng(36);
  int periodic = 0;
  for (int t = 0; t < 300; ++t) {
    const auto b = oracle::random_int_seq(rng, 2, 1, 2, 2);
    const auto e = completed_sum_sphere(b);
    const bool expect = oracle::is_periodic_seq(b);
    periodic += expect;
    REQUIRE(periodic_end_check(e) == expect);
    if (expect) {
      REQUIRE(hat_alpha1(e) == cesaro(b));
    } else {
      REQUIRE(has_code([&] { hat_alpha1(e); }, ErrorCode::NotPeriodicEnd));
    }
  }
  CHECK(periodic > 10);
}

TEST_CASE("base mismatches are reported", "[bundle]") {
  CHECK(has_code([] { beta1(trivial_sphere()); }, ErrorCode::WrongBase));
  CHECK(has_code([] { alpha1(trivial_circle(), kBasisPlus); }, ErrorCode::WrongBase));
  CHECK(has_code([] { hat_beta1(trivial_sphere()); }, ErrorCode::WrongBase));
}
