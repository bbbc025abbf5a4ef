#include <doctest.h>

#include "hofa/fourier_ops.hpp"
#include "hofa/gowers.hpp"
#include "support.hpp"

using namespace hofa;
using namespace testsupport;

TEST_CASE("soft threshold q_eps") {
  CHECK(std::abs(q_eps(cplx(0.5, 0), 0.2) - cplx(0.3, 0)) < 1e-15);
  CHECK(std::abs(q_eps(cplx(0, 0.1), 0.2)) == 0.0);
  CHECK(std::abs(q_eps(cplx(0, 0), 0.2)) == 0.0);
  cplx z(3, 4);
  CHECK(std::abs(q_eps(z, 1.0) - z * 0.8) < 1e-14);
  CHECK(std::abs(q_eps_prime(z, 1.0)) == doctest::Approx(1.0));
  CHECK(std::abs(q_eps_prime(cplx(0.05, 0), 1.0)) == doctest::Approx(0.05));
  // 1-Lipschitz
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    cplx a = gauss(rng), b = gauss(rng);
    CHECK(std::abs(q_eps(a, 0.4) - q_eps(b, 0.4)) <= std::abs(a - b) + 1e-14);
  }
  CHECK_THROWS_AS(q_eps(z, 0.0), ValidationError);
  CHECK_THROWS_AS(q_eps(z, -1.0), ValidationError);
}

TEST_CASE("K_eps bounds") {
  std::mt19937_64 rng(22);
  Group g = Group::cyclic(32);
  for (double eps : {0.05, 0.2, 0.5}) {
    GroupFunction f = random_function(g, rng, 0.5);
    GroupFunction k = apply_K_eps(f, eps);
    double f2 = std::pow(l2_norm(f), 2);
    CHECK(l2_norm(k) <= l2_norm(f) + 1e-12);
    CHECK(wiener_norm(k) <= f2 / eps + 1e-12);
    GroupFunction c = fourier_transform(k);
    std::size_t support = 0;
    for (auto z : c.v) support += std::abs(z) > 1e-13;
    CHECK(double(support) <= f2 / (eps * eps) + 1e-9);
    // each coefficient is q_eps of the original one
    GroupFunction cf = fourier_transform(f);
    for (std::size_t i = 0; i < 32; ++i) CHECK(std::abs(c[i] - q_eps(cf[i], eps)) < 1e-13);
  }
}

TEST_CASE("lift is self-adjoint on f (x) conj f and lift_outer matches") {
  std::mt19937_64 rng(23);
  Group g = Group::parse("Z2xZ6");
  GroupFunction f = random_bounded(g, rng);
  for (auto K : {InvariantOperator::denoise(0.1), InvariantOperator::radial(RadialProfile::lipschitz_ramp(0.1)),
                 InvariantOperator::average(), InvariantOperator::cutoff(0.2), InvariantOperator::identity()}) {
    ZMatrix A = lift(K, outer(f, f));
    ZMatrix B = lift_outer(K, f);
    CHECK(max_diff(A, B) < 1e-12);
    CHECK(self_adjoint_defect(A) < 1e-12);
  }
  CHECK(max_diff(lift(InvariantOperator::identity(), outer(f, f)), outer(f, f)) < 1e-14);
}

TEST_CASE("denoising residual closed form vs matrix route") {
  std::mt19937_64 rng(24);
  for (const char* spec : {"Z16", "Z3xZ5"}) {
    Group g = Group::parse(spec);
    GroupFunction f = random_bounded(g, rng);
    for (double eps : {0.02, 0.1, 0.3}) {
      double a = denoising_residual(f, eps);
      double b = denoising_residual_matrix(f, eps);
      double c = l2_norm(lift_outer(InvariantOperator::denoise(eps), f) - outer(f, f));
      CHECK(a == doctest::Approx(b).epsilon(1e-10));
      CHECK(a == doctest::Approx(c).epsilon(1e-10));
    }
  }
}

TEST_CASE("scaling law K_{c eps}(c f) = c K_eps(f)") {
  std::mt19937_64 rng(25);
  Group g = Group::cyclic(20);
  GroupFunction f = random_function(g, rng);
  for (double c : {0.3, 2.5}) CHECK(max_diff(apply_K_eps(cplx(c) * f, c * 0.2), cplx(c) * apply_K_eps(f, 0.2)) < 1e-12);
}

TEST_CASE("dual functions") {
  std::mt19937_64 rng(26);
  for (const char* spec : {"Z9", "Z2xZ4"}) {
    Group g = Group::parse(spec);
    GroupFunction f = random_bounded(g, rng);
    for (int k : {2, 3}) {
      GroupFunction d = dual_function(f, k);
      CHECK(max_diff(d, dual_function_direct(f, k)) < 1e-12);
      // <f, [f]_k> = ||f||_{U^k}^{2^k}
      CHECK(std::abs(inner(f, d) - uk_norm_pow(f, k)) < 1e-12);
    }
    CHECK_THROWS_AS(dual_function(f, 1), ValidationError);
  }
}

TEST_CASE("sharp cutoff, averaging and ramp profile") {
  Group g = Group::cyclic(8);
  GroupFunction f = cplx(0.9) * character_function(g, 1) + cplx(0.1) * character_function(g, 2);
  CHECK(max_diff(sharp_cutoff(f, 0.5), cplx(0.9) * character_function(g, 1)) < 1e-14);
  CHECK(max_diff(sharp_cutoff(f, 0.1), f) < 1e-14);
  GroupFunction a = averaging_operator(f + cplx(2.0) * character_function(g, 0));
  for (auto z : a.v) CHECK(std::abs(z - 2.0) < 1e-14);

  RadialProfile r = RadialProfile::lipschitz_ramp(0.2);
  CHECK(r(0.05) == 0.0);
  CHECK(r(0.15) == doctest::Approx(0.1));
  CHECK(r(0.2) == doctest::Approx(0.2));
  CHECK(r(0.7) == doctest::Approx(0.7));
  RadialProfile s = RadialProfile::relu_shift(0.2);
  CHECK(s(0.1) == 0.0);
  CHECK(s(0.7) == doctest::Approx(0.5));
  CHECK(max_diff(apply_K_r(f, s), apply_K_eps(f, 0.2)) < 1e-14);
}

TEST_CASE("invariant operators commute with shifts and conjugation") {
  std::mt19937_64 rng(27);
  Group g = Group::cyclic(15);
  GroupFunction f = random_bounded(g, rng);
  for (auto K : {InvariantOperator::denoise(0.1), InvariantOperator::radial(RadialProfile::lipschitz_ramp(0.15)),
                 InvariantOperator::average(), InvariantOperator::cutoff(0.2), InvariantOperator::dual(2),
                 InvariantOperator::dual(3)}) {
    CAPTURE(K.name());
    CHECK(max_diff(K(shift(f, 4)), shift(K(f), 4)) < 1e-12);
    CHECK(max_diff(K(conj(f)), conj(K(f))) < 1e-12);
  }
}
