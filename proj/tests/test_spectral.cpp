#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hofa/spectral.hpp"
#include "support.hpp"

using namespace hofa;
using namespace testsupport;

TEST_CASE("eigendecomposition of a prescribed spectrum") {
  std::mt19937_64 rng(41);
  Group g = Group::cyclic(10);
  std::vector<GroupFunction> basis;
  ZMatrix M = with_spectrum(g, {0.9, 0.5, 0.5, -0.2}, rng, &basis);
  EigenDecomposition ed = eigendecompose(M);
  REQUIRE(ed.size() == 10);
  CHECK(ed.values[0] == doctest::Approx(0.9));
  CHECK(ed.values[1] == doctest::Approx(0.5));
  CHECK(ed.values[2] == doctest::Approx(0.5));
  CHECK(ed.values[9] == doctest::Approx(-0.2));
  for (std::size_t i = 0; i + 1 < ed.size(); ++i) CHECK(ed.values[i] >= ed.values[i + 1]);
  for (std::size_t i = 0; i < ed.size(); ++i) {
    GroupFunction v = ed.vector(i);
    CHECK(l2_norm(v) == doctest::Approx(1.0));
    CHECK(pseudo_residual(M, v, ed.values[i]) < 1e-10);
  }
  CHECK(std::abs(std::abs(inner(ed.vector(0), basis[0])) - 1.0) < 1e-10);
  CHECK_THROWS_AS(eigendecompose(random_matrix(g, rng)), ValidationError);
}

TEST_CASE("slices, separation and isolation") {
  std::mt19937_64 rng(42);
  Group g = Group::cyclic(8);
  std::vector<GroupFunction> basis;
  ZMatrix M = with_spectrum(g, {0.8, 0.45, 0.4, 0.1}, rng, &basis);
  EigenDecomposition ed = eigendecompose(M);
  SpectrumSlice s = spec_slice(ed, 0.42);
  CHECK(s.values.size() == 2);
  CHECK(s.basis.size() == 2);
  GroupFunction f = cplx(2.0) * basis[0] + cplx(0, 1) * basis[2] + basis[5];
  CHECK(max_diff(project(f, s), cplx(2.0) * basis[0]) < 1e-10);
  CHECK(max_diff(project(f, spec_slice(ed, 0.35)), cplx(2.0) * basis[0] + cplx(0, 1) * basis[2]) < 1e-10);
  CHECK(max_diff(project_onto(f, {basis[5]}), basis[5]) < 1e-10);
  CHECK(spec_slice(ed, 0.95).basis.empty());

  CHECK(is_separated({0.8, 0.45, 0.4}, 0.049));
  CHECK_FALSE(is_separated({0.8, 0.45, 0.4}, 0.051));
  CHECK(is_separated({}, 1.0));
  CHECK(is_theta_isolated(ed, ed.values[0], 0.3));
  CHECK_FALSE(is_theta_isolated(ed, ed.values[0], 0.4));
  CHECK(is_theta_isolated(ed, ed.values[1], 0.03));
  CHECK_FALSE(is_theta_isolated(ed, ed.values[1], 0.06));
}

TEST_CASE("pseudo-eigenvectors and clusters") {
  std::mt19937_64 rng(43);
  Group g = Group::cyclic(12);
  std::vector<GroupFunction> basis;
  ZMatrix M = with_spectrum(g, {0.9, 0.86, 0.5, 0.48, 0.1}, rng, &basis);
  EigenDecomposition ed = eigendecompose(M);
  // mixture of the 0.9 and 0.86 eigenvectors: residual is exactly computable
  GroupFunction u = cplx(std::sqrt(0.5)) * basis[0] + cplx(std::sqrt(0.5)) * basis[1];
  double beta = pseudo_residual(M, u, 0.88);
  CHECK(beta == doctest::Approx(0.02).epsilon(1e-8));
  // every eigenvector lies inside the cluster |lambda - 0.88| <= 0.03
  GroupFunction p = cluster_project(ed, u, 0.88, 0.03);
  CHECK(l2_norm(u - p) < 1e-10);
  // general closed-cluster bound ||u - P u|| <= beta / delta
  for (int i = 0; i < 30; ++i) {
    GroupFunction w = random_unit(g, rng);
    double lam = unif(rng, -0.1, 1.0), delta = unif(rng, 0.02, 0.3);
    double b = pseudo_residual(M, w, lam);
    CHECK(l2_norm(w - cluster_project(ed, w, lam, delta)) <= b / delta + 1e-10);
  }
}

TEST_CASE("subspace distance") {
  Group g = Group::cyclic(6);
  auto e = [&](std::size_t i) { return character_function(g, i); };
  CHECK(subspace_distance({e(0), e(1)}, {e(1), e(0)}) == doctest::Approx(0.0).scale(1));
  CHECK(subspace_distance({e(0)}, {e(1)}) == doctest::Approx(1.0));
  GroupFunction tilted = cplx(std::cos(0.3)) * e(0) + cplx(std::sin(0.3)) * e(1);
  CHECK(subspace_distance({e(0)}, {tilted}) == doctest::Approx(std::sin(0.3)));
  CHECK(subspace_distance({e(0)}, {e(0), e(1)}) == doctest::Approx(1.0));
}

TEST_CASE("Hoffman–Wielandt in the normalized geometry") {
  std::mt19937_64 rng(44);
  Group g = Group::parse("Z2xZ5");
  for (int i = 0; i < 30; ++i) {
    ZMatrix A = random_hermitian(g, rng), B = random_hermitian(g, rng, unif(rng, 0.01, 1.0));
    CHECK(hoffman_wielandt_gap(A, B) <= l2_norm(A - B) + 1e-10);
  }
  ZMatrix A = random_hermitian(g, rng);
  CHECK(hoffman_wielandt_gap(A, A) < 1e-12);
}

TEST_CASE("quantitative Gram–Schmidt") {
  CHECK(gram_schmidt_constant(1) == 0.0);
  CHECK(gram_schmidt_constant(2) == 1.0);
  CHECK(gram_schmidt_constant(3) == 12.0);
  CHECK(gram_schmidt_constant(4) == 64.0);
  CHECK(gram_schmidt_constant(5) == 324.0);

  std::mt19937_64 rng(45);
  Group g = Group::cyclic(16);
  // a pair at inner product exactly tau: the normalized vector moves by
  // sqrt(2 - 2 sqrt(1 - tau^2)), a hair above tau
  for (double tau : {0.01, 0.1, 0.3}) {
    GroupFunction a = character_function(g, 0), b = character_function(g, 1);
    GroupFunction u = cplx(tau) * a + cplx(std::sqrt(1 - tau * tau)) * b;
    GramSchmidtResult r = gram_schmidt_quantitative({a, u}, tau);
    CHECK(r.precondition_ok);
    CHECK(r.max_inner == doctest::Approx(tau));
    CHECK(r.drift[0] < 1e-15);
    CHECK(r.drift[1] == doctest::Approx(std::sqrt(2 - 2 * std::sqrt(1 - tau * tau))));
    CHECK(r.drift[1] <= tau * (1 + tau * tau));
    CHECK(std::abs(inner(r.vectors[0], r.vectors[1])) < 1e-14);
  }
  // three vectors: drift stays below tau when the pairwise inner products are <= tau / C_3
  for (int i = 0; i < 30; ++i) {
    double tau = unif(rng, 0.01, 0.5);
    std::vector<GroupFunction> u;
    for (std::size_t j = 0; j < 3; ++j) {
      GroupFunction n = random_unit(g, rng);
      GroupFunction v = character_function(g, j) + cplx(tau / (3 * 12.0 * 4)) * n;
      u.push_back((1.0 / l2_norm(v)) * v);
    }
    GramSchmidtResult r = gram_schmidt_quantitative(u, tau);
    CHECK(r.precondition_ok);
    for (double d : r.drift) CHECK(d <= tau);
  }
  GroupFunction a = character_function(g, 0);
  GramSchmidtResult bad = gram_schmidt_quantitative({a, cplx(0.6) * a + cplx(0.8) * character_function(g, 1)}, 0.1);
  CHECK_FALSE(bad.precondition_ok);
}

TEST_CASE("nearest unitary and quasi-unitary defect") {
  std::mt19937_64 rng(46);
  for (int t : {2, 4, 6}) {
    Eigen::MatrixXcd W(t, t);
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) W(i, j) = gauss(rng);
    UnitaryRepair u = nearest_unitary(W);
    CHECK((u.unitary.adjoint() * u.unitary - Eigen::MatrixXcd::Identity(t, t)).cwiseAbs().maxCoeff() < 1e-12);
    // small perturbation of a unitary: ||W - U||_inf <= 30 delta sqrt(t) when delta <= 1/(24t)
    Eigen::MatrixXcd U0 = Eigen::HouseholderQR<Eigen::MatrixXcd>(W).householderQ();
    double delta = 1.0 / (24.0 * t);
    Eigen::MatrixXcd E(t, t);
    for (int i = 0; i < t; ++i)
      for (int j = 0; j < t; ++j) E(i, j) = gauss(rng);
    Eigen::MatrixXcd Wp = U0 + (delta / (4.0 * t)) * E / E.cwiseAbs().maxCoeff();
    double d = quasiunitary_defect(Wp);
    CHECK(d <= delta);
    CHECK(nearest_unitary(Wp).residual <= 30 * delta * std::sqrt(double(t)));
  }
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Identity(2, 2);
  D(1, 1) = 1.1;
  CHECK(quasiunitary_defect(D) == doctest::Approx(0.21));
  CHECK(nearest_unitary(D).residual == doctest::Approx(0.1));
}

TEST_CASE("eigendecomposition persistence") {
  std::mt19937_64 rng(47);
  Group g = Group::parse("Z2xZ3");
  EigenDecomposition ed = eigendecompose(random_hermitian(g, rng));
  std::string path = "test_spectral_persist.bin";
  save_eigendecomposition(ed, path);
  EigenDecomposition back = load_eigendecomposition(path);
  CHECK(back.group == ed.group);
  CHECK(back.values == ed.values);
  CHECK((back.vectors.array() == ed.vectors.array()).all());
  CHECK(eigendecomposition_hash(back) == eigendecomposition_hash(ed));

  // flip one byte in the payload
  {
    std::fstream fs(path, std::ios::in | std::ios::out | std::ios::binary);
    fs.seekp(40);
    char c = 0;
    fs.read(&c, 1);
    fs.seekp(40);
    c ^= 0x5a;
    fs.write(&c, 1);
  }
  CHECK_THROWS_AS(load_eigendecomposition(path), ValidationError);
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_eigendecomposition("does/not/exist.bin"), ValidationError);
}
