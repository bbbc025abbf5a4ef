#include <doctest.h>

#include "hofa/gowers.hpp"
#include "hofa/zmatrix.hpp"
#include "support.hpp"

using namespace hofa;
using namespace testsupport;

TEST_CASE("diagonals round-trip bit-exactly") {
  std::mt19937_64 rng(11);
  for (const char* spec : {"Z5", "Z2xZ4"}) {
    Group g = Group::parse(spec);
    ZMatrix M = random_matrix(g, rng);
    ZMatrix back = from_diagonals(diagonals(M));
    CHECK((back.m.array() == M.m.array()).all());
    for (std::size_t t = 0; t < g.order(); ++t)
      for (std::size_t z = 0; z < g.order(); ++z) CHECK(diagonal(M, t)[z] == M(g.add(z, t), z));
  }
  CHECK_THROWS_AS(from_diagonals(std::vector<GroupFunction>(3, GroupFunction(Group::cyclic(4)))), ValidationError);
}

TEST_CASE("diagonals of f (x) conj f are the multiplicative derivatives") {
  std::mt19937_64 rng(12);
  Group g = Group::cyclic(6);
  GroupFunction f = random_function(g, rng);
  ZMatrix M = outer(f, f);
  for (std::size_t t = 0; t < 6; ++t) CHECK(max_diff(diagonal(M, t), mult_derivative(f, t)) < 1e-14);
  CHECK(self_adjoint_defect(M) < 1e-14);
  CHECK(self_adjoint_defect(random_matrix(g, rng)) > 1e-3);
}

TEST_CASE("normalized products and identity kernel") {
  std::mt19937_64 rng(13);
  Group g = Group::parse("Z3xZ3");
  ZMatrix M = random_matrix(g, rng), Id = identity_kernel(g);
  GroupFunction f = random_function(g, rng);
  CHECK(max_diff(matvec(Id, f), f) < 1e-13);
  CHECK(max_diff(matmul(Id, M), M) < 1e-13);
  CHECK(max_diff(matmul(M, Id), M) < 1e-13);
  // (Mf)(x) = E_y M(x,y) f(y)
  GroupFunction mf = matvec(M, f);
  cplx s = 0;
  for (std::size_t y = 0; y < 9; ++y) s += M(4, y) * f[y];
  CHECK(std::abs(mf[4] - s / 9.0) < 1e-13);
  CHECK(max_diff(adjoint(adjoint(M)), M) == 0.0);
}

TEST_CASE("product formula on diagonals") {
  std::mt19937_64 rng(14);
  for (const char* spec : {"Z16", "Z4xZ4", "Z2xZ3", "Z1"}) {
    Group g = Group::parse(spec);
    for (int i = 0; i < 5; ++i) {
      ZMatrix A = random_matrix(g, rng), B = random_matrix(g, rng);
      ZMatrix P = matmul(A, B);
      CHECK(max_diff(P, matmul_via_diagonals(A, B)) <= 1e-10 * std::max(1.0, P.m.cwiseAbs().maxCoeff()));
    }
  }
}

TEST_CASE("norms") {
  std::mt19937_64 rng(15);
  Group g = Group::cyclic(8);
  ZMatrix M = random_matrix(g, rng);
  double via_diag = 0.0;
  for (const auto& d : diagonals(M)) via_diag += std::pow(l2_norm(d), 2) / 8.0;
  CHECK(l2_norm(M) == doctest::Approx(std::sqrt(via_diag)).epsilon(1e-12));
  CHECK(l2_norm(identity_kernel(g)) == doctest::Approx(std::sqrt(8.0)));

  // submultiplicativity of the MA norm
  for (int i = 0; i < 20; ++i) {
    ZMatrix X = random_matrix(g, rng), Y = random_matrix(g, rng);
    CHECK(ma_norm(matmul(X, Y)) <= ma_norm(X) * ma_norm(Y) + 1e-9);
  }

  // ||f (x) conj g||_{DU^2}^4 = <f,g>_{U^3}
  GroupFunction f = random_bounded(g, rng), h = random_bounded(g, rng);
  CHECK(std::pow(du_norm(outer(f, h), 2), 4) == doctest::Approx(gowers_inner(f, h, 3)).epsilon(1e-10));
  CHECK_THROWS_AS(du_norm(M, 4), ValidationError);
}

TEST_CASE("polynomials of Z-matrices") {
  std::mt19937_64 rng(16);
  Group g = Group::cyclic(6);
  ZMatrix M = random_matrix(g, rng, 0.3);
  Poly P = {cplx(0.5), cplx(0, -1), cplx(2.0)};
  ZMatrix expect = 0.5 * identity_kernel(g) + cplx(0, -1) * M + 2.0 * matmul(M, M);
  CHECK(max_diff(poly_apply(P, M), expect) < 1e-12);
  CHECK(poly_eval(poly_plus(P), 2.0).real() == doctest::Approx(0.5 + 2.0 + 8.0));
  // The identity kernel has ||Id||_MA = |Z| here, so the P+ bound only holds
  // for P(0) = 0 (true of the isolation polynomials).
  CHECK(ma_norm(identity_kernel(g)) == doctest::Approx(6.0));
  for (int i = 0; i < 20; ++i) {
    ZMatrix X = random_matrix(g, rng, unif(rng, 0.05, 0.5));
    Poly Q = {cplx(0.0)};
    for (int j = 0; j < 5; ++j) Q.push_back(gauss(rng));
    CHECK(ma_norm(poly_apply(Q, X)) <= poly_eval(poly_plus(Q), ma_norm(X)).real() + 1e-9);
  }
  CHECK_THROWS_AS(poly_apply(Poly(66, cplx(1)), M), ValidationError);
}

TEST_CASE("isolation polynomial") {
  double lambda = 0.6;
  Poly p = isolation_poly(3, lambda);
  CHECK(p.size() == 8);
  CHECK(std::abs(poly_eval(p, lambda) - 1.0) < 1e-12);
  for (double x : {-0.9, -0.2, 0.1, 0.45, 0.95}) {
    double closed = x * std::pow(1 - (x - lambda) * (x - lambda) / 4, 3) / lambda;
    CHECK(std::abs(poly_eval(p, x) - closed) < 1e-12);
  }
  CHECK_THROWS_AS(isolation_poly(32, lambda), ValidationError);
  CHECK_THROWS_AS(isolation_poly(2, 0.0), ValidationError);
}
