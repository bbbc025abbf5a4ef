#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hofa/group.hpp"

namespace hofa {

// Dense kernel M(x,y) on Z x Z. Operator products are normalized:
//   (Mf)(x)   = E_y M(x,y) f(y)
//   (MM')(x,y) = E_z M(x,z) M'(z,y)
// so the unit of the algebra is Id(x,y) = |Z| 1(x=y), not the 0/1 identity.
struct ZMatrix {
  Group group;
  Eigen::MatrixXcd m;

  ZMatrix() = default;
  explicit ZMatrix(const Group& g) : group(g), m(Eigen::MatrixXcd::Zero(g.order(), g.order())) {}
  ZMatrix(const Group& g, Eigen::MatrixXcd entries);

  std::size_t size() const { return group.order(); }
  cplx& operator()(std::size_t x, std::size_t y) { return m(x, y); }
  const cplx& operator()(std::size_t x, std::size_t y) const { return m(x, y); }
};

ZMatrix operator+(const ZMatrix& a, const ZMatrix& b);
ZMatrix operator-(const ZMatrix& a, const ZMatrix& b);
ZMatrix operator*(cplx c, const ZMatrix& a);

ZMatrix identity_kernel(const Group& g);
ZMatrix adjoint(const ZMatrix& M);
// max |M(x,y) - conj(M(y,x))|
double self_adjoint_defect(const ZMatrix& M);

// (f (x) conj g)(x,y) = f(x) conj(g(y))
ZMatrix outer(const GroupFunction& f, const GroupFunction& g);

// D_{M,t}(z) = M(z+t, z)
GroupFunction diagonal(const ZMatrix& M, std::size_t t);
std::vector<GroupFunction> diagonals(const ZMatrix& M);
// M(x,y) = F[x-y](y); F must hold one function per element of Z.
ZMatrix from_diagonals(const std::vector<GroupFunction>& F);

GroupFunction matvec(const ZMatrix& M, const GroupFunction& f);
ZMatrix matmul(const ZMatrix& A, const ZMatrix& B);
// Product assembled diagonal by diagonal:
//   D_{AB,w}(z) = E_t D_{A,t}(z+w-t) D_{B,w-t}(z)
ZMatrix matmul_via_diagonals(const ZMatrix& A, const ZMatrix& B);

double l2_norm(const ZMatrix& M);
// max_t ||D_{M,t}||_A (Wiener norm of each diagonal)
double ma_norm(const ZMatrix& M);
// (E_t ||D_{M,t}||_{U^k}^{2^k})^{1/2^k}, k in {2,3}
double du_norm(const ZMatrix& M, int k);

// Polynomials are coefficient vectors a_0..a_n. The constant term maps to a_0 Id.
using Poly = std::vector<cplx>;
inline constexpr std::size_t kMaxPolyDegree = 64;
ZMatrix poly_apply(const Poly& P, const ZMatrix& M);
// P+(x) = sum |a_i| x^i
Poly poly_plus(const Poly& P);
cplx poly_eval(const Poly& P, cplx x);
// p_n(x, lambda) = x (1 - (x - lambda)^2 / 4)^n / lambda
Poly isolation_poly(int n, double lambda);

}  // namespace hofa
