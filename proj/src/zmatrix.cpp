#include "hofa/zmatrix.hpp"

#include <cmath>

#include "hofa/gowers.hpp"

namespace hofa {

ZMatrix::ZMatrix(const Group& g, Eigen::MatrixXcd entries) : group(g), m(std::move(entries)) {
  auto n = static_cast<Eigen::Index>(g.order());
  if (m.rows() != n || m.cols() != n) throw ValidationError("matrix shape does not match |Z| x |Z|");
}

ZMatrix operator+(const ZMatrix& a, const ZMatrix& b) {
  require_same_group(a.group, b.group, "matrix add");
  return ZMatrix(a.group, a.m + b.m);
}

ZMatrix operator-(const ZMatrix& a, const ZMatrix& b) {
  require_same_group(a.group, b.group, "matrix subtract");
  return ZMatrix(a.group, a.m - b.m);
}

ZMatrix operator*(cplx c, const ZMatrix& a) { return ZMatrix(a.group, c * a.m); }

ZMatrix identity_kernel(const Group& g) {
  auto n = static_cast<Eigen::Index>(g.order());
  return ZMatrix(g, Eigen::MatrixXcd::Identity(n, n) * static_cast<double>(n));
}

ZMatrix adjoint(const ZMatrix& M) { return ZMatrix(M.group, M.m.adjoint()); }

double self_adjoint_defect(const ZMatrix& M) {
  return (M.m - M.m.adjoint()).cwiseAbs().maxCoeff();
}

ZMatrix outer(const GroupFunction& f, const GroupFunction& g) {
  require_same_group(f.group, g.group, "outer");
  ZMatrix out(f.group);
  for (std::size_t y = 0; y < g.size(); ++y) {
    cplx gy = std::conj(g[y]);
    for (std::size_t x = 0; x < f.size(); ++x) out.m(x, y) = f[x] * gy;
  }
  return out;
}

GroupFunction diagonal(const ZMatrix& M, std::size_t t) {
  const Group& g = M.group;
  if (t >= g.order()) throw ValidationError("diagonal: element out of range");
  GroupFunction out(g);
  for (std::size_t z = 0; z < g.order(); ++z) out[z] = M.m(g.add(z, t), z);
  return out;
}

std::vector<GroupFunction> diagonals(const ZMatrix& M) {
  std::vector<GroupFunction> out(M.size());
  parallel_for(M.size(), [&](std::size_t t) { out[t] = diagonal(M, t); });
  return out;
}

ZMatrix from_diagonals(const std::vector<GroupFunction>& F) {
  if (F.empty()) throw ValidationError("from_diagonals: empty family");
  const Group& g = F[0].group;
  if (F.size() != g.order()) throw ValidationError("from_diagonals: family must have one entry per element");
  for (const auto& f : F) require_same_group(g, f.group, "from_diagonals");
  ZMatrix out(g);
  for (std::size_t t = 0; t < g.order(); ++t)
    for (std::size_t y = 0; y < g.order(); ++y) out.m(g.add(y, t), y) = F[t][y];
  return out;
}

GroupFunction matvec(const ZMatrix& M, const GroupFunction& f) {
  require_same_group(M.group, f.group, "matvec");
  Eigen::Map<const Eigen::VectorXcd> fv(f.v.data(), static_cast<Eigen::Index>(f.size()));
  Eigen::VectorXcd r = M.m * fv / static_cast<double>(f.size());
  return GroupFunction(f.group, CVec(r.data(), r.data() + r.size()));
}

ZMatrix matmul(const ZMatrix& A, const ZMatrix& B) {
  require_same_group(A.group, B.group, "matmul");
  return ZMatrix(A.group, A.m * B.m / static_cast<double>(A.size()));
}

ZMatrix matmul_via_diagonals(const ZMatrix& A, const ZMatrix& B) {
  require_same_group(A.group, B.group, "matmul_via_diagonals");
  const Group& g = A.group;
  std::size_t n = g.order();
  auto DA = diagonals(A);
  auto DB = diagonals(B);
  std::vector<GroupFunction> out(n);
  parallel_for(n, [&](std::size_t w) {
    GroupFunction d(g);
    for (std::size_t z = 0; z < n; ++z) {
      cplx s = 0.0;
      std::size_t zw = g.add(z, w);
      for (std::size_t t = 0; t < n; ++t) s += DA[t][g.sub(zw, t)] * DB[g.sub(w, t)][z];
      d[z] = s / static_cast<double>(n);
    }
    out[w] = std::move(d);
  });
  return from_diagonals(out);
}

double l2_norm(const ZMatrix& M) {
  KahanSum s;
  for (Eigen::Index j = 0; j < M.m.cols(); ++j)
    for (Eigen::Index i = 0; i < M.m.rows(); ++i) s.add(std::norm(M.m(i, j)));
  return std::sqrt(s.value()) / static_cast<double>(M.size());
}

double ma_norm(const ZMatrix& M) {
  std::vector<double> w(M.size());
  parallel_for(M.size(), [&](std::size_t t) { w[t] = wiener_norm(diagonal(M, t)); });
  double best = 0.0;
  for (double x : w) best = std::max(best, x);
  return best;
}

double du_norm(const ZMatrix& M, int k) {
  if (k != 2 && k != 3) throw ValidationError("du_norm supports k in {2,3}");
  std::vector<double> p(M.size());
  parallel_for(M.size(), [&](std::size_t t) { p[t] = uk_norm_pow(diagonal(M, t), k); });
  KahanSum s;
  for (double x : p) s.add(x);
  double avg = s.value() / static_cast<double>(M.size());
  return std::pow(std::max(avg, 0.0), 1.0 / static_cast<double>(1 << k));
}

ZMatrix poly_apply(const Poly& P, const ZMatrix& M) {
  if (P.size() > kMaxPolyDegree + 1) throw ValidationError("poly_apply: degree exceeds guard");
  ZMatrix acc(M.group);
  if (P.empty()) return acc;
  // Horner in the normalized algebra: acc <- acc*M + a_i Id
  ZMatrix id = identity_kernel(M.group);
  acc = P.back() * id;
  for (std::size_t i = P.size() - 1; i-- > 0;) acc = matmul(acc, M) + P[i] * id;
  return acc;
}

Poly poly_plus(const Poly& P) {
  Poly out(P.size());
  for (std::size_t i = 0; i < P.size(); ++i) out[i] = std::abs(P[i]);
  return out;
}

cplx poly_eval(const Poly& P, cplx x) {
  cplx acc = 0.0;
  for (std::size_t i = P.size(); i-- > 0;) acc = acc * x + P[i];
  return acc;
}

Poly isolation_poly(int n, double lambda) {
  if (n < 0) throw ValidationError("isolation_poly: n must be >= 0");
  if (lambda == 0.0) throw ValidationError("isolation_poly: lambda must be nonzero");
  if (static_cast<std::size_t>(2 * n + 1) > kMaxPolyDegree) throw ValidationError("isolation_poly: degree exceeds guard");
  // q(x) = 1 - (x - lambda)^2 / 4 = (1 - lambda^2/4) + (lambda/2) x - x^2/4
  Poly q = {1.0 - lambda * lambda / 4.0, lambda / 2.0, -0.25};
  Poly acc = {1.0};
  for (int i = 0; i < n; ++i) {
    Poly next(acc.size() + 2, 0.0);
    for (std::size_t a = 0; a < acc.size(); ++a)
      for (std::size_t b = 0; b < q.size(); ++b) next[a + b] += acc[a] * q[b];
    acc = std::move(next);
  }
  Poly out(acc.size() + 1, 0.0);
  for (std::size_t a = 0; a < acc.size(); ++a) out[a + 1] = acc[a] / lambda;
  return out;
}

}  // namespace hofa
