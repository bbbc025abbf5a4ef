#include "hofa/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>

namespace hofa {

namespace {

using Eigen::Index;

Eigen::MatrixXcd raw_basis(const std::vector<GroupFunction>& basis, std::size_t n) {
  // columns scaled to unit Euclidean length
  Eigen::MatrixXcd B(static_cast<Index>(n), static_cast<Index>(basis.size()));
  double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) B(static_cast<Index>(i), static_cast<Index>(j)) = basis[j][i] * s;
  return B;
}

void check_orthonormal(const std::vector<GroupFunction>& basis, const char* what) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      cplx ip = inner(basis[i], basis[j]);
      double want = i == j ? 1.0 : 0.0;
      if (std::abs(ip - want) > 1e-8) throw ValidationError(std::string(what) + ": basis is not orthonormal");
    }
}

std::vector<double> sorted_spectrum(const ZMatrix& M) {
  return eigendecompose(M).values;
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

template <class T>
void put(std::string& buf, const T& x) {
  char tmp[sizeof(T)];
  std::memcpy(tmp, &x, sizeof(T));
  buf.append(tmp, sizeof(T));
}

template <class T>
T get(const std::string& buf, std::size_t& pos) {
  if (pos + sizeof(T) > buf.size()) throw ValidationError("eigendecomposition file truncated");
  T x;
  std::memcpy(&x, buf.data() + pos, sizeof(T));
  pos += sizeof(T);
  return x;
}

constexpr char kMagic[8] = {'H', 'O', 'F', 'A', 'E', 'I', 'G', '1'};

std::string serialize_body(const EigenDecomposition& ed) {
  std::string buf(kMagic, sizeof(kMagic));
  std::string spec = ed.group.spec();
  put<std::uint64_t>(buf, spec.size());
  buf += spec;
  put<std::uint64_t>(buf, ed.values.size());
  for (double v : ed.values) put(buf, v);
  for (Index j = 0; j < ed.vectors.cols(); ++j)
    for (Index i = 0; i < ed.vectors.rows(); ++i) {
      put(buf, ed.vectors(i, j).real());
      put(buf, ed.vectors(i, j).imag());
    }
  return buf;
}

}  // namespace

GroupFunction EigenDecomposition::vector(std::size_t i) const {
  GroupFunction out(group);
  for (std::size_t x = 0; x < group.order(); ++x) out[x] = vectors(static_cast<Index>(x), static_cast<Index>(i));
  return out;
}

EigenDecomposition eigendecompose(const ZMatrix& M, double tol) {
  std::size_t n = M.size();
  double scale = std::max(1.0, M.m.cwiseAbs().maxCoeff());
  if (self_adjoint_defect(M) > tol * scale) throw ValidationError("eigendecompose: matrix is not self-adjoint");
  Eigen::MatrixXcd H = 0.5 * (M.m + M.m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H);
  if (solver.info() != Eigen::Success) throw NumericError("eigendecompose: solver did not converge");
  const auto& raw = solver.eigenvalues();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return raw(static_cast<Index>(a)) > raw(static_cast<Index>(b));
  });
  EigenDecomposition ed;
  ed.group = M.group;
  ed.values.resize(n);
  ed.vectors.resize(static_cast<Index>(n), static_cast<Index>(n));
  double dn = static_cast<double>(n), root = std::sqrt(dn);
  for (std::size_t k = 0; k < n; ++k) {
    auto src = static_cast<Index>(order[k]);
    ed.values[k] = raw(src) / dn;
    ed.vectors.col(static_cast<Index>(k)) = solver.eigenvectors().col(src) * root;
  }
  return ed;
}

SpectrumSlice spec_slice(const EigenDecomposition& ed, double rho) {
  SpectrumSlice s;
  s.rho = rho;
  for (std::size_t i = 0; i < ed.size(); ++i) {
    // a threshold within 1e-12 of an eigenvalue includes it
    if (ed.values[i] >= rho - 1e-12) {
      s.values.push_back(ed.values[i]);
      s.indices.push_back(i);
      s.basis.push_back(ed.vector(i));
    }
  }
  return s;
}

GroupFunction project_onto(const GroupFunction& f, const std::vector<GroupFunction>& basis) {
  GroupFunction out(f.group);
  for (const auto& v : basis) {
    cplx c = inner(f, v);
    for (std::size_t x = 0; x < f.size(); ++x) out[x] += c * v[x];
  }
  return out;
}

GroupFunction project(const GroupFunction& f, const SpectrumSlice& slice) { return project_onto(f, slice.basis); }

bool is_separated(std::vector<double> values, double delta) {
  if (delta < 0.0) throw ValidationError("is_separated: delta must be >= 0");
  std::sort(values.begin(), values.end());
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] - values[i - 1] < delta) return false;
  return true;
}

bool is_theta_isolated(const EigenDecomposition& ed, double lambda, double theta) {
  std::size_t hits = 0;
  bool far = true;
  for (double mu : ed.values) {
    if (std::abs(mu - lambda) <= 1e-10)
      ++hits;
    else if (std::abs(mu - lambda) <= theta)
      far = false;
  }
  if (hits == 0) throw ValidationError("is_theta_isolated: lambda is not an eigenvalue");
  return hits == 1 && far;
}

double pseudo_residual(const ZMatrix& M, const GroupFunction& v, double lambda) {
  if (std::abs(l2_norm(v) - 1.0) > 1e-8) throw ValidationError("pseudo_residual: v must be a unit vector");
  GroupFunction r = matvec(M, v);
  for (std::size_t x = 0; x < v.size(); ++x) r[x] -= lambda * v[x];
  return l2_norm(r);
}

GroupFunction cluster_project(const EigenDecomposition& ed, const GroupFunction& u, double lambda, double delta) {
  require_same_group(ed.group, u.group, "cluster_project");
  GroupFunction out(u.group);
  for (std::size_t i = 0; i < ed.size(); ++i) {
    if (std::abs(ed.values[i] - lambda) > delta) continue;
    GroupFunction v = ed.vector(i);
    cplx c = inner(u, v);
    for (std::size_t x = 0; x < u.size(); ++x) out[x] += c * v[x];
  }
  return out;
}

double subspace_distance(const std::vector<GroupFunction>& P_basis, const std::vector<GroupFunction>& Q_basis) {
  if (P_basis.empty() && Q_basis.empty()) return 0.0;
  const Group& g = P_basis.empty() ? Q_basis[0].group : P_basis[0].group;
  check_orthonormal(P_basis, "subspace_distance");
  check_orthonormal(Q_basis, "subspace_distance");
  std::size_t n = g.order();
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(static_cast<Index>(n), static_cast<Index>(n));
  Eigen::MatrixXcd Q = P;
  if (!P_basis.empty()) {
    Eigen::MatrixXcd B = raw_basis(P_basis, n);
    P = B * B.adjoint();
  }
  if (!Q_basis.empty()) {
    Eigen::MatrixXcd B = raw_basis(Q_basis, n);
    Q = B * B.adjoint();
  }
  Eigen::MatrixXcd D = P - Q;
  D = 0.5 * (D + D.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(D, Eigen::EigenvaluesOnly);
  return std::min(1.0, solver.eigenvalues().cwiseAbs().maxCoeff());
}

double hoffman_wielandt_gap(const ZMatrix& A, const ZMatrix& B) {
  require_same_group(A.group, B.group, "hoffman_wielandt_gap");
  auto a = sorted_spectrum(A), b = sorted_spectrum(B);
  KahanSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add((a[i] - b[i]) * (a[i] - b[i]));
  return std::sqrt(s.value());
}

double gram_schmidt_constant(std::size_t s) {
  if (s <= 1) return 0.0;
  if (s == 2) return 1.0;
  return 13.0 * std::pow(5.0, static_cast<double>(s) - 3.0) - 1.0;
}

GramSchmidtResult gram_schmidt_quantitative(const std::vector<GroupFunction>& u, double tau) {
  GramSchmidtResult r;
  std::size_t s = u.size();
  double cs = gram_schmidt_constant(s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < i; ++j) r.max_inner = std::max(r.max_inner, std::abs(inner(u[i], u[j])));
  r.precondition_ok = s < 2 || (tau > 0.0 && tau < 1.0 && r.max_inner <= tau / cs);
  for (std::size_t i = 0; i < s; ++i) {
    GroupFunction w = u[i];
    for (const auto& prev : r.vectors) {
      cplx c = inner(u[i], prev);
      for (std::size_t x = 0; x < w.size(); ++x) w[x] -= c * prev[x];
    }
    double nrm = l2_norm(w);
    if (nrm < 1e-12) throw NumericError("gram_schmidt_quantitative: input vectors are linearly dependent");
    w *= 1.0 / nrm;
    r.drift.push_back(l2_norm(u[i] - w));
    r.vectors.push_back(std::move(w));
  }
  return r;
}

UnitaryRepair nearest_unitary(const Eigen::MatrixXcd& W) {
  if (W.rows() != W.cols()) throw ValidationError("nearest_unitary: matrix must be square");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(W, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (W.rows() > 0 && svd.singularValues().minCoeff() < 1e-12)
    throw NumericError("nearest_unitary: matrix is rank deficient");
  UnitaryRepair r;
  r.unitary = svd.matrixU() * svd.matrixV().adjoint();
  r.residual = W.rows() ? (W - r.unitary).cwiseAbs().maxCoeff() : 0.0;
  return r;
}

double quasiunitary_defect(const Eigen::MatrixXcd& W) {
  if (W.cols() == 0) return 0.0;
  Eigen::MatrixXcd G = W.adjoint() * W - Eigen::MatrixXcd::Identity(W.cols(), W.cols());
  G = 0.5 * (G + G.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(G, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

std::uint64_t eigendecomposition_hash(const EigenDecomposition& ed) { return fnv1a(serialize_body(ed)); }

void save_eigendecomposition(const EigenDecomposition& ed, const std::string& path) {
  std::string buf = serialize_body(ed);
  put<std::uint64_t>(buf, fnv1a(buf));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

EigenDecomposition load_eigendecomposition(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::string buf((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (buf.size() < sizeof(kMagic) + 8 || std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0)
    throw ValidationError("not an eigendecomposition file");
  std::size_t pos = sizeof(kMagic);
  auto len = get<std::uint64_t>(buf, pos);
  if (pos + len > buf.size()) throw ValidationError("eigendecomposition file truncated");
  std::string spec = buf.substr(pos, len);
  pos += len;
  EigenDecomposition ed;
  ed.group = Group::parse(spec);
  auto n = get<std::uint64_t>(buf, pos);
  if (n != ed.group.order()) throw ValidationError("eigendecomposition size does not match its group");
  ed.values.resize(n);
  for (auto& v : ed.values) v = get<double>(buf, pos);
  ed.vectors.resize(static_cast<Index>(n), static_cast<Index>(n));
  for (Index j = 0; j < static_cast<Index>(n); ++j)
    for (Index i = 0; i < static_cast<Index>(n); ++i) {
      double re = get<double>(buf, pos);
      double im = get<double>(buf, pos);
      ed.vectors(i, j) = cplx(re, im);
    }
  std::size_t body = pos;
  auto stored = get<std::uint64_t>(buf, pos);
  if (fnv1a(buf.substr(0, body)) != stored) throw ValidationError("eigendecomposition hash mismatch");
  return ed;
}

}  // namespace hofa
