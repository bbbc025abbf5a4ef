#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "hofa/group.hpp"
#include "hofa/zmatrix.hpp"

namespace testsupport {

using hofa::cplx;
using hofa::Group;
using hofa::GroupFunction;
using hofa::ZMatrix;

inline cplx gauss(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  double re = n(rng);
  double im = n(rng);
  return {re, im};
}

inline double unif(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline GroupFunction random_function(const Group& g, std::mt19937_64& rng, double scale = 1.0) {
  GroupFunction f(g);
  for (auto& x : f.v) x = scale * gauss(rng);
  return f;
}

// |f(x)| <= 1
inline GroupFunction random_bounded(const Group& g, std::mt19937_64& rng) {
  GroupFunction f(g);
  for (auto& x : f.v) x = std::polar(unif(rng), unif(rng, 0.0, 2.0 * M_PI));
  return f;
}

inline GroupFunction random_unit(const Group& g, std::mt19937_64& rng) {
  GroupFunction f = random_function(g, rng);
  return (1.0 / hofa::l2_norm(f)) * f;
}

inline ZMatrix random_matrix(const Group& g, std::mt19937_64& rng, double scale = 1.0) {
  ZMatrix M(g);
  for (std::size_t i = 0; i < M.size(); ++i)
    for (std::size_t j = 0; j < M.size(); ++j) M(i, j) = scale * gauss(rng);
  return M;
}

inline ZMatrix random_hermitian(const Group& g, std::mt19937_64& rng, double scale = 1.0) {
  ZMatrix M = random_matrix(g, rng, scale);
  M.m = 0.5 * (M.m + M.m.adjoint()).eval();
  return M;
}

inline double max_diff(const GroupFunction& a, const GroupFunction& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

inline double max_diff(const ZMatrix& a, const ZMatrix& b) { return (a.m - b.m).cwiseAbs().maxCoeff(); }

// Self-adjoint Z-matrix with prescribed normalized eigenvalues and a random
// unitary eigenbasis; returns the basis as unit functions too.
inline ZMatrix with_spectrum(const Group& g, const std::vector<double>& values, std::mt19937_64& rng,
                             std::vector<GroupFunction>* basis = nullptr) {
  std::size_t n = g.order();
  Eigen::MatrixXcd A(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) A(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  Eigen::MatrixXcd Q = qr.householderQ();
  Eigen::VectorXd d = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < values.size() && i < n; ++i) d(static_cast<Eigen::Index>(i)) = values[i];
  // normalized eigenvalue mu <-> raw eigenvalue mu * |Z|
  ZMatrix M(g, Q * (static_cast<double>(n) * d).asDiagonal() * Q.adjoint());
  if (basis) {
    basis->clear();
    for (std::size_t i = 0; i < n; ++i) {
      GroupFunction v(g);
      for (std::size_t x = 0; x < n; ++x) v[x] = Q(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(i)) * std::sqrt(static_cast<double>(n));
      basis->push_back(v);
    }
  }
  return M;
}

}  // namespace testsupport
