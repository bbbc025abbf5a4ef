#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "hofa/zmatrix.hpp"

namespace hofa {

// Normalized eigendecomposition: values are raw eigenvalues / |Z| sorted
// non-increasing (ties by ascending solver index); column i of `vectors` is
// the matching eigenvector scaled to unit normalized L2 norm (raw * sqrt|Z|).
// Eigenvectors carry an arbitrary phase.
struct EigenDecomposition {
  Group group;
  std::vector<double> values;
  Eigen::MatrixXcd vectors;

  std::size_t size() const { return values.size(); }
  GroupFunction vector(std::size_t i) const;
};

EigenDecomposition eigendecompose(const ZMatrix& M, double tol = 1e-8);

struct SpectrumSlice {
  double rho = 0.0;
  std::vector<double> values;          // kept eigenvalues, all >= rho
  std::vector<std::size_t> indices;    // positions in the decomposition
  std::vector<GroupFunction> basis;    // orthonormal basis of the kept eigenspaces
};

SpectrumSlice spec_slice(const EigenDecomposition& ed, double rho);
// sum_i <f, v_i> v_i over the slice
GroupFunction project(const GroupFunction& f, const SpectrumSlice& slice);
GroupFunction project_onto(const GroupFunction& f, const std::vector<GroupFunction>& orthonormal_basis);

// Every pair of entries at distance >= delta.
bool is_separated(std::vector<double> values, double delta);
// lambda has multiplicity one and every other eigenvalue lies strictly further than theta.
bool is_theta_isolated(const EigenDecomposition& ed, double lambda, double theta);

// ||Mv - lambda v||_2 for unit v
double pseudo_residual(const ZMatrix& M, const GroupFunction& v, double lambda);
// sum of <u,v_i> v_i over the cluster |lambda_i - lambda| <= delta
GroupFunction cluster_project(const EigenDecomposition& ed, const GroupFunction& u, double lambda, double delta);

// Operator norm of P - Q for the orthogonal projections onto span(P_basis), span(Q_basis).
double subspace_distance(const std::vector<GroupFunction>& P_basis, const std::vector<GroupFunction>& Q_basis);

// (sum_i |lambda_i(A) - lambda_i(B)|^2)^{1/2} with both spectra sorted non-increasing (normalized).
double hoffman_wielandt_gap(const ZMatrix& A, const ZMatrix& B);

struct GramSchmidtResult {
  std::vector<GroupFunction> vectors;
  std::vector<double> drift;  // ||u_i - w_i||_2
  double max_inner = 0.0;     // max_{i != j} |<u_i, u_j>| of the input
  bool precondition_ok = true;
};

// C_1 = 0, C_2 = 1, C_s = 13 * 5^(s-3) - 1 for s >= 3.
double gram_schmidt_constant(std::size_t s);
// Orthonormalizes in order. tau is the tolerance the caller expects to hold
// pairwise (|<u_i,u_j>| <= tau / C_s); violation is recorded, not thrown.
GramSchmidtResult gram_schmidt_quantitative(const std::vector<GroupFunction>& u, double tau);

struct UnitaryRepair {
  Eigen::MatrixXcd unitary;
  double residual = 0.0;  // max entrywise |W - U|
};
// Polar factor U V* of W = U S V*.
UnitaryRepair nearest_unitary(const Eigen::MatrixXcd& W);
// sup_{|x| = 1} | |Wx|^2 - |x|^2 | (largest |eigenvalue| of W*W - I)
double quasiunitary_defect(const Eigen::MatrixXcd& W);

// Binary container: magic, group spec, eigenvalues, packed eigenvectors and an
// FNV-1a 64 hash over everything before it.
void save_eigendecomposition(const EigenDecomposition& ed, const std::string& path);
EigenDecomposition load_eigendecomposition(const std::string& path);
std::uint64_t eigendecomposition_hash(const EigenDecomposition& ed);

}  // namespace hofa
