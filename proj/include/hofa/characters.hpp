#pragma once

#include <string>
#include <vector>

#include "hofa/group.hpp"

namespace hofa {

// Best R-term Fourier approximation (top-R coefficients by modulus, ties to
// the smaller dual index). By Parseval this is optimal in L2.
struct FourierStructureCertificate {
  std::size_t R = 0;
  double delta = 0.0;                // ||f - g||_2
  std::vector<std::size_t> support;  // kept characters
  double dual_norm = 0.0;            // ||g||*_{U^2} of the approximant
};

FourierStructureCertificate fourier_structure(const GroupFunction& f, std::size_t R);

struct Order1Certificate {
  std::size_t chi = 0;  // argmax |fhat|
  cplx coefficient = 0.0;
  double residual = 0.0;  // ||f - fhat(chi) chi||_2
};

Order1Certificate order1_certificate(const GroupFunction& f);

struct CharacterCertificate {
  int order = 2;
  std::size_t R = 0;
  double delta = 0.0;
  std::vector<double> per_shift_residuals;
  std::size_t worst_t = 0;
  double max_dual_norm = 0.0;  // max_t ||g_t||*_{U^2} over the per-shift approximants
  std::string notion = "fourier-structure proxy (top-R projection)";
};

// delta = max_t residual of the best R-term approximation of Delta_t f.
CharacterCertificate quadratic_certificate(const GroupFunction& f, std::size_t R);

struct WeakCharacterCertificate {
  std::size_t R = 0;
  double delta1 = 0.0;
  double delta2 = 0.0;  // fraction of shifts failing the (R, delta1) test
  std::size_t good_set_size = 0;
};

WeakCharacterCertificate weak_quadratic_certificate(const GroupFunction& f, std::size_t R, double delta1);

// Both directions of the denoising-stability / weak-character correspondence.
struct StabilityReport {
  double eps = 0.0, gamma = 0.0, delta = 0.0;
  double residual = 0.0;  // ||K_eps(f (x) conj f) - f (x) conj f||_2

  // (i) residual <= gamma  =>  weak character with (4/(eps^2 delta^2), (2 gamma/delta)^{1/2}, delta),
  //     witnessed by g_t = K_eps(Delta_t f)
  bool i_applies = false;
  double i_R = 0.0, i_delta1 = 0.0;
  double i_measured_delta2 = 0.0;  // fraction of t failing either the residual or the dual-norm test
  double i_max_dual_norm = 0.0;
  bool i_holds = true;

  // (ii) weak character (R, delta1, delta2) => residual <= 6 eps^{1/4} R^{1/2} + 4 delta1 + 2 delta2^{1/2}.
  // Uses delta2 = 0, delta1 = max_t residual of the top-R proxy and R = max_t dual norm
  // of its approximants, minimised over R in {1, 2, 4, ...}.
  std::size_t ii_terms = 0;
  double ii_R = 0.0, ii_delta1 = 0.0, ii_delta2 = 0.0;
  double ii_bound = 0.0;
  bool ii_holds = true;
};

StabilityReport stability_correspondence(const GroupFunction& f, double eps, double gamma, double delta);

struct IsolatedEigenvectorReport {
  double eps = 0.0, theta = 0.0;
  double lambda = 0.0;
  std::size_t index = 0;
  int n = 0;                   // ceil(8 theta^-2 ln(1/theta))
  double theory_R = 0.0;       // 2 theta^-3 eps^-1 (1/(2 eps) + 1)^{2n}
  double theory_delta1 = 0.0;  // 3 theta^{1/2}
  double theory_delta2 = 0.0;  // theta
  std::size_t measured_R = 0;  // least R whose (R, theory_delta1) test fails on at most theta |Z| shifts
  double measured_delta2 = 0.0;
  bool passes = false;
};

// Checks every theta-isolated eigenvalue lambda >= theta of K_eps(f (x) conj f).
// Throws ValidationError("no qualifying eigenvalue") when there is none.
std::vector<IsolatedEigenvectorReport> isolated_eigenvector_check(const GroupFunction& f, double eps, double theta);

}  // namespace hofa
