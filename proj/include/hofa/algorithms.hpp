#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hofa/spectral.hpp"

namespace hofa {

// Counter-based generator: draw i of stream s is splitmix64(seed, s, i).
// Normals come from Box-Muller on pairs of uniforms, so sequences are
// reproducible across platforms up to libm rounding of log/cos/sin.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}
  std::uint64_t next_u64();
  double uniform();       // [0, 1)
  double uniform_open();  // (0, 1]
  double normal();
  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  std::uint64_t seed_, stream_, counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct RegularizationReport {
  double epsilon = 0.0, rho = 0.0;
  bool continuous = false;
  GroupFunction f_reg;
  SpectrumSlice kept;             // eigenpairs >= rho (continuous: >= rho/2)
  std::vector<double> weights;    // per kept eigenpair, 1 for the discrete variant
  std::vector<double> eigenvalues;  // full spectrum of K_eps(f (x) conj f), descending
  double u3_residual = 0.0;       // ||f - f_reg||_{U^3}
  double l2_residual = 0.0;       // ||f - f_reg||_2
  std::vector<std::string> warnings;
};

// f_reg = sum_{mu_i >= rho} <f, v_i> v_i over eigenpairs of K_eps(f (x) conj f).
RegularizationReport regularize_u3(const GroupFunction& f, double rho, double epsilon);
// Average of the discrete output over rho' uniform in [rho/2, rho]:
// weight w(mu) = clamp((mu - rho/2) / (rho/2), 0, 1).
RegularizationReport regularize_u3_continuous(const GroupFunction& f, double rho, double epsilon);
double continuous_weight(double mu, double rho);

// Output of the regularization applied to an existing decomposition.
RegularizationReport regularize_from(const GroupFunction& f, const EigenDecomposition& ed, double rho,
                                     double epsilon, bool continuous);

struct RhoChoice {
  double rho = 0.0;
  double gap = 0.0;              // min distance from rho to the spectrum
  double target_gap = 0.0;       // rho0^3 / 30
  bool meets_target = false;
  std::vector<double> candidates;
  std::vector<double> candidate_gaps;
};

// Largest rho in [rho0/2, rho0] maximising the two-sided gap to the spectrum.
RhoChoice choose_rho(const std::vector<double>& eigenvalues, double rho0);

// X / |X| with X a standard complex Gaussian vector of coefficients.
GroupFunction random_unit_vector(const std::vector<GroupFunction>& basis, std::uint64_t seed);

struct CharacterDecompositionReport {
  double rho = 0.0, epsilon = 0.0, delta = 0.0;
  std::uint64_t seed = 0;
  std::string branch;  // "separated" or "randomized"
  std::size_t S = 0, S_prime = 0;
  std::vector<double> first_pass_top;   // eigenvalues >= rho of the first pass
  std::vector<double> second_pass_top;  // eigenvalues >= delta of the second pass
  std::vector<GroupFunction> vectors;   // v'_i
  std::vector<cplx> correlations;       // <f, v'_i>
  double correlation_floor = 0.0;       // sqrt(rho/2) - 56 rho^{7/2}
  std::vector<bool> above_floor;
  bool success = false;
};

CharacterDecompositionReport quadratic_character_decomposition(const GroupFunction& f, double rho, double epsilon,
                                                               double delta, std::uint64_t seed);

struct OrderIncrementResult {
  GroupFunction output;
  std::vector<double> eigenvalues;  // spectrum of the last lifted matrix (k = 1: sorted |fhat|^2)
};

// Iterated regularization. Operators on functions: O_0 = averaging,
// O_1 = K_{eps_1}, O_j(g) = projection of g onto eigenvectors >= rho_j of
// lift(O_{j-1})(g (x) conj g). Output for k is the projection of f at rho_k
// over lift(O_{k-1})(f (x) conj f): k = 1 is Fourier truncation |fhat|^2 >= rho_1,
// k = 2 is regularize_u3(f, rho_2, eps_1). eps_j for j >= 2 is unused. k <= 3.
OrderIncrementResult order_increment(const GroupFunction& f, const std::vector<double>& eps_list,
                                     const std::vector<double>& rho_list);

struct DenoiseSeries {
  std::size_t n = 0;
  double sigma = 0.0, epsilon = 0.0;
  std::size_t top_k = 0;
  std::uint64_t seed = 0;
  GroupFunction f, g, f2;
  std::vector<double> err;  // |f(i) - f2(i)|
  std::vector<double> top_eigenvalues;
  double noise_l2 = 0.0;    // ||g - f||_2
  double recon_l2 = 0.0;    // ||f - f2||_2
  double signal_l2 = 0.0;   // ||f||_2
};

// f(i) = sin(8 i^2 + 3 i + 1) (radians) on Z_n, g = f + sigma * N(0,1) noise,
// f2 = projection of g onto the top_k eigenvectors of K_eps(g (x) conj g).
DenoiseSeries denoise_experiment(std::size_t n, double noise_sigma, std::size_t top_k, double epsilon,
                                 std::uint64_t seed);

}  // namespace hofa
