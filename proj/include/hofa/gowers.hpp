#pragma once

#include <cstdint>
#include <vector>

#include "hofa/group.hpp"

namespace hofa {

enum class GowersMethod { recursive_fft, direct };

struct GowersConfig {
  int k = 2;
  GowersMethod method = GowersMethod::recursive_fft;
  // the direct average is refused when |Z|^(k+1) exceeds this
  double direct_limit = 1e8;
};

// ||f||_{U^k}^{2^k}. k = 1 gives |E f|^2, k = 2 is sum |fhat|^4, higher k
// recurse through E_t ||Delta_t f||_{U^{k-1}}^{2^{k-1}}.
double uk_norm_pow(const GroupFunction& f, int k);
double uk_norm(const GroupFunction& f, int k);
double uk_norm(const GroupFunction& f, const GowersConfig& cfg);
// Literal average over x, t_1..t_k of prod_v C^{|v|} f(x + v.t).
double uk_norm_direct(const GroupFunction& f, int k, double direct_limit = 1e8);

// <(f_v)>_{U^k} = E_{x,t} prod_v C^{|v|} f_v(x + v.t), where family[v] is indexed
// by the bit pattern v (bit i-1 = v_i). Evaluated by peeling off t_k and closing
// the last two dimensions in Fourier space.
cplx gowers_product(const std::vector<GroupFunction>& family, int k);
cplx gowers_product_direct(const std::vector<GroupFunction>& family, int k, double direct_limit = 1e8);
// <f,g>_{U^k}: f on vertices with v_k = 0, g on v_k = 1. Equals E_t ||f T^t conj g||_{U^{k-1}}^{2^{k-1}}.
double gowers_inner(const GroupFunction& f, const GroupFunction& g, int k);

// ||f||*_{U^2} = (sum |fhat|^{4/3})^{3/4}
double u2_dual_norm(const GroupFunction& f);

// x -> exp(2 pi i P(x) / N) on a cyclic group, P(x) = sum a_j x^j with integer a_j.
GroupFunction poly_phase(const Group& g, const std::vector<std::int64_t>& coeffs);

}  // namespace hofa
