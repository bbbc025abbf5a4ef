#pragma once

#include <string>

#include "hofa/group.hpp"
#include "hofa/zmatrix.hpp"

namespace hofa {

// q_eps(z) = z max(|z| - eps, 0) / |z|
cplx q_eps(cplx z, double eps);
// z - q_eps(z); its modulus is min(|z|, eps)
cplx q_eps_prime(cplx z, double eps);

// Radial profile r with r(0) = 0, applied as q_r(z) = z r(|z|) / |z|.
struct RadialProfile {
  enum class Kind { relu_shift, lipschitz_ramp };
  Kind kind = Kind::relu_shift;
  double eps = 0.1;

  // relu_shift: max(x - eps, 0)
  // lipschitz_ramp: x for x >= eps, 2x - eps on [eps/2, eps), 0 below
  double operator()(double x) const;
  static RadialProfile relu_shift(double eps) { return {Kind::relu_shift, eps}; }
  static RadialProfile lipschitz_ramp(double eps) { return {Kind::lipschitz_ramp, eps}; }
};

GroupFunction apply_K_r(const GroupFunction& f, const RadialProfile& r);
GroupFunction apply_K_eps(const GroupFunction& f, double eps);
// Constant function E_x f(x).
GroupFunction averaging_operator(const GroupFunction& f);
// Keep coefficients with |fhat| >= eps, zero the rest.
GroupFunction sharp_cutoff(const GroupFunction& f, double eps);

// Vertex dual function [f]_k(x) = E_{t_1..t_k} prod_{v != 0} C^{|v|+1} f(x + v.t).
// k = 2 uses the Fourier closed form sum_chi fhat |fhat|^2 chi; k = 3 is a direct
// average limited to |Z| <= 256.
GroupFunction dual_function(const GroupFunction& f, int k);
GroupFunction dual_function_direct(const GroupFunction& f, int k);
inline constexpr std::size_t kDualDirectMaxOrder = 256;

// Shift- and conjugation-invariant operator on functions.
struct InvariantOperator {
  enum class Kind { identity, denoise, radial, average, sharp_cutoff, dual };
  Kind kind = Kind::identity;
  double eps = 0.0;
  RadialProfile profile{};
  int k = 2;

  GroupFunction operator()(const GroupFunction& f) const;
  std::string name() const;

  static InvariantOperator identity() { return {Kind::identity, 0.0, {}, 2}; }
  static InvariantOperator denoise(double eps) { return {Kind::denoise, eps, {}, 2}; }
  static InvariantOperator radial(RadialProfile r) { return {Kind::radial, r.eps, r, 2}; }
  static InvariantOperator average() { return {Kind::average, 0.0, {}, 2}; }
  static InvariantOperator cutoff(double eps) { return {Kind::sharp_cutoff, eps, {}, 2}; }
  static InvariantOperator dual(int k) { return {Kind::dual, 0.0, {}, k}; }
};

// K applied to every diagonal: lift(K, M) = from_diagonals(K o D_M).
ZMatrix lift(const InvariantOperator& K, const ZMatrix& M);
// lift(K_eps, f (x) conj f) without materializing f (x) conj f.
ZMatrix lift_outer(const InvariantOperator& K, const GroupFunction& f);

// ||K_eps(f (x) conj f) - f (x) conj f||_2 via (E_t sum_chi min(|hat{Delta_t f}(chi)|, eps)^2)^{1/2}
double denoising_residual(const GroupFunction& f, double eps);
// Same quantity computed from the lifted matrix (reference route).
double denoising_residual_matrix(const GroupFunction& f, double eps);

}  // namespace hofa
