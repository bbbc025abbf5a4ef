#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hofa/common.hpp"

namespace hofa {

using Coords = std::vector<std::int64_t>;

// Z = Z_{N1} x ... x Z_{Nd}. Elements are addressed by their mixed-radix index
// sum_j x_j * prod_{l>j} N_l (last coordinate fastest, identity at index 0).
// Dual characters use the same indexing: index of freq (xi_1..xi_d).
class Group {
 public:
  Group() : Group(std::vector<std::int64_t>{1}) {}
  explicit Group(std::vector<std::int64_t> factors);

  // "Z5", "Z2xZ4", case-insensitive.
  static Group parse(const std::string& spec);
  static Group cyclic(std::int64_t n) { return Group({n}); }

  std::string spec() const;
  std::size_t order() const { return order_; }
  std::size_t rank() const { return factors_.size(); }
  const std::vector<std::int64_t>& factors() const { return factors_; }

  Coords coords(std::size_t idx) const;
  std::size_t index(const Coords& c) const;  // reduces each coordinate mod N_j

  std::size_t add(std::size_t a, std::size_t b) const;
  std::size_t sub(std::size_t a, std::size_t b) const;
  std::size_t neg(std::size_t a) const;

  // chi_xi(x) = exp(2 pi i sum_j xi_j x_j / N_j)
  cplx character(std::size_t xi, std::size_t x) const;

  std::vector<Coords> enumerate() const;

  bool operator==(const Group& o) const { return factors_ == o.factors_; }
  bool operator!=(const Group& o) const { return !(*this == o); }

 private:
  std::vector<std::int64_t> factors_;
  std::vector<std::size_t> stride_;
  std::size_t order_ = 1;
};

// Complex function on Z in enumeration order. Geometry is the normalized one:
// <f,g> = E_x f(x) conj(g(x)).
struct GroupFunction {
  Group group;
  CVec v;

  GroupFunction() = default;
  explicit GroupFunction(const Group& g) : group(g), v(g.order(), cplx(0.0)) {}
  GroupFunction(const Group& g, CVec values);

  std::size_t size() const { return v.size(); }
  cplx& operator[](std::size_t i) { return v[i]; }
  const cplx& operator[](std::size_t i) const { return v[i]; }

  GroupFunction& operator+=(const GroupFunction& o);
  GroupFunction& operator-=(const GroupFunction& o);
  GroupFunction& operator*=(cplx c);
};

GroupFunction operator+(GroupFunction a, const GroupFunction& b);
GroupFunction operator-(GroupFunction a, const GroupFunction& b);
GroupFunction operator*(cplx c, GroupFunction a);
GroupFunction pointwise_mul(const GroupFunction& a, const GroupFunction& b);
GroupFunction conj(const GroupFunction& a);

void require_same_group(const Group& a, const Group& b, const char* what);

cplx inner(const GroupFunction& f, const GroupFunction& g);
double l2_norm(const GroupFunction& f);
double sup_norm(const GroupFunction& f);
cplx mean(const GroupFunction& f);

GroupFunction character_function(const Group& g, std::size_t xi);
GroupFunction delta_function(const Group& g, std::size_t at, cplx value = 1.0);

// fhat(chi) = E_x f(x) conj(chi(x)), output indexed by dual index. FFT backed.
GroupFunction fourier_transform(const GroupFunction& f);
// f(x) = sum_chi c(chi) chi(x).
GroupFunction inverse_fourier_transform(const GroupFunction& coeffs);
// O(|Z|^2) reference versions.
GroupFunction fourier_transform_direct(const GroupFunction& f);
GroupFunction inverse_fourier_transform_direct(const GroupFunction& coeffs);

// (T^h f)(x) = f(x+h)
GroupFunction shift(const GroupFunction& f, std::size_t h);
// Delta_t f(x) = f(x+t) conj(f(x))
GroupFunction mult_derivative(const GroupFunction& f, std::size_t t);

// Wiener norm sum_chi |fhat(chi)|.
double wiener_norm(const GroupFunction& f);

}  // namespace hofa
