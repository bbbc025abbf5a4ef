#include "hofa/fourier_ops.hpp"

#include <cmath>

namespace hofa {

namespace {

void require_eps(double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ValidationError("epsilon must be > 0");
}

GroupFunction map_coefficients(const GroupFunction& f, const std::function<cplx(cplx)>& q) {
  GroupFunction c = fourier_transform(f);
  for (auto& x : c.v) x = q(x);
  return inverse_fourier_transform(c);
}

}  // namespace

cplx q_eps(cplx z, double eps) {
  require_eps(eps);
  double a = std::abs(z);
  if (a <= eps) return 0.0;
  return z * ((a - eps) / a);
}

cplx q_eps_prime(cplx z, double eps) {
  require_eps(eps);
  double a = std::abs(z);
  if (a <= eps) return z;
  return z * (eps / a);
}

double RadialProfile::operator()(double x) const {
  switch (kind) {
    case Kind::relu_shift:
      return std::max(x - eps, 0.0);
    case Kind::lipschitz_ramp:
      if (x >= eps) return x;
      if (x >= eps / 2.0) return 2.0 * x - eps;
      return 0.0;
  }
  return 0.0;
}

GroupFunction apply_K_r(const GroupFunction& f, const RadialProfile& r) {
  require_eps(r.eps);
  return map_coefficients(f, [&](cplx z) {
    double a = std::abs(z);
    return a == 0.0 ? cplx(0.0) : z * (r(a) / a);
  });
}

GroupFunction apply_K_eps(const GroupFunction& f, double eps) {
  require_eps(eps);
  return map_coefficients(f, [eps](cplx z) { return q_eps(z, eps); });
}

GroupFunction averaging_operator(const GroupFunction& f) {
  GroupFunction out(f.group);
  cplx m = mean(f);
  for (auto& x : out.v) x = m;
  return out;
}

GroupFunction sharp_cutoff(const GroupFunction& f, double eps) {
  if (eps < 0.0) throw ValidationError("cutoff threshold must be >= 0");
  return map_coefficients(f, [eps](cplx z) { return std::abs(z) >= eps ? z : cplx(0.0); });
}

GroupFunction dual_function(const GroupFunction& f, int k) {
  if (k == 2) return map_coefficients(f, [](cplx z) { return z * std::norm(z); });
  if (k != 3) throw ValidationError("dual_function supports k in {2,3}");
  const Group& g = f.group;
  if (g.order() > kDualDirectMaxOrder) throw ValidationError("dual_function(k=3): |Z| exceeds 256");
  // [f]_3 = E_s T^s f . [conj(Delta_s f)]_2
  std::size_t n = g.order();
  std::vector<GroupFunction> terms(n);
  parallel_for(n, [&](std::size_t s) {
    GroupFunction inner2 = dual_function(conj(mult_derivative(f, s)), 2);
    terms[s] = pointwise_mul(shift(f, s), inner2);
  });
  GroupFunction out(g);
  for (std::size_t x = 0; x < n; ++x) {
    KahanSum re, im;
    for (std::size_t s = 0; s < n; ++s) {
      re.add(terms[s][x].real());
      im.add(terms[s][x].imag());
    }
    out[x] = cplx(re.value(), im.value()) / static_cast<double>(n);
  }
  return out;
}

GroupFunction dual_function_direct(const GroupFunction& f, int k) {
  if (k < 1 || k > 3) throw ValidationError("dual_function_direct supports k in {1,2,3}");
  const Group& g = f.group;
  std::size_t n = g.order();
  if (n > kDualDirectMaxOrder || std::pow(static_cast<double>(n), k + 1) > 1e8)
    throw ValidationError("dual_function_direct: group too large for the direct average");
  std::size_t cube = std::size_t{1} << k;
  std::size_t tuples = 1;
  for (int i = 0; i < k; ++i) tuples *= n;
  GroupFunction out(g);
  std::vector<std::size_t> t(static_cast<std::size_t>(k));
  for (std::size_t x = 0; x < n; ++x) {
    cplx acc = 0.0;
    for (std::size_t code = 0; code < tuples; ++code) {
      std::size_t c = code;
      for (int i = 0; i < k; ++i) {
        t[static_cast<std::size_t>(i)] = c % n;
        c /= n;
      }
      cplx prod = 1.0;
      for (std::size_t v = 1; v < cube; ++v) {
        std::size_t y = x;
        int weight = 0;
        for (int i = 0; i < k; ++i)
          if (v >> i & 1U) {
            y = g.add(y, t[static_cast<std::size_t>(i)]);
            ++weight;
          }
        cplx val = f[y];
        prod *= ((weight + 1) % 2 == 1) ? std::conj(val) : val;
      }
      acc += prod;
    }
    out[x] = acc / static_cast<double>(tuples);
  }
  return out;
}

GroupFunction InvariantOperator::operator()(const GroupFunction& f) const {
  switch (kind) {
    case Kind::identity:
      return f;
    case Kind::denoise:
      return apply_K_eps(f, eps);
    case Kind::radial:
      return apply_K_r(f, profile);
    case Kind::average:
      return averaging_operator(f);
    case Kind::sharp_cutoff:
      return sharp_cutoff(f, eps);
    case Kind::dual:
      return dual_function(f, k);
  }
  return f;
}

std::string InvariantOperator::name() const {
  switch (kind) {
    case Kind::identity:
      return "identity";
    case Kind::denoise:
      return "denoise(" + std::to_string(eps) + ")";
    case Kind::radial:
      return "radial(" + std::to_string(eps) + ")";
    case Kind::average:
      return "average";
    case Kind::sharp_cutoff:
      return "sharp_cutoff(" + std::to_string(eps) + ")";
    case Kind::dual:
      return "dual(" + std::to_string(k) + ")";
  }
  return "?";
}

ZMatrix lift(const InvariantOperator& K, const ZMatrix& M) {
  std::vector<GroupFunction> d(M.size());
  parallel_for(M.size(), [&](std::size_t t) { d[t] = K(diagonal(M, t)); });
  return from_diagonals(d);
}

ZMatrix lift_outer(const InvariantOperator& K, const GroupFunction& f) {
  std::vector<GroupFunction> d(f.size());
  parallel_for(f.size(), [&](std::size_t t) { d[t] = K(mult_derivative(f, t)); });
  return from_diagonals(d);
}

double denoising_residual(const GroupFunction& f, double eps) {
  require_eps(eps);
  std::size_t n = f.size();
  std::vector<double> per(n);
  parallel_for(n, [&](std::size_t t) {
    GroupFunction c = fourier_transform(mult_derivative(f, t));
    KahanSum s;
    for (const auto& z : c.v) {
      double m = std::min(std::abs(z), eps);
      s.add(m * m);
    }
    per[t] = s.value();
  });
  KahanSum s;
  for (double x : per) s.add(x);
  return std::sqrt(s.value() / static_cast<double>(n));
}

double denoising_residual_matrix(const GroupFunction& f, double eps) {
  require_eps(eps);
  ZMatrix M = outer(f, f);
  return l2_norm(lift(InvariantOperator::denoise(eps), M) - M);
}

}  // namespace hofa
