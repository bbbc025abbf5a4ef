#include "hofa/gowers.hpp"

#include <cmath>
#include <numbers>

namespace hofa {

namespace {

void check_real(cplx z, const char* what) {
  if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z.real())))
    throw NumericError(std::string(what) + ": imaginary residue " + std::to_string(z.imag()));
}

void guard_direct(std::size_t n, int k, double limit) {
  if (std::pow(static_cast<double>(n), k + 1) > limit)
    throw ValidationError("direct Gowers average refused: |Z|^(k+1) exceeds the size guard");
}

double average(const std::vector<double>& v) {
  KahanSum s;
  for (double x : v) s.add(x);
  return s.value() / static_cast<double>(v.size());
}

}  // namespace

double uk_norm_pow(const GroupFunction& f, int k) {
  if (k < 1) throw ValidationError("Gowers order k must be >= 1");
  if (k == 1) return std::norm(mean(f));
  if (k == 2) {
    GroupFunction c = fourier_transform(f);
    KahanSum s;
    for (const auto& z : c.v) s.add(std::norm(z) * std::norm(z));
    return s.value();
  }
  std::vector<double> per(f.size());
  parallel_for(f.size(), [&](std::size_t t) { per[t] = uk_norm_pow(mult_derivative(f, t), k - 1); });
  return average(per);
}

double uk_norm(const GroupFunction& f, int k) {
  return std::pow(std::max(uk_norm_pow(f, k), 0.0), 1.0 / static_cast<double>(std::size_t{1} << k));
}

double uk_norm(const GroupFunction& f, const GowersConfig& cfg) {
  if (cfg.method == GowersMethod::direct) return uk_norm_direct(f, cfg.k, cfg.direct_limit);
  return uk_norm(f, cfg.k);
}

double uk_norm_direct(const GroupFunction& f, int k, double direct_limit) {
  std::vector<GroupFunction> fam(std::size_t{1} << k, f);
  cplx p = gowers_product_direct(fam, k, direct_limit);
  check_real(p, "uk_norm_direct");
  return std::pow(std::max(p.real(), 0.0), 1.0 / static_cast<double>(std::size_t{1} << k));
}

cplx gowers_product(const std::vector<GroupFunction>& family, int k) {
  if (k < 0) throw ValidationError("Gowers order k must be >= 0");
  if (family.size() != (std::size_t{1} << k)) throw ValidationError("gowers_product: family must have 2^k functions");
  for (const auto& f : family) require_same_group(family[0].group, f.group, "gowers_product");
  if (k == 0) return mean(family[0]);
  if (k == 1) return mean(family[0]) * std::conj(mean(family[1]));
  if (k == 2) {
    GroupFunction a = fourier_transform(family[0]), b = fourier_transform(family[1]);
    GroupFunction c = fourier_transform(family[2]), d = fourier_transform(family[3]);
    cplx s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]) * std::conj(c[i]) * d[i];
    return s;
  }
  const Group& g = family[0].group;
  std::size_t n = g.order(), half = family.size() / 2;
  std::vector<cplx> per(n);
  parallel_for(n, [&](std::size_t s) {
    std::vector<GroupFunction> sub(half);
    for (std::size_t v = 0; v < half; ++v) sub[v] = pointwise_mul(family[v], conj(shift(family[v + half], s)));
    per[s] = gowers_product(sub, k - 1);
  });
  KahanSum re, im;
  for (auto z : per) {
    re.add(z.real());
    im.add(z.imag());
  }
  return cplx(re.value(), im.value()) / static_cast<double>(n);
}

cplx gowers_product_direct(const std::vector<GroupFunction>& family, int k, double direct_limit) {
  if (k < 0) throw ValidationError("Gowers order k must be >= 0");
  if (family.size() != (std::size_t{1} << k)) throw ValidationError("gowers_product_direct: family must have 2^k functions");
  const Group& g = family[0].group;
  for (const auto& f : family) require_same_group(g, f.group, "gowers_product_direct");
  std::size_t n = g.order();
  guard_direct(n, k, direct_limit);
  std::size_t tuples = 1;
  for (int i = 0; i < k; ++i) tuples *= n;
  KahanSum re, im;
  std::vector<std::size_t> t(static_cast<std::size_t>(k));
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t code = 0; code < tuples; ++code) {
      std::size_t c = code;
      for (int i = 0; i < k; ++i) {
        t[static_cast<std::size_t>(i)] = c % n;
        c /= n;
      }
      cplx prod = 1.0;
      for (std::size_t v = 0; v < family.size(); ++v) {
        std::size_t y = x;
        int weight = 0;
        for (int i = 0; i < k; ++i)
          if (v >> i & 1U) {
            y = g.add(y, t[static_cast<std::size_t>(i)]);
            ++weight;
          }
        cplx val = family[v][y];
        prod *= (weight % 2) ? std::conj(val) : val;
      }
      re.add(prod.real());
      im.add(prod.imag());
    }
  }
  double denom = static_cast<double>(n) * static_cast<double>(tuples);
  return cplx(re.value(), im.value()) / denom;
}

double gowers_inner(const GroupFunction& f, const GroupFunction& g, int k) {
  if (k < 2) throw ValidationError("gowers_inner needs k >= 2");
  require_same_group(f.group, g.group, "gowers_inner");
  std::vector<double> per(f.size());
  parallel_for(f.size(), [&](std::size_t t) {
    per[t] = uk_norm_pow(pointwise_mul(f, conj(shift(g, t))), k - 1);
  });
  return average(per);
}

double u2_dual_norm(const GroupFunction& f) {
  GroupFunction c = fourier_transform(f);
  KahanSum s;
  for (const auto& z : c.v) s.add(std::pow(std::abs(z), 4.0 / 3.0));
  return std::pow(s.value(), 0.75);
}

GroupFunction poly_phase(const Group& g, const std::vector<std::int64_t>& coeffs) {
  if (g.rank() != 1) throw ValidationError("poly_phase needs a cyclic group");
  const std::int64_t n = g.factors()[0];
  GroupFunction out(g);
  for (std::int64_t x = 0; x < n; ++x) {
    __int128 acc = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) {
      __int128 a = coeffs[j] % n;
      if (a < 0) a += n;
      acc = (acc * x + a) % n;
    }
    double ang = 2.0 * std::numbers::pi * static_cast<double>(acc) / static_cast<double>(n);
    out[static_cast<std::size_t>(x)] = cplx(std::cos(ang), std::sin(ang));
  }
  return out;
}

}  // namespace hofa
