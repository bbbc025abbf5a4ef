#include "hofa/characters.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hofa/fourier_ops.hpp"
#include "hofa/gowers.hpp"
#include "hofa/spectral.hpp"
#include "hofa/zmatrix.hpp"

namespace hofa {

namespace {

void require_l2_unit_ball(const GroupFunction& f, const char* what) {
  if (l2_norm(f) > 1.0 + 1e-9) throw ValidationError(std::string(what) + ": requires ||f||_2 <= 1");
}

void require_one_bounded(const GroupFunction& f, const char* what) {
  if (sup_norm(f) > 1.0 + 1e-9) throw ValidationError(std::string(what) + ": requires a 1-bounded function");
}

// Coefficient profile of one function: dual indices by decreasing modulus,
// tail[R] = sum of |c|^2 beyond the first R, dual[R] = (sum of first R |c|^{4/3})^{3/4}.
struct Profile {
  std::vector<std::size_t> order;
  std::vector<double> tail;
  std::vector<double> dual;

  double residual(std::size_t R) const { return std::sqrt(std::max(tail[std::min(R, order.size())], 0.0)); }
  double dual_norm(std::size_t R) const { return dual[std::min(R, order.size())]; }
  // least R with residual(R) <= d
  std::size_t terms_for(double d) const {
    for (std::size_t R = 0; R < tail.size(); ++R)
      if (residual(R) <= d) return R;
    return order.size();
  }
};

Profile profile(const GroupFunction& f) {
  GroupFunction c = fourier_transform(f);
  std::size_t n = c.size();
  Profile p;
  p.order.resize(n);
  std::iota(p.order.begin(), p.order.end(), 0);
  // sort on |c|^2, same order as |c| and no sqrt per comparison
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = std::norm(c[i]);
  std::stable_sort(p.order.begin(), p.order.end(), [&](std::size_t a, std::size_t b) { return sq[a] > sq[b]; });
  p.tail.assign(n + 1, 0.0);
  for (std::size_t i = n; i-- > 0;) p.tail[i] = p.tail[i + 1] + sq[p.order[i]];
  p.dual.assign(n + 1, 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s2 = sq[p.order[i]];
    acc += std::cbrt(s2 * s2);                // |c|^{4/3}
    p.dual[i + 1] = std::sqrt(acc * std::sqrt(acc));  // acc^{3/4}
  }
  return p;
}

std::vector<Profile> derivative_profiles(const GroupFunction& f) {
  std::vector<Profile> out(f.size());
  parallel_for(f.size(), [&](std::size_t t) { out[t] = profile(mult_derivative(f, t)); });
  return out;
}

}  // namespace

FourierStructureCertificate fourier_structure(const GroupFunction& f, std::size_t R) {
  Profile p = profile(f);
  FourierStructureCertificate c;
  c.R = R;
  c.delta = p.residual(R);
  std::size_t keep = std::min(R, p.order.size());
  c.support.assign(p.order.begin(), p.order.begin() + static_cast<std::ptrdiff_t>(keep));
  c.dual_norm = p.dual_norm(R);
  return c;
}

Order1Certificate order1_certificate(const GroupFunction& f) {
  require_l2_unit_ball(f, "order1_certificate");
  GroupFunction c = fourier_transform(f);
  Order1Certificate out;
  double best = -1.0;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (std::abs(c[i]) > best) {
      best = std::abs(c[i]);
      out.chi = i;
    }
  out.coefficient = c[out.chi];
  GroupFunction r = f - out.coefficient * character_function(f.group, out.chi);
  out.residual = l2_norm(r);
  return out;
}

CharacterCertificate quadratic_certificate(const GroupFunction& f, std::size_t R) {
  require_l2_unit_ball(f, "quadratic_certificate");
  auto prof = derivative_profiles(f);
  CharacterCertificate c;
  c.order = 2;
  c.R = R;
  c.per_shift_residuals.resize(f.size());
  for (std::size_t t = 0; t < f.size(); ++t) {
    c.per_shift_residuals[t] = prof[t].residual(R);
    c.max_dual_norm = std::max(c.max_dual_norm, prof[t].dual_norm(R));
    if (c.per_shift_residuals[t] > c.delta) {
      c.delta = c.per_shift_residuals[t];
      c.worst_t = t;
    }
  }
  return c;
}

WeakCharacterCertificate weak_quadratic_certificate(const GroupFunction& f, std::size_t R, double delta1) {
  require_l2_unit_ball(f, "weak_quadratic_certificate");
  auto prof = derivative_profiles(f);
  WeakCharacterCertificate w;
  w.R = R;
  w.delta1 = delta1;
  for (const auto& p : prof)
    if (p.residual(R) <= delta1) ++w.good_set_size;
  w.delta2 = 1.0 - static_cast<double>(w.good_set_size) / static_cast<double>(f.size());
  return w;
}

StabilityReport stability_correspondence(const GroupFunction& f, double eps, double gamma, double delta) {
  require_one_bounded(f, "stability_correspondence");
  if (!(eps > 0 && eps <= 1) || !(gamma > 0 && gamma <= 1) || !(delta > 0 && delta <= 1))
    throw ValidationError("stability_correspondence: eps, gamma, delta must lie in (0,1]");
  StabilityReport r;
  r.eps = eps;
  r.gamma = gamma;
  r.delta = delta;
  r.residual = denoising_residual(f, eps);
  std::size_t n = f.size();

  // (i)
  r.i_applies = r.residual <= gamma;
  r.i_R = 4.0 / (eps * eps * delta * delta);
  r.i_delta1 = std::sqrt(2.0 * gamma / delta);
  std::vector<double> res(n), dual(n);
  parallel_for(n, [&](std::size_t t) {
    GroupFunction d = mult_derivative(f, t);
    GroupFunction g = apply_K_eps(d, eps);
    res[t] = l2_norm(d - g);
    dual[t] = u2_dual_norm(g);
  });
  std::size_t bad = 0;
  for (std::size_t t = 0; t < n; ++t) {
    r.i_max_dual_norm = std::max(r.i_max_dual_norm, dual[t]);
    if (res[t] > r.i_delta1 || dual[t] > r.i_R) ++bad;
  }
  r.i_measured_delta2 = static_cast<double>(bad) / static_cast<double>(n);
  r.i_holds = !r.i_applies || r.i_measured_delta2 <= delta;

  // (ii)
  auto prof = derivative_profiles(f);
  r.ii_bound = INFINITY;
  for (std::size_t terms = 1;; terms *= 2) {
    std::size_t use = std::min(terms, n);
    double d1 = 0.0, rd = 0.0;
    for (const auto& p : prof) {
      d1 = std::max(d1, p.residual(use));
      rd = std::max(rd, p.dual_norm(use));
    }
    if (rd > 0.0) {
      double bound = 6.0 * std::pow(eps, 0.25) * std::sqrt(rd) + 4.0 * d1;
      if (bound < r.ii_bound) {
        r.ii_bound = bound;
        r.ii_terms = use;
        r.ii_R = rd;
        r.ii_delta1 = d1;
      }
    }
    if (use == n) break;
  }
  if (!std::isfinite(r.ii_bound)) r.ii_bound = 0.0;  // f = 0: every derivative vanishes
  r.ii_delta2 = 0.0;
  r.ii_holds = r.residual <= r.ii_bound + 1e-9;
  return r;
}

std::vector<IsolatedEigenvectorReport> isolated_eigenvector_check(const GroupFunction& f, double eps, double theta) {
  if (!(eps > 0 && eps <= 1) || !(theta > 0 && theta < 1))
    throw ValidationError("isolated_eigenvector_check: need eps in (0,1], theta in (0,1)");
  EigenDecomposition ed = eigendecompose(lift_outer(InvariantOperator::denoise(eps), f));
  std::vector<IsolatedEigenvectorReport> out;
  std::size_t n = f.size();
  int np = static_cast<int>(std::ceil(8.0 / (theta * theta) * std::log(1.0 / theta)));
  for (std::size_t i = 0; i < ed.size(); ++i) {
    double lam = ed.values[i];
    if (lam < theta || !is_theta_isolated(ed, lam, theta)) continue;
    IsolatedEigenvectorReport r;
    r.eps = eps;
    r.theta = theta;
    r.lambda = lam;
    r.index = i;
    r.n = np;
    r.theory_R = 2.0 / (theta * theta * theta * eps) * std::pow(1.0 / (2.0 * eps) + 1.0, 2.0 * np);
    r.theory_delta1 = 3.0 * std::sqrt(theta);
    r.theory_delta2 = theta;
    auto prof = derivative_profiles(ed.vector(i));
    std::vector<std::size_t> need(n);
    for (std::size_t t = 0; t < n; ++t) need[t] = prof[t].terms_for(r.theory_delta1);
    std::sort(need.begin(), need.end());
    auto allowed = static_cast<std::size_t>(std::floor(theta * static_cast<double>(n)));
    r.measured_R = need[n - 1 - std::min(allowed, n - 1)];
    double cap = std::min(r.theory_R, static_cast<double>(n));
    std::size_t bad = 0;
    for (auto k : need)
      if (static_cast<double>(k) > cap) ++bad;
    r.measured_delta2 = static_cast<double>(bad) / static_cast<double>(n);
    r.passes = r.measured_delta2 <= theta && static_cast<double>(r.measured_R) <= r.theory_R;
    out.push_back(r);
  }
  if (out.empty()) throw ValidationError("no qualifying eigenvalue");
  return out;
}

}  // namespace hofa
