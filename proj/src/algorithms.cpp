#include "hofa/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "hofa/fourier_ops.hpp"
#include "hofa/gowers.hpp"

namespace hofa {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool in_unit_interval(double x) { return x > 0.0 && x <= 1.0; }

void require_params(const char* what, double rho, double eps) {
  if (!in_unit_interval(rho) || !in_unit_interval(eps))
    throw ValidationError(std::string(what) + ": rho and epsilon must lie in (0,1]");
}

using FunctionOp = std::function<GroupFunction(const GroupFunction&)>;

// op applied to every diagonal Delta_t f of f (x) conj f
ZMatrix lift_outer_with(const FunctionOp& op, const GroupFunction& f) {
  std::vector<GroupFunction> diags(f.size());
  parallel_for(f.size(), [&](std::size_t t) { diags[t] = op(mult_derivative(f, t)); });
  return from_diagonals(diags);
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  std::uint64_t base = seed_ ^ mix64(stream_ + kGolden);
  return mix64(base + (++counter_) * kGolden);
}

double CounterRng::uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double CounterRng::uniform_open() { return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53; }

double CounterRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double r = std::sqrt(-2.0 * std::log(uniform_open()));
  double a = 2.0 * M_PI * uniform();
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

double continuous_weight(double mu, double rho) { return std::clamp((mu - rho / 2.0) / (rho / 2.0), 0.0, 1.0); }

RegularizationReport regularize_from(const GroupFunction& f, const EigenDecomposition& ed, double rho, double epsilon,
                                     bool continuous) {
  require_same_group(f.group, ed.group, "regularize");
  RegularizationReport r;
  r.epsilon = epsilon;
  r.rho = rho;
  r.continuous = continuous;
  r.eigenvalues = ed.values;
  r.kept = spec_slice(ed, continuous ? rho / 2.0 : rho);
  r.f_reg = GroupFunction(f.group);
  for (std::size_t i = 0; i < r.kept.basis.size(); ++i) {
    double w = continuous ? continuous_weight(r.kept.values[i], rho) : 1.0;
    r.weights.push_back(w);
    const GroupFunction& v = r.kept.basis[i];
    cplx c = w * inner(f, v);
    for (std::size_t x = 0; x < f.size(); ++x) r.f_reg[x] += c * v[x];
  }
  GroupFunction diff = f - r.f_reg;
  r.l2_residual = l2_norm(diff);
  r.u3_residual = uk_norm(diff, 3);
  if (sup_norm(f) > 1.0 + 1e-9) r.warnings.push_back("input is not 1-bounded");
  return r;
}

RegularizationReport regularize_u3(const GroupFunction& f, double rho, double epsilon) {
  require_params("regularize_u3", rho, epsilon);
  EigenDecomposition ed = eigendecompose(lift_outer(InvariantOperator::denoise(epsilon), f));
  return regularize_from(f, ed, rho, epsilon, false);
}

RegularizationReport regularize_u3_continuous(const GroupFunction& f, double rho, double epsilon) {
  require_params("regularize_u3_continuous", rho, epsilon);
  EigenDecomposition ed = eigendecompose(lift_outer(InvariantOperator::denoise(epsilon), f));
  return regularize_from(f, ed, rho, epsilon, true);
}

RhoChoice choose_rho(const std::vector<double>& eigenvalues, double rho0) {
  RhoChoice c;
  c.target_gap = rho0 * rho0 * rho0 / 30.0;
  double lo = rho0 / 2.0, hi = rho0;
  auto gap = [&](double x) {
    double g = std::numeric_limits<double>::infinity();
    for (double mu : eigenvalues) g = std::min(g, std::abs(x - mu));
    return g;
  };
  // the gap is piecewise linear in rho; its maxima sit at endpoints or at
  // midpoints of consecutive eigenvalues
  c.candidates = {hi, lo};
  std::vector<double> s = eigenvalues;
  std::sort(s.begin(), s.end());
  for (std::size_t i = 1; i < s.size(); ++i) {
    double m = 0.5 * (s[i - 1] + s[i]);
    if (m >= lo && m <= hi) c.candidates.push_back(m);
  }
  std::sort(c.candidates.begin(), c.candidates.end(), std::greater<>());
  c.candidates.erase(std::unique(c.candidates.begin(), c.candidates.end()), c.candidates.end());
  c.gap = -1.0;
  for (double x : c.candidates) {
    double g = gap(x);
    c.candidate_gaps.push_back(g);
    // descending scan, so strict improvement keeps the largest rho on ties
    if (g > c.gap + 1e-15) {
      c.gap = g;
      c.rho = x;
    }
  }
  c.meets_target = c.gap >= c.target_gap;
  return c;
}

GroupFunction random_unit_vector(const std::vector<GroupFunction>& basis, std::uint64_t seed) {
  if (basis.empty()) throw ValidationError("random_unit_vector: empty basis");
  CounterRng rng(seed, 1);
  std::vector<cplx> x(basis.size());
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& c : x) {
      double re = rng.normal();
      double im = rng.normal();
      c = cplx(re, im);
      norm2 += std::norm(c);
    }
  } while (norm2 == 0.0);
  double s = 1.0 / std::sqrt(norm2);
  GroupFunction out(basis.front().group);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    require_same_group(out.group, basis[i].group, "random_unit_vector");
    for (std::size_t p = 0; p < out.size(); ++p) out[p] += s * x[i] * basis[i][p];
  }
  return out;
}

CharacterDecompositionReport quadratic_character_decomposition(const GroupFunction& f, double rho, double epsilon,
                                                               double delta, std::uint64_t seed) {
  require_params("quadratic_character_decomposition", rho, epsilon);
  if (!in_unit_interval(delta)) throw ValidationError("quadratic_character_decomposition: delta must lie in (0,1]");
  CharacterDecompositionReport r;
  r.rho = rho;
  r.epsilon = epsilon;
  r.delta = delta;
  r.seed = seed;

  RegularizationReport first = regularize_u3(f, rho, epsilon);
  r.first_pass_top = first.kept.values;
  r.S = first.kept.values.size();
  GroupFunction h;
  if (is_separated(r.first_pass_top, delta)) {
    r.branch = "separated";
    h = first.f_reg;
  } else {
    r.branch = "randomized";
    h = random_unit_vector(first.kept.basis, seed);
  }

  RegularizationReport second = regularize_u3(h, delta, epsilon);
  r.second_pass_top = second.kept.values;
  r.S_prime = second.kept.values.size();
  r.vectors = second.kept.basis;
  r.correlation_floor = std::sqrt(rho / 2.0) - 56.0 * std::pow(rho, 3.5);
  for (const auto& v : r.vectors) {
    cplx c = inner(f, v);
    r.correlations.push_back(c);
    r.above_floor.push_back(std::abs(c) >= r.correlation_floor);
  }
  r.success = is_separated(r.second_pass_top, delta) && r.S == r.S_prime;
  return r;
}

OrderIncrementResult order_increment(const GroupFunction& f, const std::vector<double>& eps_list,
                                     const std::vector<double>& rho_list) {
  if (eps_list.empty() || eps_list.size() != rho_list.size())
    throw ValidationError("order_increment: eps_list and rho_list must be non-empty and of equal length");
  std::size_t k = eps_list.size();
  if (k > 3) throw ValidationError("order_increment: k > 3 is not supported");
  for (std::size_t j = 0; j < k; ++j)
    if (!in_unit_interval(eps_list[j]) || !in_unit_interval(rho_list[j]))
      throw ValidationError("order_increment: parameters must lie in (0,1]");
  if (k == 3 && f.size() > 128) throw ValidationError("order_increment: k = 3 limited to |Z| <= 128");

  // O_{j} for j = 0..k-1
  std::vector<FunctionOp> ops;
  ops.push_back([](const GroupFunction& g) { return averaging_operator(g); });
  double eps1 = eps_list[0];
  ops.push_back([eps1](const GroupFunction& g) { return apply_K_eps(g, eps1); });
  for (std::size_t j = 2; j < k; ++j) {
    FunctionOp prev = ops[j - 1];
    double rho_j = rho_list[j - 1];
    ops.push_back([prev, rho_j](const GroupFunction& g) {
      EigenDecomposition ed = eigendecompose(lift_outer_with(prev, g));
      return project(g, spec_slice(ed, rho_j));
    });
  }

  EigenDecomposition ed = eigendecompose(lift_outer_with(ops[k - 1], f));
  OrderIncrementResult out;
  out.eigenvalues = ed.values;
  out.output = project(f, spec_slice(ed, rho_list[k - 1]));
  return out;
}

DenoiseSeries denoise_experiment(std::size_t n, double noise_sigma, std::size_t top_k, double epsilon,
                                 std::uint64_t seed) {
  if (n < 8) throw ValidationError("denoise_experiment: n must be >= 8");
  if (!in_unit_interval(epsilon)) throw ValidationError("denoise_experiment: epsilon must lie in (0,1]");
  if (noise_sigma < 0.0) throw ValidationError("denoise_experiment: noise sigma must be >= 0");
  DenoiseSeries s;
  s.n = n;
  s.sigma = noise_sigma;
  s.epsilon = epsilon;
  s.top_k = top_k;
  s.seed = seed;
  Group grp = Group::cyclic(static_cast<std::int64_t>(n));
  s.f = GroupFunction(grp);
  s.g = GroupFunction(grp);
  CounterRng rng(seed, 0);
  for (std::size_t i = 0; i < n; ++i) {
    double x = static_cast<double>(i);
    s.f[i] = std::sin(8.0 * x * x + 3.0 * x + 1.0);
    s.g[i] = s.f[i] + noise_sigma * rng.normal();
  }
  EigenDecomposition ed = eigendecompose(lift_outer(InvariantOperator::denoise(epsilon), s.g));
  std::size_t keep = std::min(top_k, ed.size());
  std::vector<GroupFunction> basis;
  for (std::size_t i = 0; i < keep; ++i) {
    basis.push_back(ed.vector(i));
    s.top_eigenvalues.push_back(ed.values[i]);
  }
  s.f2 = project_onto(s.g, basis);
  s.err.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.err[i] = std::abs(s.f[i] - s.f2[i]);
  s.noise_l2 = l2_norm(s.g - s.f);
  s.recon_l2 = l2_norm(s.f - s.f2);
  s.signal_l2 = l2_norm(s.f);
  return s;
}

}  // namespace hofa
