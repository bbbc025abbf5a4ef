#include "hofa/group.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "fft.hpp"

namespace hofa {

namespace detail {

namespace {

struct PlanKey {
  std::vector<std::int64_t> dims;
  int sign;
  bool operator<(const PlanKey& o) const {
    return std::tie(dims, sign) < std::tie(o.dims, o.sign);
  }
};

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

// FFTW planning is not thread safe, execution with new-array execute is.
std::mutex& plan_mutex() {
  static std::mutex m;
  return m;
}

fftw_plan get_plan(const Group& g, int sign) {
  static std::map<PlanKey, std::unique_ptr<fftw_plan_s, PlanDeleter>> cache;
  std::lock_guard<std::mutex> lock(plan_mutex());
  PlanKey key{g.factors(), sign};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second.get();
  std::vector<int> n(g.factors().begin(), g.factors().end());
  std::size_t sz = g.order();
  fftw_complex* a = fftw_alloc_complex(sz);
  fftw_complex* b = fftw_alloc_complex(sz);
  fftw_plan p = fftw_plan_dft(static_cast<int>(n.size()), n.data(), a, b,
                              sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(a);
  fftw_free(b);
  if (!p) throw NumericError("FFTW failed to create a plan");
  cache.emplace(key, std::unique_ptr<fftw_plan_s, PlanDeleter>(p));
  return p;
}

}  // namespace

void dft(const Group& g, const cplx* in, cplx* out, int sign) {
  fftw_plan p = get_plan(g, sign);
  std::size_t sz = g.order();
  // plan was made out-of-place; use a scratch copy when in and out alias
  if (in == out) {
    CVec tmp(in, in + sz);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()),
                     reinterpret_cast<fftw_complex*>(out));
  } else {
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
  }
}

}  // namespace detail

Group::Group(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw ValidationError("group needs at least one factor");
  stride_.assign(factors_.size(), 1);
  order_ = 1;
  for (std::size_t j = factors_.size(); j-- > 0;) {
    if (factors_[j] < 1) throw ValidationError("group factor must be >= 1");
    stride_[j] = order_;
    order_ *= static_cast<std::size_t>(factors_[j]);
  }
}

Group Group::parse(const std::string& spec) {
  std::string s;
  for (char c : spec)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  std::vector<std::int64_t> f;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] != 'z') throw ValidationError("bad group spec '" + spec + "'");
    ++pos;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || pos - start > 12) throw ValidationError("bad group spec '" + spec + "'");
    f.push_back(std::stoll(s.substr(start, pos - start)));
    if (pos < s.size()) {
      if (s[pos] != 'x' || pos + 1 == s.size()) throw ValidationError("bad group spec '" + spec + "'");
      ++pos;
    }
  }
  if (f.empty()) throw ValidationError("empty group spec");
  return Group(std::move(f));
}

std::string Group::spec() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < factors_.size(); ++j) os << (j ? "xZ" : "Z") << factors_[j];
  return os.str();
}

Coords Group::coords(std::size_t idx) const {
  Coords c(factors_.size());
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    c[j] = static_cast<std::int64_t>((idx / stride_[j]) % static_cast<std::size_t>(factors_[j]));
  }
  return c;
}

std::size_t Group::index(const Coords& c) const {
  if (c.size() != factors_.size()) throw ValidationError("coordinate arity mismatch");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::int64_t r = c[j] % factors_[j];
    if (r < 0) r += factors_[j];
    idx += static_cast<std::size_t>(r) * stride_[j];
  }
  return idx;
}

std::size_t Group::add(std::size_t a, std::size_t b) const {
  if (factors_.size() == 1) {
    std::size_t s = a + b;
    return s >= order_ ? s - order_ : s;
  }
  std::size_t out = 0;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    auto n = static_cast<std::size_t>(factors_[j]);
    std::size_t s = (a / stride_[j]) % n + (b / stride_[j]) % n;
    if (s >= n) s -= n;
    out += s * stride_[j];
  }
  return out;
}

std::size_t Group::neg(std::size_t a) const {
  if (factors_.size() == 1) return a == 0 ? 0 : order_ - a;
  std::size_t out = 0;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    auto n = static_cast<std::size_t>(factors_[j]);
    std::size_t x = (a / stride_[j]) % n;
    out += (x == 0 ? 0 : n - x) * stride_[j];
  }
  return out;
}

std::size_t Group::sub(std::size_t a, std::size_t b) const { return add(a, neg(b)); }

cplx Group::character(std::size_t xi, std::size_t x) const {
  // accumulate the phase as an exact rational per factor to keep it in [0,1)
  double phase = 0.0;
  for (std::size_t j = 0; j < factors_.size(); ++j) {
    auto n = static_cast<std::size_t>(factors_[j]);
    std::size_t p = ((xi / stride_[j]) % n) * ((x / stride_[j]) % n) % n;
    phase += static_cast<double>(p) / static_cast<double>(n);
  }
  phase -= std::floor(phase);
  double ang = 2.0 * std::numbers::pi * phase;
  return {std::cos(ang), std::sin(ang)};
}

std::vector<Coords> Group::enumerate() const {
  std::vector<Coords> out;
  out.reserve(order_);
  for (std::size_t i = 0; i < order_; ++i) out.push_back(coords(i));
  return out;
}

GroupFunction::GroupFunction(const Group& g, CVec values) : group(g), v(std::move(values)) {
  if (v.size() != g.order()) throw ValidationError("function length does not match |Z|");
}

void require_same_group(const Group& a, const Group& b, const char* what) {
  if (a != b) throw ValidationError(std::string(what) + ": group mismatch (" + a.spec() + " vs " + b.spec() + ")");
}

GroupFunction& GroupFunction::operator+=(const GroupFunction& o) {
  require_same_group(group, o.group, "add");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.v[i];
  return *this;
}

GroupFunction& GroupFunction::operator-=(const GroupFunction& o) {
  require_same_group(group, o.group, "subtract");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] -= o.v[i];
  return *this;
}

GroupFunction& GroupFunction::operator*=(cplx c) {
  for (auto& x : v) x *= c;
  return *this;
}

GroupFunction operator+(GroupFunction a, const GroupFunction& b) { return a += b; }
GroupFunction operator-(GroupFunction a, const GroupFunction& b) { return a -= b; }
GroupFunction operator*(cplx c, GroupFunction a) { return a *= c; }

GroupFunction pointwise_mul(const GroupFunction& a, const GroupFunction& b) {
  require_same_group(a.group, b.group, "pointwise_mul");
  GroupFunction out(a.group);
  for (std::size_t i = 0; i < a.size(); ++i) out.v[i] = a.v[i] * b.v[i];
  return out;
}

GroupFunction conj(const GroupFunction& a) {
  GroupFunction out(a.group);
  for (std::size_t i = 0; i < a.size(); ++i) out.v[i] = std::conj(a.v[i]);
  return out;
}

cplx inner(const GroupFunction& f, const GroupFunction& g) {
  require_same_group(f.group, g.group, "inner");
  KahanSum re, im;
  for (std::size_t i = 0; i < f.size(); ++i) {
    cplx p = f.v[i] * std::conj(g.v[i]);
    re.add(p.real());
    im.add(p.imag());
  }
  double n = static_cast<double>(f.size());
  return {re.value() / n, im.value() / n};
}

double l2_norm(const GroupFunction& f) {
  KahanSum s;
  for (const auto& x : f.v) s.add(std::norm(x));
  return std::sqrt(s.value() / static_cast<double>(f.size()));
}

double sup_norm(const GroupFunction& f) {
  double m = 0.0;
  for (const auto& x : f.v) m = std::max(m, std::abs(x));
  return m;
}

cplx mean(const GroupFunction& f) {
  KahanSum re, im;
  for (const auto& x : f.v) {
    re.add(x.real());
    im.add(x.imag());
  }
  double n = static_cast<double>(f.size());
  return {re.value() / n, im.value() / n};
}

GroupFunction character_function(const Group& g, std::size_t xi) {
  GroupFunction out(g);
  for (std::size_t x = 0; x < g.order(); ++x) out.v[x] = g.character(xi, x);
  return out;
}

GroupFunction delta_function(const Group& g, std::size_t at, cplx value) {
  GroupFunction out(g);
  out.v.at(at) = value;
  return out;
}

GroupFunction fourier_transform(const GroupFunction& f) {
  GroupFunction out(f.group);
  detail::dft(f.group, f.v.data(), out.v.data(), -1);
  double inv = 1.0 / static_cast<double>(f.size());
  for (auto& x : out.v) x *= inv;
  return out;
}

GroupFunction inverse_fourier_transform(const GroupFunction& coeffs) {
  GroupFunction out(coeffs.group);
  detail::dft(coeffs.group, coeffs.v.data(), out.v.data(), +1);
  return out;
}

GroupFunction fourier_transform_direct(const GroupFunction& f) {
  const Group& g = f.group;
  GroupFunction out(g);
  double inv = 1.0 / static_cast<double>(g.order());
  for (std::size_t xi = 0; xi < g.order(); ++xi) {
    cplx s = 0.0;
    for (std::size_t x = 0; x < g.order(); ++x) s += f.v[x] * std::conj(g.character(xi, x));
    out.v[xi] = s * inv;
  }
  return out;
}

GroupFunction inverse_fourier_transform_direct(const GroupFunction& coeffs) {
  const Group& g = coeffs.group;
  GroupFunction out(g);
  for (std::size_t x = 0; x < g.order(); ++x) {
    cplx s = 0.0;
    for (std::size_t xi = 0; xi < g.order(); ++xi) s += coeffs.v[xi] * g.character(xi, x);
    out.v[x] = s;
  }
  return out;
}

GroupFunction shift(const GroupFunction& f, std::size_t h) {
  const Group& g = f.group;
  if (h >= g.order()) throw ValidationError("shift: element out of range");
  GroupFunction out(g);
  for (std::size_t x = 0; x < g.order(); ++x) out.v[x] = f.v[g.add(x, h)];
  return out;
}

GroupFunction mult_derivative(const GroupFunction& f, std::size_t t) {
  const Group& g = f.group;
  if (t >= g.order()) throw ValidationError("mult_derivative: element out of range");
  GroupFunction out(g);
  for (std::size_t x = 0; x < g.order(); ++x) out.v[x] = f.v[g.add(x, t)] * std::conj(f.v[x]);
  return out;
}

double wiener_norm(const GroupFunction& f) {
  GroupFunction c = fourier_transform(f);
  KahanSum s;
  for (const auto& x : c.v) s.add(std::abs(x));
  return s.value();
}

}  // namespace hofa
