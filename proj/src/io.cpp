#include "hofa/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace hofa {

namespace {

using nlohmann::json;

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  for (auto& s : out) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }
  return out;
}

[[noreturn]] void fail_at(const std::string& source, std::size_t line, const std::string& msg) {
  throw ValidationError(source + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& s, const std::string& source, std::size_t line) {
  double x = 0.0;
  const char* b = s.data();
  const char* e = b + s.size();
  if (b != e && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || p != e || s.empty()) fail_at(source, line, "not a number: '" + s + "'");
  if (!std::isfinite(x)) fail_at(source, line, "non-finite value");
  return x;
}

std::size_t parse_index(const std::string& s, const std::string& source, std::size_t line) {
  std::size_t x = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty()) fail_at(source, line, "bad index: '" + s + "'");
  return x;
}

bool blank(const std::string& line) { return line.find_first_not_of(" \t\r") == std::string::npos; }

std::string iso_time(std::chrono::system_clock::time_point tp) {
  std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) x = 0.0;  // drop negative zero
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  if (ec != std::errc()) throw NumericError("format_double failed");
  return std::string(buf, p);
}

void write_function_csv(std::ostream& os, const GroupFunction& f) {
  os << "index,re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i)
    os << i << ',' << format_double(f[i].real()) << ',' << format_double(f[i].imag()) << '\n';
}

void write_function_csv(const std::string& path, const GroupFunction& f) {
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open for writing: " + path);
  write_function_csv(os, f);
}

GroupFunction read_function_csv(std::istream& is, const Group& g, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  GroupFunction f(g);
  std::size_t rows = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto cells = split_commas(line);
    if (!header) {
      if (cells != std::vector<std::string>{"index", "re", "im"})
        fail_at(source, lineno, "expected header 'index,re,im'");
      header = true;
      continue;
    }
    if (cells.size() != 3) fail_at(source, lineno, "expected 3 fields, got " + std::to_string(cells.size()));
    std::size_t idx = parse_index(cells[0], source, lineno);
    if (idx != rows) fail_at(source, lineno, "index " + std::to_string(idx) + " out of order, expected " + std::to_string(rows));
    if (rows >= g.order()) fail_at(source, lineno, "more rows than |Z| = " + std::to_string(g.order()));
    f[rows] = cplx(parse_double(cells[1], source, lineno), parse_double(cells[2], source, lineno));
    ++rows;
  }
  if (!header) fail_at(source, lineno + 1, "missing header");
  if (rows != g.order())
    fail_at(source, lineno + 1,
            "got " + std::to_string(rows) + " rows, group " + g.spec() + " needs " + std::to_string(g.order()));
  return f;
}

GroupFunction read_function_csv(const std::string& path, const Group& g) {
  std::ifstream is(path);
  if (!is) throw ValidationError("cannot open: " + path);
  return read_function_csv(is, g, path);
}

void write_coefficients_csv(std::ostream& os, const GroupFunction& coeffs) {
  os << "chi,re,im\n";
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    os << i << ',' << format_double(coeffs[i].real()) << ',' << format_double(coeffs[i].imag()) << '\n';
}

void write_matrix_csv(std::ostream& os, const ZMatrix& M) {
  os << "# group=" << M.group.spec() << "\nrow,col,re,im\n";
  for (std::size_t r = 0; r < M.size(); ++r)
    for (std::size_t c = 0; c < M.size(); ++c)
      os << r << ',' << c << ',' << format_double(M(r, c).real()) << ',' << format_double(M(r, c).imag()) << '\n';
}

ZMatrix read_matrix_csv(std::istream& is, const std::string& source) {
  std::string line;
  std::size_t lineno = 0;
  ZMatrix M;
  bool have_group = false, header = false;
  std::vector<bool> seen;
  while (std::getline(is, line)) {
    ++lineno;
    if (blank(line)) continue;
    if (!have_group) {
      const std::string tag = "# group=";
      if (line.rfind(tag, 0) != 0) fail_at(source, lineno, "expected '# group=<spec>'");
      std::string spec = line.substr(tag.size());
      if (!spec.empty() && spec.back() == '\r') spec.pop_back();
      M = ZMatrix(Group::parse(spec));
      seen.assign(M.size() * M.size(), false);
      have_group = true;
      continue;
    }
    auto cells = split_commas(line);
    if (!header) {
      if (cells != std::vector<std::string>{"row", "col", "re", "im"})
        fail_at(source, lineno, "expected header 'row,col,re,im'");
      header = true;
      continue;
    }
    if (cells.size() != 4) fail_at(source, lineno, "expected 4 fields");
    std::size_t r = parse_index(cells[0], source, lineno), c = parse_index(cells[1], source, lineno);
    if (r >= M.size() || c >= M.size()) fail_at(source, lineno, "entry outside the group");
    if (seen[r * M.size() + c]) fail_at(source, lineno, "duplicate entry");
    seen[r * M.size() + c] = true;
    M(r, c) = cplx(parse_double(cells[2], source, lineno), parse_double(cells[3], source, lineno));
  }
  if (!header) fail_at(source, lineno + 1, "incomplete matrix file");
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) fail_at(source, lineno + 1, "missing entries");
  return M;
}

void write_series_csv(std::ostream& os, const DenoiseSeries& s) {
  os << "i,f_re,f_im,g_re,g_im,f2_re,f2_im,err\n";
  for (std::size_t i = 0; i < s.n; ++i) {
    os << i << ',' << format_double(s.f[i].real()) << ',' << format_double(s.f[i].imag()) << ','
       << format_double(s.g[i].real()) << ',' << format_double(s.g[i].imag()) << ',' << format_double(s.f2[i].real())
       << ',' << format_double(s.f2[i].imag()) << ',' << format_double(s.err[i]) << '\n';
  }
}

json report_envelope(const std::string& command, const std::string& group_spec, const json& config,
                     std::uint64_t seed, const ReportClock& clock) {
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - clock.t0).count();
  return json{{"tool", "hofa"},
              {"version", kVersion},
              {"command", command},
              {"group", group_spec},
              {"config", config},
              {"seed", seed},
              {"started_utc", iso_time(clock.started)},
              {"wall_clock_seconds", elapsed}};
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json to_json(const RegularizationReport& r) {
  json kept = json::array();
  for (std::size_t i = 0; i < r.kept.values.size(); ++i)
    kept.push_back({{"index", r.kept.indices[i]}, {"eigenvalue", r.kept.values[i]}, {"weight", r.weights[i]}});
  return json{{"epsilon", r.epsilon},
              {"rho", r.rho},
              {"continuous", r.continuous},
              {"kept", kept},
              {"eigenvalues", r.eigenvalues},
              {"u3_residual", r.u3_residual},
              {"l2_residual", r.l2_residual},
              {"separated", is_separated(r.kept.values, 0.0)},
              {"warnings", r.warnings}};
}

json to_json(const CharacterDecompositionReport& r) {
  json vecs = json::array();
  for (std::size_t i = 0; i < r.vectors.size(); ++i)
    vecs.push_back({{"index", i},
                    {"correlation", to_json(r.correlations[i])},
                    {"abs_correlation", std::abs(r.correlations[i])},
                    {"above_floor", static_cast<bool>(r.above_floor[i])}});
  return json{{"rho", r.rho},
              {"epsilon", r.epsilon},
              {"delta", r.delta},
              {"seed", r.seed},
              {"branch", r.branch},
              {"S", r.S},
              {"S_prime", r.S_prime},
              {"first_pass_top", r.first_pass_top},
              {"second_pass_top", r.second_pass_top},
              {"vectors", vecs},
              {"correlation_floor", r.correlation_floor},
              {"success", r.success}};
}

json to_json(const CharacterCertificate& c) {
  constexpr int kBins = 10;
  double hi = std::max(c.delta, 1e-300);
  std::vector<std::size_t> hist(kBins, 0);
  for (double x : c.per_shift_residuals) {
    int b = static_cast<int>(std::floor(x / hi * kBins));
    ++hist[std::clamp(b, 0, kBins - 1)];
  }
  return json{{"order", c.order},
              {"R", c.R},
              {"delta", c.delta},
              {"worst_shift", c.worst_t},
              {"max_dual_norm", c.max_dual_norm},
              {"notion", c.notion},
              {"residual_histogram", {{"upper", c.delta}, {"bins", hist}}}};
}

json to_json(const Order1Certificate& c) {
  return json{{"order", 1}, {"chi", c.chi}, {"coefficient", to_json(c.coefficient)}, {"residual", c.residual}};
}

json to_json(const RhoChoice& c) {
  return json{{"rho", c.rho},
              {"gap", c.gap},
              {"target_gap", c.target_gap},
              {"meets_target", c.meets_target},
              {"candidates", c.candidates},
              {"candidate_gaps", c.candidate_gaps}};
}

}  // namespace hofa
