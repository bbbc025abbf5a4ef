#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hofa/algorithms.hpp"
#include "hofa/characters.hpp"
#include "hofa/fourier_ops.hpp"
#include "hofa/gowers.hpp"
#include "hofa/io.hpp"
#include "hofa/spectral.hpp"

using nlohmann::json;
using namespace hofa;

namespace {

struct Common {
  std::string in;
  std::string group;
  std::string out;
  std::string report;
};

void add_input(CLI::App* cmd, Common& c) {
  cmd->add_option("--in", c.in, "function CSV (index,re,im)")->required();
  cmd->add_option("--group", c.group, "group spec, e.g. Z64 or Z2xZ4")->required();
}

void add_report(CLI::App* cmd, Common& c) { cmd->add_option("--report", c.report, "write the JSON report here instead of stdout"); }

void emit_json(const json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open for writing: " + path);
  os << j.dump(2) << '\n';
}

template <class Writer>
void emit_text(const std::string& path, Writer&& w) {
  if (path.empty()) {
    w(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw ValidationError("cannot open for writing: " + path);
  w(os);
}

void check_unit(const char* name, double x) {
  if (!(x > 0.0 && x <= 1.0)) throw ValidationError(std::string(name) + " must lie in (0,1]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral tools for quadratic Fourier analysis on finite abelian groups"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: HOFA_THREADS or core count)");

  Common c;
  double eps = 0.1, rho = 0.5, delta = 0.05, sigma = 0.3;
  int k = 2, order = 2;
  std::size_t R = 1, top_k = 6, n = 500, show = 10;
  std::uint64_t seed = 0;
  bool continuous = false;
  std::string save;

  auto* transform = app.add_subcommand("transform", "Fourier coefficients as CSV (chi,re,im)");
  add_input(transform, c);
  transform->add_option("--out", c.out, "output CSV (default stdout)");

  auto* gowers = app.add_subcommand("gowers", "U^k norm");
  add_input(gowers, c);
  add_report(gowers, c);
  gowers->add_option("--k", k, "order k >= 1")->check(CLI::PositiveNumber);

  auto* oracle = app.add_subcommand("oracle", "U^k norm by direct averaging (size-guarded)");
  add_input(oracle, c);
  add_report(oracle, c);
  oracle->add_option("--k", k, "order k >= 1")->check(CLI::PositiveNumber);

  auto* denoise = app.add_subcommand("denoise", "apply K_eps");
  add_input(denoise, c);
  denoise->add_option("--eps", eps);
  denoise->add_option("--out", c.out, "output CSV (default stdout)");

  auto* spectrum = app.add_subcommand("spectrum", "spectrum of K_eps(f (x) conj f)");
  add_input(spectrum, c);
  add_report(spectrum, c);
  spectrum->add_option("--eps", eps);
  spectrum->add_option("--top-k", show, "eigenvalues listed in the summary");
  spectrum->add_option("--save", save, "persist the decomposition (binary)");

  auto* regularize = app.add_subcommand("regularize", "U^3 regularization");
  add_input(regularize, c);
  add_report(regularize, c);
  regularize->add_option("--eps", eps);
  regularize->add_option("--rho", rho);
  regularize->add_flag("--continuous", continuous, "weight eigenpairs by clamp((mu - rho/2)/(rho/2), 0, 1)");
  regularize->add_option("--out", c.out, "f_reg CSV");

  auto* qchar = app.add_subcommand("qchar", "quadratic character decomposition");
  add_input(qchar, c);
  add_report(qchar, c);
  qchar->add_option("--eps", eps);
  qchar->add_option("--rho", rho);
  qchar->add_option("--delta", delta);
  qchar->add_option("--seed", seed);
  qchar->add_option("--out", c.out, "vectors CSV (index,v0_re,v0_im,...)");

  auto* certify = app.add_subcommand("certify", "character certificates");
  add_input(certify, c);
  add_report(certify, c);
  certify->add_option("--order", order)->check(CLI::IsMember({1, 2}));
  certify->add_option("--R", R, "number of Fourier terms");

  auto* fig2 = app.add_subcommand("demo-fig2", "noisy quadratic signal on Z_n, top-k eigenvector reconstruction");
  fig2->add_option("--n", n);
  fig2->add_option("--sigma", sigma);
  fig2->add_option("--eps", eps);
  fig2->add_option("--top-k", top_k);
  fig2->add_option("--seed", seed);
  fig2->add_option("--out", c.out, "series CSV (default stdout)");
  fig2->add_option("--report", c.report, "summary JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (threads != 0) set_num_threads(threads);
    ReportClock clock;
    CLI::App* cmd = app.get_subcommands().front();
    std::string name = cmd->get_name();
    auto load = [&] {
      Group g = Group::parse(c.group);
      if (g.order() > 4096) throw ValidationError("|Z| above the dense limit 4096");
      return read_function_csv(c.in, g);
    };
    json cfg = {{"in", c.in}, {"group", c.group}, {"threads", num_threads()}};

    if (name == "transform") {
      GroupFunction f = load();
      GroupFunction co = fourier_transform(f);
      emit_text(c.out, [&](std::ostream& os) { write_coefficients_csv(os, co); });
    } else if (name == "gowers" || name == "oracle") {
      GroupFunction f = load();
      cfg["k"] = k;
      double v = name == "gowers" ? uk_norm(f, k) : uk_norm_direct(f, k);
      json j = report_envelope(name, f.group.spec(), cfg, 0, clock);
      j["norm"] = v;
      emit_json(j, c.report);
    } else if (name == "denoise") {
      check_unit("eps", eps);
      GroupFunction f = load();
      GroupFunction out = apply_K_eps(f, eps);
      emit_text(c.out, [&](std::ostream& os) { write_function_csv(os, out); });
    } else if (name == "spectrum") {
      check_unit("eps", eps);
      GroupFunction f = load();
      EigenDecomposition ed = eigendecompose(lift_outer(InvariantOperator::denoise(eps), f));
      cfg["eps"] = eps;
      cfg["top_k"] = show;
      json j = report_envelope(name, f.group.spec(), cfg, 0, clock);
      std::vector<double> top(ed.values.begin(), ed.values.begin() + static_cast<std::ptrdiff_t>(std::min(show, ed.size())));
      j["top_eigenvalues"] = top;
      j["size"] = ed.size();
      std::ostringstream h;
      h << std::hex << eigendecomposition_hash(ed);
      j["hash"] = h.str();
      if (!save.empty()) {
        save_eigendecomposition(ed, save);
        j["saved_to"] = save;
      }
      emit_json(j, c.report);
    } else if (name == "regularize") {
      check_unit("eps", eps);
      check_unit("rho", rho);
      GroupFunction f = load();
      RegularizationReport r = continuous ? regularize_u3_continuous(f, rho, eps) : regularize_u3(f, rho, eps);
      cfg["eps"] = eps;
      cfg["rho"] = rho;
      cfg["continuous"] = continuous;
      json j = report_envelope(name, f.group.spec(), cfg, 0, clock);
      j["result"] = to_json(r);
      j["rho_choice"] = to_json(choose_rho(r.eigenvalues, rho));
      if (!c.out.empty()) {
        write_function_csv(c.out, r.f_reg);
        j["f_reg_csv"] = c.out;
      }
      emit_json(j, c.report);
    } else if (name == "qchar") {
      check_unit("eps", eps);
      check_unit("rho", rho);
      check_unit("delta", delta);
      GroupFunction f = load();
      CharacterDecompositionReport r = quadratic_character_decomposition(f, rho, eps, delta, seed);
      cfg["eps"] = eps;
      cfg["rho"] = rho;
      cfg["delta"] = delta;
      json j = report_envelope(name, f.group.spec(), cfg, seed, clock);
      j["result"] = to_json(r);
      if (!c.out.empty()) {
        std::ofstream os(c.out);
        if (!os) throw ValidationError("cannot open for writing: " + c.out);
        os << "index";
        for (std::size_t i = 0; i < r.vectors.size(); ++i) os << ",v" << i << "_re,v" << i << "_im";
        os << '\n';
        for (std::size_t x = 0; x < f.size(); ++x) {
          os << x;
          for (const auto& v : r.vectors) os << ',' << format_double(v[x].real()) << ',' << format_double(v[x].imag());
          os << '\n';
        }
        j["vectors_csv"] = c.out;
      }
      emit_json(j, c.report);
    } else if (name == "certify") {
      GroupFunction f = load();
      cfg["order"] = order;
      cfg["R"] = R;
      json j = report_envelope(name, f.group.spec(), cfg, 0, clock);
      if (order == 1) {
        FourierStructureCertificate fs = fourier_structure(f, R);
        j["result"] = to_json(order1_certificate(f));
        j["fourier_structure"] = {{"R", fs.R}, {"delta", fs.delta}, {"support", fs.support}, {"dual_norm", fs.dual_norm}};
      } else {
        j["result"] = to_json(quadratic_certificate(f, R));
      }
      emit_json(j, c.report);
    } else if (name == "demo-fig2") {
      check_unit("eps", eps);
      DenoiseSeries s = denoise_experiment(n, sigma, top_k, eps, seed);
      emit_text(c.out, [&](std::ostream& os) { write_series_csv(os, s); });
      json cfg2 = {{"n", n}, {"sigma", sigma}, {"eps", eps}, {"top_k", top_k}, {"threads", num_threads()}};
      json j = report_envelope(name, "Z" + std::to_string(n), cfg2, seed, clock);
      j["noise_l2"] = s.noise_l2;
      j["reconstruction_l2"] = s.recon_l2;
      j["signal_l2"] = s.signal_l2;
      j["top_eigenvalues"] = s.top_eigenvalues;
      if (!c.report.empty())
        emit_json(j, c.report);
      else if (!c.out.empty())
        std::cout << j.dump(2) << '\n';
    }
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return 3;
  }
}
