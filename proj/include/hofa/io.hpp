#pragma once

#include <chrono>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hofa/algorithms.hpp"
#include "hofa/characters.hpp"
#include "hofa/zmatrix.hpp"

namespace hofa {

// 17 significant digits, locale independent.
std::string format_double(double x);

// `index,re,im`, one row per element in enumeration order.
void write_function_csv(std::ostream& os, const GroupFunction& f);
void write_function_csv(const std::string& path, const GroupFunction& f);
// Errors name the offending line (1-based, header is line 1).
GroupFunction read_function_csv(std::istream& is, const Group& g, const std::string& source = "<stream>");
GroupFunction read_function_csv(const std::string& path, const Group& g);

// `chi,re,im` for Fourier coefficients.
void write_coefficients_csv(std::ostream& os, const GroupFunction& coeffs);

// `# group=<spec>` then `row,col,re,im`.
void write_matrix_csv(std::ostream& os, const ZMatrix& M);
ZMatrix read_matrix_csv(std::istream& is, const std::string& source = "<stream>");

// `i,f_re,f_im,g_re,g_im,f2_re,f2_im,err`
void write_series_csv(std::ostream& os, const DenoiseSeries& s);

// Envelope shared by every CLI report.
struct ReportClock {
  std::chrono::system_clock::time_point started = std::chrono::system_clock::now();
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
};
nlohmann::json report_envelope(const std::string& command, const std::string& group_spec, const nlohmann::json& config,
                               std::uint64_t seed, const ReportClock& clock);

nlohmann::json to_json(cplx z);
nlohmann::json to_json(const RegularizationReport& r);
nlohmann::json to_json(const CharacterDecompositionReport& r);
nlohmann::json to_json(const CharacterCertificate& c);
nlohmann::json to_json(const Order1Certificate& c);
nlohmann::json to_json(const RhoChoice& c);

}  // namespace hofa
