#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hofa {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr const char* kVersion = "0.3.1";

// Bad input or parameters (CLI exit code 2).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Numerical breakdown or internal inconsistency (CLI exit code 3).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Worker count used by parallel_for. Initialised from HOFA_THREADS if set, else the core count.
int num_threads();
void set_num_threads(int n);

// Runs body(i) for i in [0, n). Work is split into contiguous chunks; results
// must be written to index-addressed storage so the output is schedule independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

// Neumaier-compensated sum.
class KahanSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace hofa
