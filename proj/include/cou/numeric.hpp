#pragma once

#include <complex>
#include <cstdint>
#include <span>

namespace cou {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Largest n for which log_factorial() is tabulated.
inline constexpr int kMaxFactorialArg = 256;

/// log(n!) accumulated from a table of log(k); exact to a few ulps for n <= 256.
double log_factorial(int n);

/// Binomial coefficient C(a, b) in 64-bit integers; zero when b < 0 or b > a.
/// Exact for a <= 66.
std::uint64_t binomial(int a, int b);

/// i^k computed by k mod 4.
cplx ipow(int k);

/// (-1)^k
inline constexpr double sign_pow(int k) { return (k & 1) ? -1.0 : 1.0; }

/// Neumaier compensated accumulator for complex values.
class CompensatedSum {
public:
  void add(cplx v);
  void add(double v) { add(cplx(v, 0.0)); }
  cplx value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }

private:
  double sum_re_ = 0.0, comp_re_ = 0.0;
  double sum_im_ = 0.0, comp_im_ = 0.0;
};

/// Standard normal CDF.
double normal_cdf(double x);

}  // namespace cou
