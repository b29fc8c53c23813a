#include "cou/numeric.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace cou {

namespace {

struct LogFactorialTable {
  std::array<double, kMaxFactorialArg + 1> values{};
  LogFactorialTable() {
    // Kahan-accumulated partial sums of log(k).
    double sum = 0.0, comp = 0.0;
    values[0] = 0.0;
    for (int k = 1; k <= kMaxFactorialArg; ++k) {
      const double y = std::log(static_cast<double>(k)) - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
      values[k] = sum;
    }
  }
};

void neumaier(double& sum, double& comp, double v) {
  const double t = sum + v;
  if (std::abs(sum) >= std::abs(v))
    comp += (sum - t) + v;
  else
    comp += (v - t) + sum;
  sum = t;
}

}  // namespace

double log_factorial(int n) {
  static const LogFactorialTable table;
  if (n < 0 || n > kMaxFactorialArg)
    throw std::out_of_range("log_factorial: argument out of range");
  return table.values[static_cast<std::size_t>(n)];
}

std::uint64_t binomial(int a, int b) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (a > 66) throw std::out_of_range("binomial: upper index exceeds 66");
  if (b > a - b) b = a - b;
  std::uint64_t result = 1;
  // result * (a - b + k) / k stays integral at every step; the product is
  // split through the gcd-free update to avoid intermediate overflow.
  for (int k = 1; k <= b; ++k) {
    const std::uint64_t num = static_cast<std::uint64_t>(a - b + k);
    const std::uint64_t q = result / static_cast<std::uint64_t>(k);
    const std::uint64_t r = result % static_cast<std::uint64_t>(k);
    result = q * num + (r * num) / static_cast<std::uint64_t>(k);
  }
  return result;
}

cplx ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

void CompensatedSum::add(cplx v) {
  neumaier(sum_re_, comp_re_, v.real());
  neumaier(sum_im_, comp_im_, v.imag());
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace cou
