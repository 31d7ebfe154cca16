// SPDX-License-Identifier: Apache-2.0
#include "satnet/bessel.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace satnet {
namespace {

// Alternating power series; usable while cancellation stays mild (x <~ 12).
double bessel_series(int n, double x) {
  const double half = 0.5 * x;
  double term = 1.0;
  for (int k = 1; k <= n; ++k) term *= half / k;  // (x/2)^n / n!
  double sum = term;
  const double x2 = -half * half;
  for (int m = 1; m < 80; ++m) {
    term *= x2 / (static_cast<double>(m) * (m + n));
    sum += term;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-30)) break;
  }
  return sum;
}

// Miller's algorithm: downward recurrence from a high starting order,
// normalized with J_0(x) + 2*sum_k J_{2k}(x) = 1.
double bessel_miller(int n, double x) {
  const int start = 2 * ((static_cast<int>(x) + n + 40) / 2);
  double jp1 = 0.0;
  double j = 1e-30;
  double norm = 0.0;
  double result = 0.0;
  for (int k = start; k >= 1; --k) {
    const double jm1 = 2.0 * k / x * j - jp1;
    jp1 = j;
    j = jm1;
    if ((k - 1) % 2 == 0) norm += (k == 1) ? j : 2.0 * j;
    if (k - 1 == n) result = j;
    // Rescale to avoid overflow of the unnormalized recurrence.
    if (std::abs(j) > 1e100) {
      j *= 1e-100;
      jp1 *= 1e-100;
      norm *= 1e-100;
      result *= 1e-100;
    }
  }
  return result / norm;
}

}  // namespace

double bessel_j(int order, double x) {
  if (order < 0) throw std::invalid_argument("bessel_j: order must be >= 0");
  if (x < 0.0) throw std::invalid_argument("bessel_j: x must be >= 0");
  if (x == 0.0) return order == 0 ? 1.0 : 0.0;
  if (x < 12.0) return bessel_series(order, x);
  return bessel_miller(order, x);
}

}  // namespace satnet
