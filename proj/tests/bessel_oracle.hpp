#pragma once

// Extended-precision Bessel values from the ascending series, used only as a
// test oracle. 100 decimal digits absorb the cancellation of the alternating
// series up to x = 50.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

namespace oracle {

using Real = boost::multiprecision::cpp_bin_float_100;

inline Real factorial(int n) {
  Real f = 1;
  for (int i = 2; i <= n; ++i)
    f *= i;
  return f;
}

inline Real harmonic(int n) {
  Real h = 0;
  for (int i = 1; i <= n; ++i)
    h += Real(1) / i;
  return h;
}

/// J_m(x) = sum_k (-1)^k (x/2)^{2k+m} / (k! (m+k)!), m >= 0.
inline Real J(int m, const Real &x) {
  const Real h = x / 2, q = -h * h;
  Real term = pow(h, m) / factorial(m), sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (Real(k) * (m + k));
    sum += term;
    if (abs(term) < abs(sum) * Real("1e-90") && k > x)
      break;
  }
  return sum;
}

/// Y_m(x) for m >= 0 from the Neumann series
///   pi Y_m = 2 J_m ln(x/2) - sum_{k<m} (m-k-1)!/k! (x/2)^{2k-m}
///            - sum_k (psi(k+1) + psi(m+k+1)) (-x^2/4)^k (x/2)^m / (k! (m+k)!).
inline Real Y(int m, const Real &x) {
  using boost::math::constants::euler;
  using boost::math::constants::pi;
  const Real h = x / 2, q = -h * h;
  Real s1 = 0;
  for (int k = 0; k < m; ++k)
    s1 += factorial(m - k - 1) / factorial(k) * pow(h, 2 * k - m);
  const Real g = euler<Real>();
  Real term = pow(h, m) / factorial(m);
  Real s2 = (-g + harmonic(0) - g + harmonic(m)) * term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (Real(k) * (m + k));
    const Real t = (harmonic(k) + harmonic(m + k) - 2 * g) * term;
    s2 += t;
    if (abs(t) < Real("1e-90") * (abs(s2) + 1) && k > x)
      break;
  }
  return (2 * J(m, x) * log(h) - s1 - s2) / pi<Real>();
}

} // namespace oracle
