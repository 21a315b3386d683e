#pragma once

// Reference values computed independently of the library under test.

#include <quadmath.h>

#include <cmath>

namespace oracle {

// Power series for J_nu(x) in 128-bit floats. Fine for x up to ~40.
inline double bessel_j_series_q(double nu, double x) {
  const __float128 hx = 0.5Q * x;
  const __float128 q = -hx * hx;
  __float128 term = powq(hx, nu) / tgammaq(nu + 1.0Q);
  __float128 sum = term;
  for (int k = 1; k < 400; ++k) {
    term *= q / (k * (nu + k));
    sum += term;
    if (fabsq(term) < 1e-40Q * fabsq(sum) && k > 5) break;
  }
  return static_cast<double>(sum);
}

// Gauss hypergeometric series in 128-bit floats, |z| < 0.9.
inline double hyp2f1_series_q(double a, double b, double c, double z) {
  __float128 term = 1.0Q;
  __float128 sum = 1.0Q;
  for (int k = 0; k < 5000; ++k) {
    term *= (a + k) * (__float128)(b + k) / ((c + k) * (__float128)(k + 1)) * z;
    sum += term;
    if (fabsq(term) < 1e-36Q * fabsq(sum)) break;
  }
  return static_cast<double>(sum);
}

}  // namespace oracle
