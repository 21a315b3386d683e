#pragma once

// Gamma/Beta, Bessel J of real order, Gauss 2F1 and the Schoenberg kernel
// Omega_n. All functions are pure and thread-safe; domain violations throw
// rpd::DomainError, never return NaN.

#include <optional>
#include <string_view>
#include <vector>

namespace rpd::specfun {

enum class Method { series, asymptotic, recurrence, integral };

std::string_view to_string(Method m);

struct SpecFunResult {
  double value = 0.0;
  double est_error = 0.0;  // absolute
  Method method = Method::series;
};

// Lanczos approximation (g = 7, 9 terms) with reflection below 1/2.
double gamma(double a);
double log_gamma(double a);  // a > 0
double beta(double a, double b);

// Gamma(a) when b is absent, B(a, b) otherwise. Arguments must be positive.
double gamma_beta(double a, std::optional<double> b = std::nullopt);

// J_nu(x) for nu >= -1/2, x >= 0.
SpecFunResult bessel_j_result(double nu, double x);
double bessel_j(double nu, double x);

// {J_0(x), J_2(x), ..., J_2K(x)} by downward recurrence normalised with
// J_0 + 2 sum J_2p = 1.
std::vector<double> bessel_j_even_sequence(double x, int K);

// Gauss hypergeometric 2F1(a, b; c; z) for z in [0, 1).
SpecFunResult hyp2f1_result(double a, double b, double c, double z);
double hyp2f1(double a, double b, double c, double z);
// Same function parameterised by 1 - z, for arguments close to 1 where the
// complement would lose digits if formed by subtraction.
double hyp2f1_complement(double a, double b, double c, double one_minus_z);

// Schoenberg kernel Omega_n(s) = Gamma(q+1) (2/s)^q J_q(s), q = n/2 - 1.
double omega(int n, double s);

}  // namespace rpd::specfun
