#include "rpd/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "rpd/errors.hpp"
#include "rpd/quadrature.hpp"

namespace rpd::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_sum(double z) {
  double x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  return x;
}

bool is_nonpositive_integer(double a) { return a <= 0.0 && a == std::floor(a); }

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// Power series: (x/2)^nu / Gamma(nu+1) * sum_j (-x^2/4)^j / (j! (nu+1)_j).
SpecFunResult bessel_series(double nu, double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  double abs_sum = 1.0;
  for (int j = 1; j < 500; ++j) {
    term *= q / (j * (nu + j));
    sum += term;
    abs_sum += std::abs(term);
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  double pref;
  if (nu + 1.0 < 170.0) {
    pref = std::pow(0.5 * x, nu) / gamma(nu + 1.0);
  } else {
    pref = std::exp(nu * std::log(0.5 * x) - log_gamma(nu + 1.0));
  }
  return {pref * sum, 4.0 * kEps * std::abs(pref) * abs_sum, Method::series};
}

// Hankel expansion; empty result when the terms stop decreasing before
// reaching double precision.
std::optional<SpecFunResult> bessel_hankel(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double p = 1.0;
  double q = 0.0;
  bool converged = false;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (k * 8.0 * x);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    const int sign = ((k / 2) % 2 == 0) ? 1 : -1;
    if (k % 2 == 0) {
      p += sign * term;
    } else {
      q += sign * term;
    }
    if (std::abs(term) < 1e-17) {
      converged = true;
      break;
    }
  }
  if (!converged) return std::nullopt;
  const double phase = (0.5 * nu + 0.25) * kPi;
  const double cx = std::cos(x);
  const double sx = std::sin(x);
  const double cphi = std::cos(phase);
  const double sphi = std::sin(phase);
  const double cos_chi = cx * cphi + sx * sphi;
  const double sin_chi = sx * cphi - cx * sphi;
  const double amp = std::sqrt(2.0 / (kPi * x));
  const double value = amp * (p * cos_chi - q * sin_chi);
  return SpecFunResult{value, amp * (8.0 * kEps * (1.0 + x * kEps) + 1e-17), Method::asymptotic};
}

// Start index for downward recurrence: far enough past the turning point
// that the minimal solution dominates to double precision.
int miller_start(double order, double x) {
  const double top = std::max(order, std::ceil(x));
  return static_cast<int>(top) + 30 + static_cast<int>(std::ceil(10.0 * std::cbrt(x)));
}

// Miller's algorithm for J_nu, normalised by the Neumann identity
// (x/2)^a = sum_j (a + 2j) Gamma(a + j) / j! * J_{a+2j}(x).
SpecFunResult bessel_miller(double nu, double x) {
  double alpha;
  int n0;
  if (nu < 0.0) {
    alpha = nu;
    n0 = 0;
  } else {
    n0 = static_cast<int>(std::floor(nu));
    alpha = nu - n0;
  }
  int top = std::max(miller_start(nu, x), n0 + 2);
  if (top % 2 != 0) ++top;

  std::vector<double> weight(static_cast<std::size_t>(top / 2) + 1);
  weight[0] = gamma(alpha + 1.0);
  double g = gamma(alpha + 1.0);  // Gamma(alpha + j) / j! at j = 1
  for (int j = 1; j <= top / 2; ++j) {
    if (j > 1) g *= (alpha + j - 1.0) / j;
    weight[static_cast<std::size_t>(j)] = (alpha + 2.0 * j) * g;
  }

  double f_next = 0.0;
  double f_cur = 1e-30;
  double norm = 0.0;
  double target = 0.0;
  for (int i = top;; --i) {
    if (i == n0) target = f_cur;
    if (i % 2 == 0) norm += weight[static_cast<std::size_t>(i / 2)] * f_cur;
    if (i == 0) break;
    const double f_prev = 2.0 * (alpha + i) / x * f_cur - f_next;
    f_next = f_cur;
    f_cur = f_prev;
    if (std::abs(f_cur) > 1e250) {
      f_cur *= 1e-250;
      f_next *= 1e-250;
      norm *= 1e-250;
      target *= 1e-250;
    }
  }
  const double value = target * std::pow(0.5 * x, alpha) / norm;
  return {value, 16.0 * kEps * (std::abs(value) + 1e-3 * kEps) * std::sqrt(top), Method::recurrence};
}

double hyp2f1_series(double a, double b, double c, double z, double* err) {
  double term = 1.0;
  double sum = 1.0;
  double abs_sum = 1.0;
  for (int k = 1; k < 20000; ++k) {
    term *= (a + k - 1.0) * (b + k - 1.0) / ((c + k - 1.0) * k) * z;
    sum += term;
    abs_sum += std::abs(term);
    if (term == 0.0 || std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (err != nullptr) *err = 4.0 * kEps * abs_sum;
      return sum;
    }
  }
  throw NumericalFailure("2F1 series did not converge", std::abs(term));
}

// Euler integral with c > b > 0; w = 1 - z is passed separately.
double hyp2f1_euler(double a, double b, double c, double w, double* err) {
  const quad::Integrand f = [&](const quad::Abscissa& v) {
    const double x = v.value();
    const double one_minus_v = -v.distance_to(1.0);
    const double base = one_minus_v + x * w;
    return std::pow(x, b - 1.0) * std::pow(one_minus_v, c - b - 1.0) * std::pow(base, -a);
  };
  const double min_exp = std::min({b - 1.0, c - b - 1.0, 0.0});
  const double bnorm = beta(b, c - b);
  // Three levels fix the magnitude; the tolerance below is relative to it.
  const auto coarse = quad::tanh_sinh(f, 0.0, 1.0, std::numeric_limits<double>::max(), 3, min_exp);
  const double scale = std::max(std::abs(coarse.value), 1e-300);
  const auto fine = quad::tanh_sinh(f, 0.0, 1.0, 1e-13 * scale, 14, min_exp);
  if (err != nullptr) *err = (fine.est_error + 4.0 * kEps * scale) / bnorm;
  return fine.value / bnorm;
}

SpecFunResult hyp2f1_impl(double a, double b, double c, double z, double w) {
  require(!(c <= 0.0), "2F1 requires c > 0");
  require(!is_nonpositive_integer(c), "2F1 undefined for nonpositive integer c");
  require(z >= 0.0 && w > 0.0, "2F1 requires z in [0, 1)");
  if (z == 0.0) return {1.0, 0.0, Method::series};
  double err = 0.0;
  if (z > 0.5) {
    if (c > b && b > 0.0) {
      const double v = hyp2f1_euler(a, b, c, w, &err);
      return {v, err, Method::integral};
    }
    if (c > a && a > 0.0) {
      const double v = hyp2f1_euler(b, a, c, w, &err);
      return {v, err, Method::integral};
    }
  }
  const double v = hyp2f1_series(a, b, c, z, &err);
  return {v, err, Method::series};
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::series: return "series";
    case Method::asymptotic: return "asymptotic";
    case Method::recurrence: return "recurrence";
    case Method::integral: return "integral";
  }
  return "unknown";
}

double gamma(double a) {
  require(!std::isnan(a), "gamma of NaN");
  require(!is_nonpositive_integer(a), "gamma has poles at nonpositive integers");
  if (a < 0.5) {
    return kPi / (std::sin(kPi * a) * gamma(1.0 - a));
  }
  require(a < 171.6, "gamma overflows for arguments above 171.6");
  if (a >= 20.0) {
    // Stirling; the Lanczos sum tends to c0 = 1 - 1.9e-13 for large a.
    const double w = 1.0 / a;
    const double w2 = w * w;
    const double corr = w * (1.0 / 12 - w2 * (1.0 / 360 - w2 * (1.0 / 1260 - w2 / 1680)));
    const double half = std::pow(a, 0.5 * (a - 0.5));
    return std::sqrt(2.0 * kPi) * half * (half * std::exp(-a)) * std::exp(corr);
  }
  const double z = a - 1.0;
  const double t = z + kLanczosG + 0.5;
  const double half = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * kPi) * half * (half * std::exp(-t)) * lanczos_sum(z);
}

double log_gamma(double a) {
  require(a > 0.0, "log_gamma requires a positive argument");
  if (a < 0.5) return log_gamma(a + 1.0) - std::log(a);
  const double z = a - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

double beta(double a, double b) {
  require(a > 0.0 && b > 0.0, "beta requires positive arguments");
  if (a + b < 170.0) return gamma(a) * gamma(b) / gamma(a + b);
  return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b));
}

double gamma_beta(double a, std::optional<double> b) {
  require(a > 0.0, "gamma_beta requires a > 0");
  if (!b) return gamma(a);
  require(*b > 0.0, "gamma_beta requires b > 0");
  return beta(a, *b);
}

SpecFunResult bessel_j_result(double nu, double x) {
  require(!std::isnan(nu) && !std::isnan(x), "bessel_j of NaN");
  require(nu >= -0.5, "bessel_j requires nu >= -1/2");
  require(x >= 0.0, "bessel_j requires x >= 0");
  require(std::isfinite(x), "bessel_j requires finite x");
  if (x == 0.0) {
    require(nu >= 0.0, "J_nu(0) is singular for negative order");
    return {nu == 0.0 ? 1.0 : 0.0, 0.0, Method::series};
  }
  if (0.25 * x * x <= std::max(1.0, nu + 1.0)) return bessel_series(nu, x);
  if (x >= 25.0 && x >= 0.5 * nu * nu) {
    if (auto r = bessel_hankel(nu, x)) return *r;
  }
  return bessel_miller(nu, x);
}

double bessel_j(double nu, double x) { return bessel_j_result(nu, x).value; }

std::vector<double> bessel_j_even_sequence(double x, int K) {
  require(K >= 1, "bessel_j_even_sequence requires K >= 1");
  require(x > 0.0 && std::isfinite(x), "bessel_j_even_sequence requires x > 0");
  int top = std::max(2 * K + 20 + static_cast<int>(std::ceil(x)), miller_start(2.0 * K, x));
  if (top % 2 != 0) ++top;

  std::vector<double> even(static_cast<std::size_t>(K) + 1, 0.0);
  double f_next = 0.0;
  double f_cur = 1e-30;
  double norm = 0.0;
  for (int i = top;; --i) {
    if (i % 2 == 0) {
      norm += (i == 0 ? 1.0 : 2.0) * f_cur;
      if (i / 2 <= K) even[static_cast<std::size_t>(i / 2)] = f_cur;
    }
    if (i == 0) break;
    const double f_prev = 2.0 * i / x * f_cur - f_next;
    f_next = f_cur;
    f_cur = f_prev;
    if (std::abs(f_cur) > 1e250) {
      f_cur *= 1e-250;
      f_next *= 1e-250;
      norm *= 1e-250;
      for (double& v : even) v *= 1e-250;
    }
  }
  for (double& v : even) v /= norm;
  return even;
}

SpecFunResult hyp2f1_result(double a, double b, double c, double z) {
  require(!std::isnan(z), "2F1 of NaN");
  require(z < 1.0, "2F1 requires z < 1");
  return hyp2f1_impl(a, b, c, z, 1.0 - z);
}

double hyp2f1(double a, double b, double c, double z) { return hyp2f1_result(a, b, c, z).value; }

double hyp2f1_complement(double a, double b, double c, double one_minus_z) {
  require(one_minus_z > 0.0 && one_minus_z <= 1.0, "2F1 requires 1 - z in (0, 1]");
  return hyp2f1_impl(a, b, c, 1.0 - one_minus_z, one_minus_z).value;
}

double omega(int n, double s) {
  require(n >= 1, "omega requires n >= 1");
  require(s >= 0.0 && std::isfinite(s), "omega requires finite s >= 0");
  if (s == 0.0) return 1.0;
  const double q = 0.5 * n - 1.0;
  const double quarter = 0.25 * s * s;
  if (quarter <= 2.0 * (q + 1.0) + 2.0) {
    // sum_j (-s^2/4)^j / (j! (q+1)_j)
    double term = 1.0;
    double sum = 1.0;
    for (int j = 1; j < 200; ++j) {
      term *= -quarter / (j * (q + j));
      sum += term;
      if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  return gamma(q + 1.0) * std::pow(2.0 / s, q) * bessel_j(q, s);
}

}  // namespace rpd::specfun
