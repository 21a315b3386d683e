#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rpd/geometry.hpp"
#include "rpd/kernels.hpp"
#include "rpd/matrices.hpp"
#include "rpd/measures.hpp"

namespace rpd::analysis {

struct CertificateReport {
  std::string claim;
  std::vector<std::pair<std::string, std::string>> witness;
  double margin = 0.0;
  double tol = 0.0;
  bool passed = false;
};

// s_0, s_2, ..., s_2K with s_2k = prod_{j<=k} (n+2j-1)/(n+2j-2).
std::vector<double> omega_moments(int n, int K);
// s_0 s_4 - s_2^2
double moment_determinant(int n);
// -2(n+1) / (n^2 (n+2))
double moment_determinant_closed(int n);

// (1/2pi) int_0^{2pi} g(2r sin(t/2)) cos(idx t) dt by the periodic trapezoid rule.
double fourier_coefficient(const kernels::RadialKernel& g, int idx, double r, const quad::QuadratureSpec& spec);

// First circulant row g(2r sin(pi j/m)), j = 0..m-1, of the m-gon Schoenberg matrix.
std::vector<double> polygon_row(const kernels::RadialKernel& g, int m, double r);
std::vector<double> polygon_eigs(const kernels::RadialKernel& g, int m, double r);
// tol <= 0 selects 1e-9 * max(1, |A|_inf).
int polygon_negative_count(const kernels::RadialKernel& g, int m, double r, double tol = 0.0);

// Number of negative J_2p(x), p = 1..K. x is nudged by 1e-6 when it sits on a zero.
int even_bessel_negative_count(double x, int K);

// h(r) = (1/(2 pi^{3/2})) int cos(2 r s - pi/4) / sqrt(s) nu(ds); nu must avoid 0.
double h_oscillatory(const measures::RadialMeasure& nu, double r, const quad::QuadratureSpec& spec);

struct ScanResult {
  double max_abs = 0.0;  // lower bound for the limsup of |h|
  double at = 0.0;
};
ScanResult h_scan(const measures::RadialMeasure& nu, double r_lo, double r_hi, int points,
                  const quad::QuadratureSpec& spec);

struct LimitCheck {
  bool exists = false;
  double value = 0.0;        // mean over the last window
  double oscillation = 0.0;  // max - min over the last window
};
// Samples g on dyadic windows [2^j, 2^{j+1}), j = 6..24, 64 points each.
LimitCheck limit_at_infinity(const kernels::RadialKernel& g);

struct SimplexWitness {
  double t = 0.0;
  double lambda = 0.0;
  double tol = 0.0;
  geometry::PointConfig config;
  std::vector<double> eigenvalues;
  matrices::Inertia inertia;
};
// Scans t = 0.5, 0.25, ... until lambda < -10 tol (m+3), then assembles and
// eigensolves the (m+3)-point matrix. tol is the base threshold (1e-9).
SimplexWitness simplex_witness(int m, const kernels::RadialKernel& k, double tol = 1e-9);

// Copies of `base` along the first axis with gap doubling from 10 diam up
// to 2^20 diam until at least N (or N-1 if g(inf) > 0) negative eigenvalues
// appear. tol <= 0 selects the default per matrix.
CertificateReport negative_squares_growth(const kernels::RadialKernel& k, const geometry::PointConfig& base,
                                          int N, double tol = 0.0);

}  // namespace rpd::analysis
