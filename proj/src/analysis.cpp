#include "rpd/analysis.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "rpd/errors.hpp"
#include "rpd/specfun.hpp"

namespace rpd::analysis {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

std::vector<double> omega_moments(int n, int K) {
  require(n >= 1 && K >= 1, "omega_moments needs n >= 1 and K >= 1");
  std::vector<double> s{1.0};
  double p = 1.0;
  for (int j = 1; j <= K; ++j) {
    p *= (n + 2.0 * j - 1.0) / (n + 2.0 * j - 2.0);
    s.push_back(p);
  }
  return s;
}

double moment_determinant(int n) {
  const auto s = omega_moments(n, 2);
  return s[0] * s[2] - s[1] * s[1];
}

double moment_determinant_closed(int n) {
  require(n >= 1, "moment_determinant needs n >= 1");
  const double d = n;
  return -2.0 * (d + 1.0) / (d * d * (d + 2.0));
}

double fourier_coefficient(const kernels::RadialKernel& g, int idx, double r, const quad::QuadratureSpec& spec) {
  require(idx >= 1, "Fourier index must be >= 1");
  require(r > 0.0 && std::isfinite(r), "Fourier radius must be positive");
  spec.validate();
  const quad::PlainIntegrand f = [&](double t) { return g(2.0 * r * std::abs(std::sin(0.5 * t))) * std::cos(idx * t); };
  return quad::periodic_trapezoid(f, 0.0, 2.0 * kPi, spec.abs_tol).value / (2.0 * kPi);
}

std::vector<double> polygon_row(const kernels::RadialKernel& g, int m, double r) {
  require(m >= 3, "polygon needs m >= 3");
  require(r > 0.0 && std::isfinite(r), "polygon radius must be positive");
  std::vector<double> row(static_cast<std::size_t>(m));
  // Evaluate half the row and mirror it so the symmetry is exact.
  for (int j = 0; j <= m / 2; ++j) {
    const double v = j == 0 ? g(0.0) : g(2.0 * r * std::sin(kPi * j / m));
    row[static_cast<std::size_t>(j)] = v;
    row[static_cast<std::size_t>((m - j) % m)] = v;
  }
  return row;
}

std::vector<double> polygon_eigs(const kernels::RadialKernel& g, int m, double r) {
  return matrices::circulant_eigs(polygon_row(g, m, r));
}

int polygon_negative_count(const kernels::RadialKernel& g, int m, double r, double tol) {
  const auto row = polygon_row(g, m, r);
  if (!(tol > 0.0)) {
    double norm = 0.0;
    for (double v : row) norm += std::abs(v);
    tol = 1e-9 * std::max(1.0, norm);
  }
  return matrices::inertia_from_eigenvalues(matrices::circulant_eigs(row), tol).n_neg;
}

int even_bessel_negative_count(double x, int K) {
  require(x > 0.0 && K >= 1, "even_bessel_negative_count needs x > 0 and K >= 1");
  for (int attempt = 0; attempt < 10; ++attempt) {
    const auto seq = specfun::bessel_j_even_sequence(x, K);
    bool on_zero = false;
    int count = 0;
    for (int p = 1; p <= K; ++p) {
      const double v = seq[static_cast<std::size_t>(p)];
      if (std::abs(v) < 1e-12) on_zero = true;
      if (v < 0.0) ++count;
    }
    if (!on_zero) return count;
    x += 1e-6;
  }
  throw NumericalFailure("even Bessel sequence keeps hitting zeros", x);
}

double h_oscillatory(const measures::RadialMeasure& nu, double r, const quad::QuadratureSpec& spec) {
  require(r > 0.0 && std::isfinite(r), "h needs r > 0");
  if (!(nu.support_lo() > 0.0)) throw DomainError("h needs a measure supported away from 0");
  const double c = 1.0 / (2.0 * std::pow(kPi, 1.5));
  const auto g = [r](const quad::Abscissa& a) {
    const double s = a.value();
    return std::cos(2.0 * r * s - 0.25 * kPi) / std::sqrt(s);
  };
  double sum = 0.0;
  for (const auto& a : nu.atoms()) sum += a.mass * g(quad::at(a.location));
  if (const auto& d = nu.density()) {
    const quad::Integrand f = [&](const quad::Abscissa& a) {
      const double p = d->eval(a);
      return p == 0.0 ? 0.0 : g(a) * p;
    };
    const quad::Hints h{std::min(d->left_exponent, 0.0), std::min(d->right_exponent, 0.0), d->breaks};
    if (std::isfinite(d->hi)) {
      sum += quad::integrate(f, {d->lo, d->hi}, spec, h).value;
    } else {
      double head = d->lo + std::max(1.0, 4.0 * kPi / r);
      for (double b : d->breaks) head = std::max(head, b + 1.0);
      const double tol = std::max(0.5 * spec.abs_tol, 1e-14);
      sum += quad::integrate(f, {d->lo, head}, spec.with_tol(tol), {h.left_exponent, 0.0, d->breaks}).value;
      sum += quad::oscillatory_tail(f, head, 0.5 * kPi / r, tol).value;
    }
  }
  return c * sum;
}

ScanResult h_scan(const measures::RadialMeasure& nu, double r_lo, double r_hi, int points,
                  const quad::QuadratureSpec& spec) {
  require(r_lo > 0.0 && r_hi >= r_lo && points >= 1, "h scan needs 0 < r_lo <= r_hi and points >= 1");
  std::vector<double> vals(static_cast<std::size_t>(points));
  std::exception_ptr first_error;
  int first_index = points;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < points; ++i) {
    const double r = points == 1 ? r_lo : r_lo + (r_hi - r_lo) * i / (points - 1);
    try {
      vals[static_cast<std::size_t>(i)] = std::abs(h_oscillatory(nu, r, spec));
    } catch (...) {
#pragma omp critical(rpd_h_scan_error)
      {
        if (i < first_index) {
          first_index = i;
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  ScanResult out;
  for (int i = 0; i < points; ++i) {
    if (vals[static_cast<std::size_t>(i)] > out.max_abs) {
      out.max_abs = vals[static_cast<std::size_t>(i)];
      out.at = points == 1 ? r_lo : r_lo + (r_hi - r_lo) * i / (points - 1);
    }
  }
  return out;
}

LimitCheck limit_at_infinity(const kernels::RadialKernel& g) {
  constexpr int kFirst = 6;
  constexpr int kLast = 24;
  constexpr int kSamples = 64;
  LimitCheck out;
  double prev_osc = 0.0;
  for (int j = kFirst; j <= kLast; ++j) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (int i = 0; i < kSamples; ++i) {
      const double v = g(std::ldexp(1.0 + static_cast<double>(i) / kSamples, j));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
      sum += v;
    }
    prev_osc = j == kFirst ? hi - lo : out.oscillation;
    out.oscillation = hi - lo;
    out.value = sum / kSamples;
  }
  out.exists = out.oscillation < 1e-3 && prev_osc < 1e-3;
  return out;
}

SimplexWitness simplex_witness(int m, const kernels::RadialKernel& k, double tol) {
  require(m >= 1, "simplex witness needs m >= 1");
  require(tol > 0.0, "simplex witness needs tol > 0");
  SimplexWitness w;
  w.tol = tol;
  const double threshold = -10.0 * tol * (m + 3);
  for (double t = 0.5; t >= 0x1.0p-30; t *= 0.5) {
    const auto lam = matrices::simplex_lambda(m, k, t);
    if (lam.lambda < threshold) {
      w.t = t;
      w.lambda = lam.lambda;
      w.config = geometry::simplex_with_center(m, t);
      const auto a = matrices::schoenberg_matrix(k, w.config);
      w.eigenvalues = matrices::sym_eigenvalues(a);
      w.inertia = matrices::inertia_from_eigenvalues(w.eigenvalues, matrices::default_tol(a));
      return w;
    }
  }
  throw NumericalFailure(fmt::format("no simplex witness for m={} down to t=2^-30", m), 0.0);
}

CertificateReport negative_squares_growth(const kernels::RadialKernel& k, const geometry::PointConfig& base,
                                          int N, double tol) {
  require(N >= 1, "negative_squares_growth needs N >= 1");
  geometry::validate(base);

  const auto base_matrix = matrices::schoenberg_matrix(k, base);
  const double base_tol = tol > 0.0 ? tol : matrices::default_tol(base_matrix);
  const auto base_eigs = matrices::sym_eigenvalues(base_matrix);
  if (matrices::inertia_from_eigenvalues(base_eigs, base_tol).n_neg < 1) {
    throw DomainError("base configuration has no negative eigenvalue for this kernel");
  }
  const LimitCheck lim = limit_at_infinity(k);
  if (!lim.exists) {
    throw UnsupportedKernel(fmt::format(
        "kernel {} has no detectable limit at infinity (oscillation {:.3g}); use the polygon route",
        k.describe(), lim.oscillation));
  }
  if (lim.value < -1e-3) throw DomainError("kernel limit at infinity is negative");
  const bool zero_limit = std::abs(lim.value) < 1e-3;
  const int target = zero_limit ? N : N - 1;

  CertificateReport rep;
  rep.claim = fmt::format("kappa_minus({}) >= {} on {} shifted copies", k.describe(), target, N);
  rep.witness = {{"kernel", k.describe()}, {"base", base.label}, {"copies", std::to_string(N)},
                 {"limit_at_infinity", fmt::format("{:.6g}", lim.value)}};

  auto finish = [&](const std::vector<double>& eigs, double t, int count, double gap) {
    rep.tol = t;
    rep.margin = target >= 1 ? -eigs[static_cast<std::size_t>(target - 1)] : 0.0;
    rep.passed = count >= target && (target == 0 || rep.margin >= 10.0 * t);
    rep.witness.emplace_back("gap", fmt::format("{:.17g}", gap));
    rep.witness.emplace_back("achieved", std::to_string(count));
    rep.witness.emplace_back("target", std::to_string(target));
    return rep;
  };

  if (N == 1) {
    const int count = matrices::inertia_from_eigenvalues(base_eigs, base_tol).n_neg;
    return finish(base_eigs, base_tol, count, 0.0);
  }

  const double diam = geometry::diameter(base);
  int best = -1;
  for (double gap = 10.0 * diam; gap <= std::ldexp(diam, 20); gap *= 2.0) {
    std::vector<double> spacings;
    for (int j = 0; j < N; ++j) spacings.push_back(j * gap);
    const auto cfg = geometry::shifted_union(base, spacings, 0);
    const auto a = matrices::schoenberg_matrix(k, cfg);
    const double t = tol > 0.0 ? tol : matrices::default_tol(a);
    const auto eigs = matrices::sym_eigenvalues(a);
    const int count = matrices::inertia_from_eigenvalues(eigs, t).n_neg;
    best = std::max(best, count);
    if (count >= target) return finish(eigs, t, count, gap);
  }
  throw NumericalFailure(fmt::format("doubling cap reached; best negative count {} < {}", best, target), best);
}

}  // namespace rpd::analysis
