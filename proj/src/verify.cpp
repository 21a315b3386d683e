#include "rpd/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "rpd/analysis.hpp"
#include "rpd/errors.hpp"
#include "rpd/geometry.hpp"
#include "rpd/kernels.hpp"
#include "rpd/matrices.hpp"
#include "rpd/measures.hpp"
#include "rpd/specfun.hpp"

namespace rpd::verify {

namespace {

using kernels::RadialKernel;
using quad::QuadratureSpec;

// Reference J_n from the C++ standard library, independent of rpd::specfun.
double ref_j(double nu, double x) { return std::cyl_bessel_j(nu, x); }

struct Worst {
  double value = 0.0;
  std::string where;
  void update(double err, const std::string& at) {
    if (!(err <= value)) {  // NaN lands here too
      value = err;
      where = at;
    }
  }
};

CriterionResult bounded(int id, const Worst& w, double limit, std::string extra = {}) {
  CriterionResult r;
  r.id = id;
  r.observed = w.value;
  r.limit = limit;
  r.passed = w.value <= limit;
  r.detail = fmt::format("max error {:.3e} at {}", w.value, w.where.empty() ? "-" : w.where);
  if (!extra.empty()) r.detail += "; " + extra;
  if (!r.passed && extra.empty()) r.detail += " exceeds limit";
  return r;
}

CriterionResult c1(const QuadratureSpec&) {
  Worst w;
  for (int j = 0; j <= 500; ++j) {
    const double s = 0.1 * j;
    w.update(std::abs(specfun::omega(1, s) - std::cos(s)), fmt::format("Omega_1({:.1f})", s));
    w.update(std::abs(specfun::omega(2, s) - ref_j(0.0, s)), fmt::format("Omega_2({:.1f})", s));
    const double sinc = s == 0.0 ? 1.0 : std::sin(s) / s;
    w.update(std::abs(specfun::omega(3, s) - sinc), fmt::format("Omega_3({:.1f})", s));
  }
  return bounded(1, w, 1e-12);
}

CriterionResult c2(const QuadratureSpec&) {
  // Compared against the stated target -(n+1)/(n^2(n+2)). The two-term
  // determinant simplifies to twice that, so this check is expected to fail.
  Worst w;
  bool negative = true;
  double least_neg = -1.0;
  double ratio = 0.0;
  for (int n = 1; n <= 50; ++n) {
    const double d = analysis::moment_determinant(n);
    const double target = -(n + 1.0) / (double(n) * n * (n + 2.0));
    w.update(std::abs(d - target), fmt::format("n={}", n));
    negative = negative && d < 0.0;
    least_neg = std::max(least_neg, d);
    ratio = std::max(ratio, std::abs(d / target));
  }
  auto r = bounded(2, w, 1e-13,
                   fmt::format("largest determinant {:.3e}; det/target up to {:.15g}", least_neg, ratio));
  r.passed = r.passed && negative && least_neg <= -1e-4;
  return r;
}

CriterionResult c3(const QuadratureSpec&) {
  CriterionResult r;
  r.id = 3;
  r.passed = true;
  double worst_ratio = std::numeric_limits<double>::infinity();
  std::string notes;
  for (int n = 1; n <= 8; ++n) {
    const auto k = RadialKernel::omega(n);
    const auto w = analysis::simplex_witness(n, k);
    const double tol = w.inertia.tol;
    const double ratio = -w.eigenvalues.front() / tol;
    worst_ratio = std::min(worst_ratio, ratio);
    const auto cloud = geometry::random_config(n, 40, 1000 + static_cast<std::uint64_t>(n), 10.0);
    const auto a = matrices::schoenberg_matrix(k, cloud);
    const int km = matrices::inertia_of(a, matrices::default_tol(a)).n_neg;
    const bool ok = w.t <= 0.5 && w.lambda < 0.0 && w.inertia.n_neg >= 1 && ratio >= 10.0 && km == 0;
    if (!ok) {
      r.passed = false;
      notes += fmt::format(" n={}: t={} lambda={:.3e} n_neg={} ratio={:.3g} random kappa={};", n, w.t, w.lambda,
                           w.inertia.n_neg, ratio, km);
    }
  }
  r.observed = worst_ratio;
  r.limit = 10.0;
  r.detail = fmt::format("smallest |lambda_min|/tol {:.3g} (need >= 10), random clouds positive semidefinite{}",
                         worst_ratio, notes);
  return r;
}

CriterionResult c4(const QuadratureSpec&) {
  CriterionResult r;
  r.id = 4;
  r.passed = true;
  int mismatches = 0;
  for (int n = 1; n <= 10; ++n) {
    const auto o = RadialKernel::omega(n);
    const auto m1 = kernels::taylor_nonmembership(o);
    const auto m2 = kernels::taylor_nonmembership(RadialKernel::power(o, 2));
    const auto m3 = kernels::taylor_nonmembership(RadialKernel::power(o, 3));
    const bool ok = m1 == n && m2 == 2 * n + 2 && m3 == 3 * n + 4;
    if (!ok) {
      ++mismatches;
      r.detail += fmt::format(" n={}: got {},{},{};", n, m1.value_or(-1), m2.value_or(-1), m3.value_or(-1));
    }
  }
  r.passed = mismatches == 0;
  r.observed = mismatches;
  r.limit = 0;
  r.detail = mismatches == 0 ? "m_min = n, 2n+2, 3n+4 for n = 1..10" : "mismatch:" + r.detail;
  return r;
}

CriterionResult c5(const QuadratureSpec& spec) {
  Worst w;
  using measures::ClassicalFamily;
  for (auto fam : {ClassicalFamily::exp_decay, ClassicalFamily::gauss_decay}) {
    const char* name = fam == ClassicalFamily::exp_decay ? "exp" : "gauss";
    for (int m = 1; m <= 3; ++m) {
      for (int k = 1; k <= 4; ++k) {
        const auto nu = measures::classical_family_measure(fam, m + k, spec);
        for (double x : {0.3, 1.0, 4.0}) {
          const double p = measures::transition_density(m, k, nu, x, spec);
          w.update(std::abs(p - measures::classical_family_density(fam, m, x)),
                   fmt::format("{} m={} k={} x={}", name, m, k, x));
        }
      }
    }
  }
  return bounded(5, w, 1e-7);
}

CriterionResult c6(const QuadratureSpec& spec) {
  Worst w;
  for (int m = 1; m <= 3; ++m) {
    for (int k = 1; k <= 3; ++k) {
      const double c = 2.0 / specfun::beta(0.5 * m, 0.5 * k);
      for (double t : {0.5, 2.0, 7.0}) {
        const quad::Integrand f = [&](const quad::Abscissa& a) {
          const double s = a.value();
          const double one_minus = -a.distance_to(1.0);
          if (one_minus <= 0.0 || s <= 0.0) return 0.0;
          const double w2 = one_minus * (1.0 + s);
          return specfun::omega(m, t * s) * std::pow(s, m - 1) * (k == 2 ? 1.0 : std::pow(w2, 0.5 * k - 1.0));
        };
        const double integral =
            quad::integrate(f, {0.0, 1.0}, spec.with_tol(std::max(spec.abs_tol * 1e-2, 1e-14)),
                            {0.0, std::min(0.0, 0.5 * k - 1.0), {}})
                .value;
        w.update(std::abs(specfun::omega(m + k, t) - c * integral), fmt::format("m={} k={} t={}", m, k, t));
      }
    }
  }
  return bounded(6, w, 1e-9);
}

CriterionResult c7(const QuadratureSpec& spec) {
  Worst w;
  for (int n = 2; n <= 5; ++n) {
    const auto nu = measures::omega_sq_measure(n, spec);
    for (double t : {0.5, 1.0, 2.0, 5.0}) {
      const double o = specfun::omega(n, t);
      w.update(std::abs(measures::schoenberg_transform(2 * n - 2, nu, t, spec) - o * o),
               fmt::format("n={} t={}", n, t));
    }
  }
  // n = 3: p_3(x) = x/2 and (1 - cos 2t)/(2t^2) = sin^2 t / t^2, at 1e-12.
  Worst chain;
  const QuadratureSpec fine = spec.with_tol(1e-14);
  for (double x : {0.1, 0.5, 1.0, 1.5, 1.9}) {
    chain.update(std::abs(measures::omega_sq_step_back_density(3, x, spec) - 0.5 * x), fmt::format("p_3({})", x));
  }
  for (double t : {0.5, 1.0, 2.0, 5.0}) {
    const double integral =
        quad::integrate([t](double x) { return specfun::omega(3, t * x) * 0.5 * x; }, {0.0, 2.0}, fine).value;
    const double closed = (1.0 - std::cos(2.0 * t)) / (2.0 * t * t);
    const double o = specfun::omega(3, t);
    chain.update(std::abs(integral - closed), fmt::format("int Omega_3 x/2, t={}", t));
    chain.update(std::abs(closed - o * o), fmt::format("sin^2 t/t^2, t={}", t));
  }
  auto r = bounded(7, w, 1e-8,
                   fmt::format("n=3 chain max error {:.3e} at {} (limit 1e-12)", chain.value, chain.where));
  r.passed = r.passed && chain.value <= 1e-12;
  return r;
}

CriterionResult c8(const QuadratureSpec& spec) {
  Worst w;
  for (int n = 2; n <= 3; ++n) {
    const auto nu = measures::omega_sq_measure(n, spec);
    for (double x : {0.5, 1.0, 1.9}) {
      const double a = measures::omega_sq_step_back_density(n, x, spec);
      const double b = measures::transition_density(2 * n - 3, 1, nu, x, spec);
      w.update(std::abs(a - b), fmt::format("n={} x={}", n, x));
    }
  }
  return bounded(8, w, 1e-7, fmt::format("C'_3 = {:.15g}", measures::omega_sq_step_back_constant(3, spec)));
}

CriterionResult c9(const QuadratureSpec&) {
  CriterionResult r;
  r.id = 9;
  r.passed = true;
  double worst_scaled = 0.0;
  std::string where;
  for (auto [m, rad] : {std::pair{8, 1.0}, std::pair{32, 5.0}, std::pair{128, 10.0}}) {
    for (const auto& g : {RadialKernel::cosine(1.0), RadialKernel::omega(2)}) {
      auto closed = analysis::polygon_eigs(g, m, rad);
      std::sort(closed.begin(), closed.end());
      const auto dense = matrices::sym_eigenvalues(matrices::schoenberg_matrix(g, geometry::regular_polygon(m, rad)));
      double d = 0.0;
      for (std::size_t i = 0; i < closed.size(); ++i) d = std::max(d, std::abs(closed[i] - dense[i]));
      const double scaled = d / (1e-9 * m);
      if (scaled > worst_scaled) {
        worst_scaled = scaled;
        where = fmt::format("{} m={} r={}", g.describe(), m, rad);
      }
      if (d > 1e-9 * m) r.passed = false;
    }
  }
  r.observed = worst_scaled;
  r.limit = 1.0;
  r.detail = fmt::format("max multiset distance / (1e-9 m) = {:.3e} at {}", worst_scaled, where);
  return r;
}

CriterionResult c10(const QuadratureSpec& spec) {
  Worst w;
  const auto g = RadialKernel::cosine(1.0);
  for (double rad : {1.0, 5.0, 10.0}) {
    for (int k = 1; k <= 20; ++k) {
      const double c = analysis::fourier_coefficient(g, k, rad, spec);
      w.update(std::abs(c - ref_j(2.0 * k, 2.0 * rad)), fmt::format("k={} r={}", k, rad));
    }
  }
  return bounded(10, w, 1e-10);
}

CriterionResult c11(const QuadratureSpec&) {
  CriterionResult r;
  r.id = 11;
  r.passed = true;
  int worst_excess = std::numeric_limits<int>::max();
  for (int N = 1; N <= 20; ++N) {
    const int c = analysis::even_bessel_negative_count(9.0 * N + 0.5, 3 * N);
    worst_excess = std::min(worst_excess, c - N);
    if (c < N) {
      r.passed = false;
      r.detail += fmt::format(" count(9*{}+0.5)={};", N, c);
    }
  }
  std::string poly;
  const auto g = RadialKernel::cosine(1.0);
  for (int N : {3, 5}) {
    const int c = analysis::polygon_negative_count(g, 4096, (9.0 * N + 0.5) / 2.0);
    poly += fmt::format(" polygon N={}: {}", N, c);
    worst_excess = std::min(worst_excess, c - N);
    if (c < N) r.passed = false;
  }
  r.observed = worst_excess;
  r.limit = 0;
  r.detail = fmt::format("min (count - N) = {};{}{}", worst_excess, poly, r.detail);
  return r;
}

CriterionResult c12(const QuadratureSpec&) {
  const auto k = RadialKernel::omega(2);
  const auto w = analysis::simplex_witness(2, k);
  const auto rep = analysis::negative_squares_growth(k, w.config, 4);
  CriterionResult r;
  r.id = 12;
  r.passed = rep.passed;
  r.observed = rep.margin / rep.tol;
  r.limit = 10.0;
  std::string wit;
  for (const auto& [key, v] : rep.witness) {
    if (key == "gap" || key == "achieved") wit += fmt::format(" {}={}", key, v);
  }
  r.detail = fmt::format("{}; margin/tol {:.3g};{}", rep.claim, r.observed, wit);
  return r;
}

CriterionResult c13(const QuadratureSpec&) {
  CriterionResult r;
  r.id = 13;
  const auto o2 = RadialKernel::omega(2);
  const auto prod = RadialKernel::product(o2, RadialKernel::scaled(o2, 3.0));
  int worst = 0;
  for (std::uint64_t seed : {11u, 12u, 13u, 14u, 15u}) {
    const auto cloud = geometry::random_config(2, 40, seed, 10.0);
    const auto a = matrices::schoenberg_matrix(prod, cloud);
    worst = std::max(worst, matrices::inertia_of(a, matrices::default_tol(a)).n_neg);
  }
  const auto sup = measures::product_kernel_support(2, 1.0, 3.0);
  const bool support_ok = sup.support.lo == 2.0 && sup.support.hi == 4.0 && sup.not_in_next_class;

  // cos^2 at radius r is E/2 + (cos matrix at radius 2r)/2, a rank-one shift.
  const auto cos1 = RadialKernel::cosine(1.0);
  const auto cos_sq = RadialKernel::power(cos1, 2);
  bool bound_ok = true;
  int sq_count_n5 = 0;
  std::string counts;
  for (int N : {3, 5}) {
    const double r11 = (9.0 * N + 0.5) / 2.0;
    const int c = analysis::polygon_negative_count(cos1, 4096, r11);
    const int sq = analysis::polygon_negative_count(cos_sq, 4096, 0.5 * r11);
    bound_ok = bound_ok && sq >= c - 1;
    if (N == 5) sq_count_n5 = sq;
    counts += fmt::format(" N={}: cos {} cos^2 {}", N, c, sq);
  }
  r.passed = worst == 0 && support_ok && bound_ok && sq_count_n5 >= 3;
  r.observed = sq_count_n5;
  r.limit = 3;
  r.detail = fmt::format("product kappa_minus on random sets {}; support [{}, {}] not-in-Phi_3={};{}", worst,
                         sup.support.lo, sup.support.hi, sup.not_in_next_class, counts);
  return r;
}

CriterionResult c14(const QuadratureSpec&) {
  std::mt19937_64 gen(20240601);
  auto uniform = [&gen] { return 2.0 * static_cast<double>(gen() >> 11) * 0x1.0p-53 - 1.0; };
  Worst w;
  for (int n : {10, 50, 200}) {
    for (int rep = 0; rep < 50; ++rep) {
      matrices::SymmetricMatrix a(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) a.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), uniform());
      }
      const auto e = matrices::sym_eigenvalues(a);
      double tr = 0.0;
      double sq = 0.0;
      for (double v : e) {
        tr += v;
        sq += v * v;
      }
      const double fro = a.norm_frobenius();
      w.update(std::abs(tr - a.trace()) / std::max(std::abs(a.trace()), fro), fmt::format("trace n={} #{}", n, rep));
      w.update(std::abs(sq - fro * fro) / (fro * fro), fmt::format("frobenius n={} #{}", n, rep));
    }
  }
  return bounded(14, w, 1e-12);
}

using Runner = std::function<CriterionResult(const QuadratureSpec&)>;

const std::vector<Runner>& runners() {
  static const std::vector<Runner> r = {c1, c2, c3, c4, c5, c6, c7, c8, c9, c10, c11, c12, c13, c14};
  return r;
}

}  // namespace

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> list = {
      {1, "kernel identities Omega_1,2,3", {"specfun", "kernels"}},
      {2, "moment obstruction determinant", {"moments", "analysis"}},
      {3, "simplex witness and random positivity", {"simplex", "matrices"}},
      {4, "Taylor criterion m_min", {"taylor", "kernels"}},
      {5, "transition formula on exp/gauss families", {"transition", "measures"}},
      {6, "Sonine identity", {"specfun", "sonine"}},
      {7, "square-kernel representation", {"square", "measures"}},
      {8, "step-back density vs 1-step transition", {"measures", "square", "transition"}},
      {9, "circulant spectra vs dense eigensolver", {"circulant", "matrices"}},
      {10, "Fourier-Bessel identity", {"fourier", "specfun", "analysis"}},
      {11, "even-Bessel negative counts", {"bessel", "specfun", "analysis"}},
      {12, "negative-squares growth", {"growth", "analysis"}},
      {13, "product kernels and cos^2 rank-one bound", {"product", "analysis"}},
      {14, "eigensolver trace/Frobenius identities", {"eigen", "matrices"}},
  };
  return list;
}

CriterionResult run_criterion(int id, const QuadratureSpec& spec) {
  const auto& list = criteria();
  if (id < 1 || id > static_cast<int>(list.size())) throw DomainError(fmt::format("no criterion {}", id));
  CriterionResult r;
  try {
    r = runners()[static_cast<std::size_t>(id - 1)](spec);
  } catch (const std::exception& e) {
    r = CriterionResult{};
    r.passed = false;
    r.observed = std::numeric_limits<double>::quiet_NaN();
    r.detail = fmt::format("error: {}", e.what());
  }
  r.id = id;
  r.title = list[static_cast<std::size_t>(id - 1)].title;
  return r;
}

std::vector<CriterionResult> run_suite(const std::optional<std::string>& only, const QuadratureSpec& spec) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (only && !only->empty()) {
      const bool tagged = std::find(c.tags.begin(), c.tags.end(), *only) != c.tags.end();
      if (!tagged && *only != fmt::format("C{}", c.id)) continue;
    }
    out.push_back(run_criterion(c.id, spec));
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  return fmt::format("{} C{:<2} {}: {}", r.passed ? "PASS" : "FAIL", r.id, r.title, r.detail);
}

}  // namespace rpd::verify
