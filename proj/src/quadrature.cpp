#include "rpd/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "rpd/errors.hpp"

namespace rpd::quad {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

// Node spread needed so that the neglected end pieces of an integrand
// behaving like dist^exponent stay below ~1e-20.
double tanh_sinh_tmax(double exponent) {
  const double e = std::clamp(exponent, -0.95, 0.0);
  return std::min(6.1, std::asinh(46.0 / (std::numbers::pi * (1.0 + e))) + 0.3);
}

double checked(double v) {
  if (!std::isfinite(v)) {
    throw AccuracyFailure("integrand returned a non-finite value", v, std::abs(v));
  }
  return v;
}

constexpr std::array<double, 5> kGaussNodes = {0.1488743389816312, 0.4333953941292472,
                                               0.6794095682990244, 0.8650633666889845,
                                               0.9739065285171717};
constexpr std::array<double, 5> kGaussWeights = {0.2955242247147529, 0.2692667193099963,
                                                 0.2190863625159820, 0.1494513491505806,
                                                 0.0666713443086881};

double gauss_panel(const PlainIntegrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    s += kGaussWeights[i] * (checked(f(c - h * kGaussNodes[i])) + checked(f(c + h * kGaussNodes[i])));
  }
  return s * h;
}

// Wynn epsilon extrapolation of a sequence of partial sums. Returns the
// latest even-column estimate and the change from the previous one.
std::pair<double, double> wynn_epsilon(const std::vector<double>& s) {
  const std::size_t n = s.size();
  if (n < 3) return {s.back(), std::abs(n > 1 ? s[n - 1] - s[n - 2] : s.back())};
  std::vector<double> prev(n + 1, 0.0);  // column k-1
  std::vector<double> cur(s.begin(), s.end());  // column k
  double best = s.back();
  double last_even = s.back();
  double err = std::abs(s[n - 1] - s[n - 2]);
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    bool ok = true;
    for (std::size_t j = 0; j + k < n; ++j) {
      const double diff = cur[j + 1] - cur[j];
      if (diff == 0.0) {
        ok = false;
        break;
      }
      next[j] = prev[j + 1] + 1.0 / diff;
    }
    if (!ok) break;
    prev = std::move(cur);
    cur = std::move(next);
    if (k % 2 == 0 && !cur.empty()) {
      const double est = cur.back();
      if (!std::isfinite(est)) break;
      err = std::abs(est - last_even);
      last_even = est;
      best = est;
    }
  }
  return {best, err};
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::tanh_sinh: return "tanh_sinh";
    case Method::periodic_trapezoid: return "periodic_trapezoid";
    case Method::compound_gauss: return "compound_gauss";
  }
  return "unknown";
}

QuadratureSpec QuadratureSpec::from_env() {
  QuadratureSpec spec;
  if (const char* env = std::getenv("RPD_QUAD_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end == env || *end != '\0') {
      throw DomainError(std::string("RPD_QUAD_TOL is not a number: ") + env);
    }
    spec.abs_tol = tol;
  }
  spec.validate();
  return spec;
}

void QuadratureSpec::validate() const {
  if (!(abs_tol >= 1e-14)) throw DomainError("quadrature abs_tol must be >= 1e-14");
  if (max_refinements < 1) throw DomainError("quadrature max_refinements must be positive");
}

QuadResult tanh_sinh(const Integrand& f, double a, double b, double tol, int max_levels,
                     double min_exponent) {
  const double h = 0.5 * (b - a);
  if (h == 0.0) return {0.0, 0.0, 0};
  const double tmax = tanh_sinh_tmax(min_exponent);

  auto node_sum = [&](double t) {
    const double u = kHalfPi * std::sinh(t);
    const double e = std::exp(-2.0 * std::abs(u));
    const double delta = h * 2.0 * e / (1.0 + e);
    const double w = h * kHalfPi * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
    if (delta <= 0.0 || w <= 0.0) return 0.0;
    const Abscissa x = t > 0.0 ? Abscissa{b, -delta} : Abscissa{a, delta};
    return w * checked(f(x));
  };

  double raw = node_sum(0.0);
  for (int k = 1; k <= static_cast<int>(tmax); ++k) raw += node_sum(k) + node_sum(-k);
  double step = 1.0;
  double prev = raw * step;
  double est = std::abs(prev);
  for (int level = 1; level <= max_levels; ++level) {
    step *= 0.5;
    for (double t = step; t <= tmax; t += 2.0 * step) raw += node_sum(t) + node_sum(-t);
    const double cur = raw * step;
    est = std::abs(cur - prev);
    prev = cur;
    if (level >= 3 && est <= tol) return {cur, est, level};
  }
  throw AccuracyFailure("tanh-sinh refinement cap reached", prev, est);
}

namespace {

QuadResult exp_sinh_impl(const Integrand& f, double a, double tol, int max_levels,
                         double left_exponent) {
  const double tl = tanh_sinh_tmax(left_exponent) + 0.7;
  const double tr = 4.6;
  auto node_sum = [&](double t) {
    const double s = kHalfPi * std::sinh(t);
    const double off = std::exp(s);
    if (off <= 0.0 || !std::isfinite(off)) return 0.0;
    const double w = kHalfPi * std::cosh(t) * off;
    const double v = f(Abscissa{a, off});
    if (!std::isfinite(v)) {
      // Far-tail overflow of an otherwise decaying integrand.
      if (t > 3.0) return 0.0;
      return checked(v);
    }
    return w * v;
  };
  double raw = node_sum(0.0);
  for (int k = 1; k <= static_cast<int>(tl); ++k) raw += node_sum(-k);
  for (int k = 1; k <= static_cast<int>(tr); ++k) raw += node_sum(k);
  double step = 1.0;
  double prev = raw;
  double est = std::abs(prev);
  for (int level = 1; level <= max_levels; ++level) {
    step *= 0.5;
    for (double t = step; t <= tl; t += 2.0 * step) raw += node_sum(-t);
    for (double t = step; t <= tr; t += 2.0 * step) raw += node_sum(t);
    const double cur = raw * step;
    est = std::abs(cur - prev);
    prev = cur;
    if (level >= 3 && est <= tol) return {cur, est, level};
  }
  throw AccuracyFailure("exp-sinh refinement cap reached", prev, est);
}

}  // namespace

QuadResult exp_sinh(const Integrand& f, double a, double tol, int max_levels) {
  return exp_sinh_impl(f, a, tol, max_levels, 0.0);
}

QuadResult periodic_trapezoid(const PlainIntegrand& f, double a, double b, double tol,
                              int max_nodes) {
  int n = 16;
  const double len = b - a;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += checked(f(a + len * i / n));
  double prev = sum * len / n;
  double prev_est = std::abs(prev);
  while (2 * n <= max_nodes) {
    for (int i = 0; i < n; ++i) sum += checked(f(a + len * (2 * i + 1) / (2.0 * n)));
    n *= 2;
    const double cur = sum * len / n;
    const double est = std::abs(cur - prev);
    // Two consecutive agreements guard against aliasing coincidences.
    if (est <= tol && prev_est <= tol) return {cur, est, n};
    prev_est = est;
    prev = cur;
  }
  throw AccuracyFailure("periodic trapezoid node cap reached", prev, prev_est);
}

QuadResult compound_gauss(const PlainIntegrand& f, double a, double b, double tol, int max_levels) {
  int panels = 1;
  double prev = gauss_panel(f, a, b);
  double est = std::abs(prev);
  for (int level = 1; level <= max_levels; ++level) {
    panels *= 2;
    const double w = (b - a) / panels;
    double cur = 0.0;
    for (int i = 0; i < panels; ++i) cur += gauss_panel(f, a + i * w, a + (i + 1) * w);
    est = std::abs(cur - prev);
    prev = cur;
    if (est <= tol) return {cur, est, level};
  }
  throw AccuracyFailure("compound Gauss refinement cap reached", prev, est);
}

QuadResult oscillatory_tail(const Integrand& f, double a, double half_period, double tol) {
  constexpr int kMaxPanels = 400;
  const double panel_tol = tol * 1e-2;
  std::vector<double> partial;
  partial.reserve(kMaxPanels);
  double sum = 0.0;
  double last_est = 0.0;
  double last_err = std::abs(tol) * 1e6;
  int small_panels = 0;
  for (int i = 0; i < kMaxPanels; ++i) {
    const double lo = a + i * half_period;
    const QuadResult piece = tanh_sinh(f, lo, lo + half_period, panel_tol, 10, 0.0);
    sum += piece.value;
    partial.push_back(sum);
    small_panels = std::abs(piece.value) < panel_tol ? small_panels + 1 : 0;
    if (small_panels >= 3) return {sum, std::abs(piece.value) * 3, i + 1};
    if (partial.size() >= 8) {
      // Extrapolate from the most recent window only; old sums add noise.
      const std::size_t window = std::min<std::size_t>(partial.size(), 40);
      std::vector<double> recent(partial.end() - static_cast<std::ptrdiff_t>(window), partial.end());
      const auto [est, err] = wynn_epsilon(recent);
      const double change = std::abs(est - last_est);
      if (err <= tol && change <= tol) return {est, std::max(err, change), i + 1};
      last_est = est;
      last_err = err;
    }
  }
  throw AccuracyFailure("oscillatory tail did not converge", last_est, last_err);
}

QuadResult integrate(const Integrand& f, Interval iv, const QuadratureSpec& spec, const Hints& hints) {
  spec.validate();
  if (!(iv.lo <= iv.hi) || std::isnan(iv.lo) || std::isinf(iv.lo)) {
    throw DomainError("integration interval must satisfy finite lo <= hi");
  }
  if (iv.lo == iv.hi) return {0.0, 0.0, 0};
  if (hints.left_exponent <= -1.0 || hints.right_exponent <= -1.0) {
    throw DomainError("endpoint exponents must exceed -1");
  }
  const bool infinite = std::isinf(iv.hi);

  if (spec.method == Method::periodic_trapezoid) {
    if (infinite) throw DomainError("periodic trapezoid needs a finite period");
    return periodic_trapezoid([&](double x) { return f(at(x)); }, iv.lo, iv.hi, spec.abs_tol);
  }

  std::vector<double> cuts{iv.lo};
  for (double b : hints.breaks) {
    if (b > iv.lo && b < iv.hi) cuts.push_back(b);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(iv.hi);
  const std::size_t segments = cuts.size() - 1;
  const double seg_tol = spec.abs_tol / static_cast<double>(segments);

  QuadResult total;
  for (std::size_t s = 0; s < segments; ++s) {
    const double a = cuts[s];
    const double b = cuts[s + 1];
    const double left = s == 0 ? hints.left_exponent : -0.5;
    const double right = s + 1 == segments ? hints.right_exponent : -0.5;
    QuadResult piece;
    if (spec.method == Method::compound_gauss) {
      if (std::isinf(b)) {
        piece = compound_gauss(
            [&](double u) {
              const double d = 1.0 - u;
              return f(Abscissa{a, u / d}) / (d * d);
            },
            0.0, 1.0, seg_tol, spec.max_refinements);
      } else {
        piece = compound_gauss([&](double x) { return f(at(x)); }, a, b, seg_tol, spec.max_refinements);
      }
    } else if (std::isinf(b)) {
      piece = exp_sinh_impl(f, a, seg_tol, spec.max_refinements, left);
    } else {
      piece = tanh_sinh(f, a, b, seg_tol, spec.max_refinements, std::min(left, right));
    }
    total.value += piece.value;
    total.est_error += piece.est_error;
    total.levels = std::max(total.levels, piece.levels);
  }
  return total;
}

QuadResult integrate(const PlainIntegrand& f, Interval iv, const QuadratureSpec& spec, const Hints& hints) {
  return integrate(Integrand([&f](const Abscissa& x) { return f(x.value()); }), iv, spec, hints);
}

}  // namespace rpd::quad
