#include "rpd/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "rpd/errors.hpp"
#include "rpd/specfun.hpp"

namespace rpd::measures {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

quad::Hints hints_for(const Density& d) {
  return quad::Hints{std::min(d.left_exponent, 0.0), std::min(d.right_exponent, 0.0), d.breaks};
}

// Integral of g * density over [from, hi] of d. `left` is the exponent at
// `from` when it is not the density's own lower end.
double integrate_density(const Density& d, const std::function<double(const Abscissa&)>& g,
                         double from, double left, const QuadratureSpec& spec) {
  const double lo = std::max(from, d.lo);
  if (lo >= d.hi) return 0.0;
  quad::Hints h = hints_for(d);
  if (from > d.lo) {
    h.left_exponent = std::min(left, 0.0);
  } else if (from == d.lo) {
    h.left_exponent = std::min(left + d.left_exponent, 0.0);
  }
  h.left_exponent = std::max(h.left_exponent, -0.95);
  const quad::Integrand f = [&](const Abscissa& a) {
    const double p = d.eval(a);
    if (p == 0.0) return 0.0;
    return g(a) * p;
  };
  return quad::integrate(f, {lo, d.hi}, spec, h).value;
}

double atoms_max(const std::vector<Atom>& atoms) {
  double m = 0.0;
  for (const Atom& a : atoms) m = std::max(m, a.location);
  return m;
}

}  // namespace

RadialMeasure RadialMeasure::make(std::vector<Atom> atoms, std::optional<Density> density,
                                  const QuadratureSpec& spec, std::optional<double> expected_mass) {
  spec.validate();
  RadialMeasure nu;
  double mass = 0.0;
  for (const Atom& a : atoms) {
    require(a.location >= 0.0 && std::isfinite(a.location), "atom location must be finite and >= 0");
    require(a.mass > 0.0 && std::isfinite(a.mass), "atom mass must be positive");
    mass += a.mass;
  }
  if (density) {
    require(static_cast<bool>(density->eval), "density has no evaluator");
    require(density->lo >= 0.0 && density->lo < density->hi, "density support must be [lo, hi] with 0 <= lo < hi");
    require(density->left_exponent > -1.0 && density->right_exponent > -1.0,
            "density endpoint exponents must exceed -1");
    const double dm = quad::integrate(quad::Integrand(density->eval), {density->lo, density->hi}, spec,
                                      hints_for(*density))
                          .value;
    if (!(dm > 0.0) || !std::isfinite(dm)) {
      throw NumericalFailure("density does not have positive finite mass", dm);
    }
    nu.density_mass_ = dm;
    mass += dm;
  }
  require(!atoms.empty() || density.has_value(), "measure is empty");
  if (expected_mass) {
    const double diff = std::abs(mass - *expected_mass);
    if (diff > 1e-7 * std::max(1.0, std::abs(*expected_mass))) {
      throw NumericalFailure("measure mass check failed: got " + std::to_string(mass) + ", expected " +
                                 std::to_string(*expected_mass),
                             diff);
    }
  }
  nu.atoms_ = std::move(atoms);
  nu.density_ = std::move(density);
  nu.total_mass_ = mass;
  return nu;
}

double RadialMeasure::support_hi() const {
  double hi = atoms_max(atoms_);
  if (density_) hi = std::max(hi, density_->hi);
  return hi;
}

double RadialMeasure::support_lo() const {
  double lo = kInf;
  for (const Atom& a : atoms_) lo = std::min(lo, a.location);
  if (density_) lo = std::min(lo, density_->lo);
  return lo;
}

bool RadialMeasure::blocks_promotion() const {
  if (!atoms_.empty()) return true;
  return !density_ || density_->lo > 0.0;
}

double RadialMeasure::moment(int k, const QuadratureSpec& spec) const {
  require(k >= 0, "moment order must be nonnegative");
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.mass * std::pow(a.location, k);
  if (density_) {
    if (std::isinf(density_->hi)) {
      const Tail& t = density_->tail;
      if (t.kind == Tail::Kind::power && t.exponent - k <= 1.0) return kInf;
      if (t.kind == Tail::Kind::unknown) {
        throw UnsupportedKernel("moment of a density with undeclared tail");
      }
    }
    s += integrate_density(*density_, [k](const Abscissa& a) { return std::pow(a.value(), k); },
                           density_->lo, 0.0, spec);
  }
  return s;
}

double RadialMeasure::integrate(const std::function<double(const Abscissa&)>& g,
                                const QuadratureSpec& spec) const {
  double s = 0.0;
  for (const Atom& a : atoms_) s += a.mass * g(quad::at(a.location));
  if (density_) s += integrate_density(*density_, g, density_->lo, 0.0, spec);
  return s;
}

double classical_family_density(ClassicalFamily family, int m, double u) {
  require(m >= 1, "family dimension must be >= 1");
  require(u > 0.0, "family density needs u > 0");
  if (family == ClassicalFamily::exp_decay) {
    const double b = specfun::beta(0.5 * m, 0.5);
    // u^{m-1} / (1+u^2)^{(m+1)/2}, arranged to avoid overflow for large u
    const double v = std::pow(u / std::hypot(1.0, u), m - 1) / (1.0 + u * u);
    return 2.0 / b * v;
  }
  const double lg = (m - 1) * std::log(0.5 * u) - 0.25 * u * u - specfun::log_gamma(0.5 * m);
  return std::exp(lg);
}

Density classical_family(ClassicalFamily family, int m) {
  require(m >= 1, "family dimension must be >= 1");
  Density d;
  d.lo = 0.0;
  d.hi = kInf;
  d.left_exponent = m - 1.0;
  d.eval = [family, m](const Abscissa& a) {
    const double u = a.value();
    return u > 0.0 ? classical_family_density(family, m, u) : 0.0;
  };
  if (family == ClassicalFamily::exp_decay) {
    d.tail = {Tail::Kind::power, 2.0};
    d.tag = "exp:" + std::to_string(m);
  } else {
    d.tail = {Tail::Kind::rapid, 0.0};
    d.tag = "gauss:" + std::to_string(m);
  }
  return d;
}

RadialMeasure classical_family_measure(ClassicalFamily family, int m, const QuadratureSpec& spec) {
  return RadialMeasure::make({}, classical_family(family, m), spec, 1.0);
}

double schoenberg_transform(int n, const RadialMeasure& nu, double r, const QuadratureSpec& spec) {
  require(n >= 1, "dimension must be >= 1");
  require(r >= 0.0 && std::isfinite(r), "transform needs finite r >= 0");
  double s = 0.0;
  for (const Atom& a : nu.atoms()) s += a.mass * specfun::omega(n, r * a.location);
  if (!nu.density()) return s;
  if (r == 0.0) return s + nu.density_mass();

  const Density& d = *nu.density();
  const quad::Integrand f = [&](const Abscissa& a) {
    const double p = d.eval(a);
    if (p == 0.0) return 0.0;
    return specfun::omega(n, r * a.value()) * p;
  };
  const quad::Hints h = hints_for(d);
  if (std::isfinite(d.hi)) return s + quad::integrate(f, {d.lo, d.hi}, spec, h).value;

  // Head with the endpoint and breaks, then whole half periods of Omega_n(r.)
  double head = d.lo + std::max(1.0, 8.0 * kPi / r);
  for (double b : d.breaks) head = std::max(head, b + 1.0);
  const QuadratureSpec half = spec.with_tol(std::max(0.5 * spec.abs_tol, 1e-14));
  s += quad::integrate(f, {d.lo, head}, half, {h.left_exponent, 0.0, d.breaks}).value;
  s += quad::oscillatory_tail(f, head, kPi / r, half.abs_tol).value;
  return s;
}

namespace {

// (anchor + offset) gap from a to b, keeping the offsets apart.
double gap(const Abscissa& from, const Abscissa& to) { return (to.anchor - from.anchor) + (to.offset - from.offset); }

// Transition density at x = xa.value(); atom and integrand gaps use the exact offset
// so quadrature nodes that round onto an atom still see the correct distance.
double transition_density_at(int m, int k, const RadialMeasure& nu, const Abscissa& xa, const QuadratureSpec& spec) {
  const double x = xa.value();
  const double pref = 2.0 * std::pow(x, m - 1) / specfun::beta(0.5 * m, 0.5 * k);
  const double e = 0.5 * k - 1.0;
  double s = 0.0;
  for (const Atom& a : nu.atoms()) {
    const double u = a.location;
    const double ux = gap(xa, quad::at(u));
    if (ux <= 0.0) continue;
    const double w = ux * (u + x) / (u * u);
    s += a.mass * (k == 2 ? 1.0 : std::pow(w, e)) * std::pow(u, -m);
  }
  if (nu.density()) {
    const Density& d = *nu.density();
    const auto g = [=](const Abscissa& a) {
      const double ux = gap(xa, a);
      if (ux <= 0.0) return 0.0;
      const double u = a.value();
      const double w = ux * (u + x) / (u * u);
      return (k == 2 ? 1.0 : std::pow(w, e)) * std::pow(u, -m);
    };
    const QuadratureSpec inner = spec.with_tol(std::max(spec.abs_tol / std::max(1.0, pref), 1e-14));
    s += integrate_density(d, g, x, e, inner);
  }
  return pref * s;
}

double phi2_density_at(int n, const RadialMeasure& sigma, const Abscissa& ua, const QuadratureSpec& spec) {
  const double u = ua.value();
  const double c = omega_sq_constant(n);
  const Abscissa half{0.5 * ua.anchor, 0.5 * ua.offset};
  double s = 0.0;
  for (const Atom& a : sigma.atoms()) {
    const double t = a.location;
    const double d = gap(half, quad::at(t));
    if (d <= 0.0) continue;
    s += a.mass * std::pow(u / t, n - 2) / std::sqrt(2.0 * d * (2.0 * t + u));
  }
  if (sigma.density()) {
    const auto g = [=](const Abscissa& a) {
      const double d = gap(half, a);
      if (d <= 0.0) return 0.0;
      const double t = a.value();
      return std::pow(u / t, n - 2) / std::sqrt(2.0 * d * (2.0 * t + u));
    };
    s += integrate_density(*sigma.density(), g, half.value(), -0.5, spec.with_tol(std::max(spec.abs_tol / c, 1e-14)));
  }
  return c * s;
}

}  // namespace

double transition_density(int m, int k, const RadialMeasure& nu, double x, const QuadratureSpec& spec) {
  require(m >= 1 && k >= 1, "transition needs m >= 1 and k >= 1");
  require(x > 0.0 && std::isfinite(x), "transition density needs finite x > 0");
  if (k <= 2) {
    for (const Atom& a : nu.atoms()) {
      if (a.location == x) throw DomainError("transition density undefined at an atom location for k <= 2");
    }
  }
  return transition_density_at(m, k, nu, quad::at(x), spec);
}

RadialMeasure transition_measure(int m, int k, MeasurePtr nu, const QuadratureSpec& spec) {
  require(nu != nullptr, "transition_measure needs a measure");
  require(m >= 1 && k >= 1, "transition needs m >= 1 and k >= 1");
  Density d;
  d.lo = 0.0;
  d.hi = nu->support_hi();
  d.left_exponent = m - 1.0;
  for (const Atom& a : nu->atoms()) {
    if (a.location > 0.0 && a.location < d.hi) d.breaks.push_back(a.location);
  }
  if (nu->density()) {
    for (double b : nu->density()->breaks) d.breaks.push_back(b);
    d.tail = nu->density()->tail;
    if (std::isfinite(d.hi)) d.right_exponent = std::min(0.0, 0.5 * k - 1.0 + nu->density()->right_exponent);
  }
  if (std::isfinite(d.hi) && !nu->atoms().empty() && atoms_max(nu->atoms()) == d.hi) {
    d.right_exponent = std::min(d.right_exponent, 0.5 * k - 1.0);
  }
  if (std::isinf(d.hi) && d.tail.kind == Tail::Kind::compact) d.tail.kind = Tail::Kind::unknown;
  d.eval = [m, k, nu, spec](const Abscissa& a) {
    if (a.value() <= 0.0) return 0.0;
    return transition_density_at(m, k, *nu, a, spec);
  };
  return RadialMeasure::make({}, std::move(d), spec, nu->total_mass());
}

double gaussian_mixture_density(int m, const RadialMeasure& sigma, double x, const QuadratureSpec& spec) {
  require(m >= 1, "dimension must be >= 1");
  require(x > 0.0 && std::isfinite(x), "mixture density needs finite x > 0");
  for (const Atom& a : sigma.atoms()) {
    if (a.location == 0.0) throw DomainError("mixing measure has mass at s = 0");
  }
  const double log_pref = (m - 1) * std::log(x) - (0.5 * m - 1.0) * std::log(2.0) -
                          specfun::log_gamma(0.5 * m);
  const auto g = [=](const Abscissa& a) {
    const double s = a.value();
    if (s <= 0.0) return 0.0;
    return std::exp(log_pref - 0.5 * m * std::log(2.0 * s) - x * x / (4.0 * s));
  };
  return sigma.integrate(g, spec);
}

RadialMeasure gaussian_mixture_measure(int m, MeasurePtr sigma, const QuadratureSpec& spec) {
  require(sigma != nullptr, "gaussian_mixture_measure needs a measure");
  Density d;
  d.lo = 0.0;
  d.hi = kInf;
  d.left_exponent = m - 1.0;
  d.tail = {std::isfinite(sigma->support_hi()) ? Tail::Kind::rapid : Tail::Kind::unknown, 0.0};
  d.eval = [m, sigma, spec](const Abscissa& a) {
    const double x = a.value();
    if (x <= 0.0) return 0.0;
    return gaussian_mixture_density(m, *sigma, x, spec);
  };
  return RadialMeasure::make({}, std::move(d), spec, sigma->total_mass());
}

double omega_sq_constant(int n) {
  require(n >= 2, "omega_sq density needs n >= 2");
  const double g = specfun::gamma(0.5 * n);
  return 2.0 * g * g / (kPi * specfun::gamma(n - 1.0));
}

namespace {

double omega_sq_eval(int n, double c, const Abscissa& a) {
  const double x = a.value();
  const double right = -a.distance_to(2.0);
  if (x <= 0.0 || right <= 0.0) return 0.0;
  return c * std::pow(x, n - 2) / std::sqrt(right * (2.0 + x));
}

}  // namespace

double omega_sq_density(int n, double x) {
  require(n >= 2, "omega_sq density needs n >= 2");
  require(x > 0.0 && x < 2.0, "omega_sq density needs x in (0, 2)");
  return omega_sq_eval(n, omega_sq_constant(n), quad::at(x));
}

Density omega_sq_family(int n) {
  const double c = omega_sq_constant(n);
  Density d;
  d.lo = 0.0;
  d.hi = 2.0;
  d.left_exponent = n - 2.0;
  d.right_exponent = -0.5;
  d.eval = [n, c](const Abscissa& a) { return omega_sq_eval(n, c, a); };
  d.tag = "omega_sq:" + std::to_string(n);
  return d;
}

RadialMeasure omega_sq_measure(int n, const QuadratureSpec& spec) {
  require(n >= 1, "omega_sq measure needs n >= 1");
  if (n == 1) return RadialMeasure::make({{0.0, 0.5}, {2.0, 0.5}}, std::nullopt, spec, 1.0);
  return RadialMeasure::make({}, omega_sq_family(n), spec, 1.0);
}

namespace {

// x^{2n-4} F((n-1)/2, 1/2; 1; 1 - x^2/4) without the constant.
double step_back_shape(int n, double x) {
  const double w = 0.25 * x * x;  // 1 - z
  const double a = 0.5 * (n - 1);
  if (w < 1e-24) {
    // Leading behaviour of 2F1 at z -> 1.
    if (n == 2) return std::log(16.0 / w) / kPi;
    const double lead = specfun::gamma(0.5 * n - 1.0) / (specfun::gamma(a) * std::sqrt(kPi));
    return std::pow(x, 2 * n - 4) * lead * std::pow(w, 1.0 - 0.5 * n);
  }
  if (w >= 1.0) return std::pow(x, 2 * n - 4);
  return std::pow(x, 2 * n - 4) * specfun::hyp2f1_complement(a, 0.5, 1.0, w);
}

}  // namespace

double omega_sq_step_back_constant(int n, const QuadratureSpec& spec) {
  require(n >= 2, "step-back density needs n >= 2");
  static std::mutex mu;
  static std::map<int, double> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  const quad::PlainIntegrand f = [n](double x) { return x > 0.0 ? step_back_shape(n, x) : 0.0; };
  const double left = n == 2 ? -0.1 : 0.0;
  const double mass = quad::integrate(f, {0.0, 2.0}, spec.with_tol(std::max(spec.abs_tol * 1e-2, 1e-14)),
                                      {left, 0.0, {}})
                          .value;
  const double c = 1.0 / mass;
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(n, c);
  return c;
}

double omega_sq_step_back_density(int n, double x, const QuadratureSpec& spec) {
  require(n >= 2, "step-back density needs n >= 2");
  require(x > 0.0 && x < 2.0, "step-back density needs x in (0, 2)");
  return omega_sq_step_back_constant(n, spec) * step_back_shape(n, x);
}

Density omega_sq_step_back_family(int n, const QuadratureSpec& spec) {
  const double c = omega_sq_step_back_constant(n, spec);
  Density d;
  d.lo = 0.0;
  d.hi = 2.0;
  d.left_exponent = n == 2 ? -0.1 : 0.0;
  d.eval = [n, c](const Abscissa& a) {
    const double x = a.value();
    if (x <= 0.0 || x >= 2.0) return 0.0;
    return c * step_back_shape(n, x);
  };
  d.tag = "omega_sq_down:" + std::to_string(n);
  return d;
}

ProductSupport product_kernel_support(int n, double a, double b) {
  require(n >= 1, "dimension must be >= 1");
  require(a > 0.0 && b > 0.0, "product kernel scales must be positive");
  return {{std::abs(a - b), a + b}, a != b};
}

double phi2_subclass_density(int n, const RadialMeasure& sigma, double u, const QuadratureSpec& spec) {
  require(n >= 2, "phi2 density needs n >= 2");
  require(u > 0.0 && std::isfinite(u), "phi2 density needs finite u > 0");
  for (const Atom& a : sigma.atoms()) {
    if (a.location == 0.5 * u) throw DomainError("phi2 density undefined at twice an atom location");
  }
  return phi2_density_at(n, sigma, quad::at(u), spec);
}

RadialMeasure phi2_subclass_measure(int n, MeasurePtr sigma, const QuadratureSpec& spec) {
  require(sigma != nullptr, "phi2_subclass_measure needs a measure");
  require(n >= 2, "phi2 density needs n >= 2");
  Density d;
  d.lo = 0.0;
  d.hi = 2.0 * sigma->support_hi();
  d.left_exponent = n - 2.0;
  for (const Atom& a : sigma->atoms()) {
    if (2.0 * a.location > 0.0 && 2.0 * a.location < d.hi) d.breaks.push_back(2.0 * a.location);
  }
  if (sigma->density()) {
    for (double b : sigma->density()->breaks) d.breaks.push_back(2.0 * b);
    d.tail = sigma->density()->tail;
  }
  if (std::isfinite(d.hi)) d.right_exponent = -0.5;
  d.eval = [n, sigma, spec](const Abscissa& a) {
    if (a.value() <= 0.0) return 0.0;
    return phi2_density_at(n, *sigma, a, spec);
  };
  return RadialMeasure::make({}, std::move(d), spec, sigma->total_mass());
}

Density uniform_family(double lo, double hi, double mass) {
  require(lo >= 0.0 && lo < hi && std::isfinite(hi), "uniform density needs 0 <= lo < hi < inf");
  require(mass > 0.0, "uniform density needs positive mass");
  Density d;
  d.lo = lo;
  d.hi = hi;
  const double v = mass / (hi - lo);
  d.eval = [v](const Abscissa&) { return v; };
  d.tag = "uniform";
  d.weight = mass;
  return d;
}

}  // namespace rpd::measures
