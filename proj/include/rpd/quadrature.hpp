#pragma once

// Double-exponential quadrature with endpoint-aware abscissae.
//
// Integrands receive an Abscissa rather than a bare double: the node is
// anchor + offset, where the anchor is the nearer endpoint of the current
// segment. Distances to singular points are then available to full relative
// precision even when the node itself rounds to the endpoint.

#include <functional>
#include <limits>
#include <string_view>
#include <vector>

namespace rpd::quad {

enum class Method { tanh_sinh, periodic_trapezoid, compound_gauss };

std::string_view to_string(Method m);

struct QuadratureSpec {
  Method method = Method::tanh_sinh;
  double abs_tol = 1e-10;
  int max_refinements = 12;

  // Default spec, with abs_tol overridden by RPD_QUAD_TOL when set.
  static QuadratureSpec from_env();
  // Throws DomainError when abs_tol < 1e-14 or max_refinements < 1.
  void validate() const;
  QuadratureSpec with_tol(double tol) const {
    QuadratureSpec s = *this;
    s.abs_tol = tol;
    return s;
  }
};

struct Abscissa {
  double anchor = 0.0;
  double offset = 0.0;

  double value() const { return anchor + offset; }
  // Signed x - c; exact when c equals the anchor.
  double distance_to(double c) const { return (anchor - c) + offset; }
};

inline Abscissa at(double x) { return Abscissa{x, 0.0}; }

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = 0.0;
  double hi = 1.0;  // may be +inf
};

// Endpoint behaviour (x-lo)^left_exponent, (hi-x)^right_exponent and
// interior points where an integrable singularity may sit.
struct Hints {
  double left_exponent = 0.0;
  double right_exponent = 0.0;
  std::vector<double> breaks;
};

struct QuadResult {
  double value = 0.0;
  double est_error = 0.0;
  int levels = 0;
};

using Integrand = std::function<double(const Abscissa&)>;
using PlainIntegrand = std::function<double(double)>;

// Integrates over [lo, hi] (hi may be +inf). Splits at hints.breaks.
// Throws AccuracyFailure when the refinement cap is reached before
// est_error <= spec.abs_tol.
QuadResult integrate(const Integrand& f, Interval iv, const QuadratureSpec& spec,
                     const Hints& hints = {});
QuadResult integrate(const PlainIntegrand& f, Interval iv, const QuadratureSpec& spec,
                     const Hints& hints = {});

// Tanh-sinh on a finite segment. min_exponent is the most singular endpoint
// exponent; it widens the node range so the neglected ends stay negligible.
QuadResult tanh_sinh(const Integrand& f, double a, double b, double tol, int max_levels,
                     double min_exponent = 0.0);
// Exp-sinh on [a, inf) for non-oscillatory integrands with algebraic or faster decay.
QuadResult exp_sinh(const Integrand& f, double a, double tol, int max_levels);
// Trapezoid rule for a periodic integrand over one period [a, b]; doubles the
// node count from 16 until successive sums agree to tol, up to max_nodes.
QuadResult periodic_trapezoid(const PlainIntegrand& f, double a, double b, double tol,
                              int max_nodes = 1 << 18);
// Composite 10-point Gauss-Legendre, doubling panel count.
QuadResult compound_gauss(const PlainIntegrand& f, double a, double b, double tol, int max_levels);

// Integral over [a, inf) of an integrand that oscillates with the given
// asymptotic half period: sums panel integrals and extrapolates the partial
// sums with the Wynn epsilon algorithm.
QuadResult oscillatory_tail(const Integrand& f, double a, double half_period, double tol);

}  // namespace rpd::quad
