#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "rpd/errors.hpp"
#include "rpd/quadrature.hpp"

using namespace rpd::quad;
constexpr double kPi = std::numbers::pi;

TEST_CASE("basic integrals") {
  const QuadratureSpec spec{};
  CHECK(integrate(PlainIntegrand([](double) { return 1.0; }), {0.0, 1.0}, spec).value ==
        doctest::Approx(1.0).epsilon(1e-13));

  const Integrand arcsine = [](const Abscissa& a) {
    const double x = a.value();
    // (2 - x)(2 + x) with 2 - x taken from the exact offset near the right end
    return 1.0 / std::sqrt(-a.distance_to(2.0) * (2.0 + x));
  };
  CHECK(std::abs(integrate(arcsine, {0.0, 2.0}, spec, {0.0, -0.5, {}}).value - kPi / 2) < 1e-10);

  const PlainIntegrand cauchy = [](double u) { return 2.0 / kPi / (1.0 + u * u); };
  CHECK(std::abs(integrate(cauchy, {0.0, kInf}, spec).value - 1.0) < 1e-10);
}

TEST_CASE("endpoint singularities and breaks") {
  const QuadratureSpec spec{};
  const PlainIntegrand f = [](double x) { return std::pow(x, -0.75); };
  CHECK(std::abs(integrate(f, {0.0, 1.0}, spec, {-0.75, 0.0, {}}).value - 4.0) < 1e-9);

  const Integrand g = [](const Abscissa& a) { return 1.0 / std::sqrt(std::abs(a.distance_to(0.3))); };
  const double exact = 2.0 * std::sqrt(0.3) + 2.0 * std::sqrt(0.7);
  CHECK(std::abs(integrate(g, {0.0, 1.0}, spec, {0.0, 0.0, {0.3}}).value - exact) < 1e-9);
}

TEST_CASE("tanh_sinh reports its error estimate") {
  const Integrand f = [](const Abscissa& a) { return std::exp(a.value()); };
  const auto r = tanh_sinh(f, 0.0, 1.0, 1e-13, 12);
  CHECK(std::abs(r.value - (std::exp(1.0) - 1.0)) < 1e-13);
  CHECK(r.est_error <= 1e-13);
  CHECK(r.levels >= 3);
}

TEST_CASE("non-convergence raises AccuracyFailure") {
  const Integrand wild = [](const Abscissa& a) { return std::sin(1e4 * a.value()) * 1e6; };
  CHECK_THROWS_AS(tanh_sinh(wild, 0.0, 1.0, 1e-14, 4), rpd::AccuracyFailure);
}

TEST_CASE("periodic trapezoid") {
  const PlainIntegrand f = [](double t) { return std::exp(std::cos(t)); };
  // int_0^{2pi} e^{cos t} dt = 2 pi I_0(1)
  const double i0 = 1.2660658777520082;
  CHECK(std::abs(periodic_trapezoid(f, 0.0, 2.0 * kPi, 1e-13).value - 2.0 * kPi * i0) < 1e-12);
}

TEST_CASE("compound gauss") {
  const PlainIntegrand f = [](double x) { return std::cos(x); };
  CHECK(std::abs(compound_gauss(f, 0.0, 10.0, 1e-12, 12).value - std::sin(10.0)) < 1e-11);
}

TEST_CASE("oscillatory tail") {
  // int_1^inf sin(x)/x dx = pi/2 - Si(1)
  const double si1 = 0.94608307036718301494;
  const Integrand f = [](const Abscissa& a) { return std::sin(a.value()) / a.value(); };
  CHECK(std::abs(oscillatory_tail(f, 1.0, kPi, 1e-10).value - (kPi / 2 - si1)) < 1e-9);
}

TEST_CASE("spec validation and env override") {
  const QuadratureSpec tight{Method::tanh_sinh, 1e-16, 12};
  CHECK_THROWS_AS(tight.validate(), rpd::DomainError);
  ::setenv("RPD_QUAD_TOL", "1e-8", 1);
  CHECK(QuadratureSpec::from_env().abs_tol == 1e-8);
  ::unsetenv("RPD_QUAD_TOL");
  CHECK(QuadratureSpec::from_env().abs_tol == 1e-10);
}
