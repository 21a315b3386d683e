#include <doctest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "rpd/analysis.hpp"
#include "rpd/errors.hpp"
#include "rpd/geometry.hpp"
#include "rpd/kernels.hpp"
#include "rpd/matrices.hpp"
#include "rpd/measures.hpp"

using namespace rpd::analysis;
using rpd::kernels::RadialKernel;
constexpr double kPi = std::numbers::pi;

TEST_CASE("moments") {
  auto s = omega_moments(1, 2);
  CHECK(s[0] == 1.0);
  CHECK(s[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(s[2] == doctest::Approx(8.0 / 3.0).epsilon(1e-15));
  s = omega_moments(2, 2);
  CHECK(s[1] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(s[2] == doctest::Approx(15.0 / 8.0).epsilon(1e-15));
  CHECK(moment_determinant(1) == doctest::Approx(-4.0 / 3.0).epsilon(1e-14));
  CHECK(moment_determinant(2) == doctest::Approx(-3.0 / 8.0).epsilon(1e-14));
  for (int n = 1; n <= 50; ++n) {
    CHECK(std::abs(moment_determinant(n) - moment_determinant_closed(n)) < 1e-14);
    CHECK(moment_determinant(n) < -1e-4);
  }
}

TEST_CASE("Fourier coefficients of cos are even Bessel values") {
  const rpd::quad::QuadratureSpec spec{};
  const auto c = RadialKernel::cosine(1.0);
  CHECK(fourier_coefficient(c, 1, 1.0, spec) == doctest::Approx(boost::math::cyl_bessel_j(2, 2.0)).epsilon(1e-12));
  CHECK(std::abs(fourier_coefficient(c, 3, 1e-6, spec)) < 1e-12);
  for (double r : {1.0, 5.0, 10.0}) {
    for (int k = 1; k <= 20; ++k) {
      CHECK(std::abs(fourier_coefficient(c, k, r, spec) - boost::math::cyl_bessel_j(2 * k, 2.0 * r)) < 1e-10);
    }
  }
}

TEST_CASE("polygon spectra") {
  for (int m : {3, 8, 20}) CHECK(polygon_negative_count(RadialKernel::omega(2), m, 3.7) == 0);
  CHECK(polygon_negative_count(RadialKernel::cosine(1.0), 64, 22.75) >= 5);
  const auto closed = polygon_eigs(RadialKernel::cosine(1.0), 32, 5.0);
  const auto dense = rpd::matrices::sym_eigenvalues(
      rpd::matrices::schoenberg_matrix(RadialKernel::cosine(1.0), rpd::geometry::regular_polygon(32, 5.0)));
  auto sorted = closed;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i) CHECK(std::abs(sorted[i] - dense[i]) < 1e-9);
}

TEST_CASE("even Bessel negative counts") {
  CHECK(even_bessel_negative_count(1.0, 5) == 0);
  CHECK(even_bessel_negative_count(45.5, 15) >= 5);
  CHECK(even_bessel_negative_count(90.5, 30) >= 10);
  int brute = 0;
  for (int p = 1; p <= 15; ++p) brute += boost::math::cyl_bessel_j(2 * p, 45.5) < 0.0;
  CHECK(even_bessel_negative_count(45.5, 15) == brute);
}

TEST_CASE("oscillatory h") {
  const rpd::quad::QuadratureSpec spec{};
  const auto d1 = rpd::measures::RadialMeasure::make({{1.0, 1.0}}, std::nullopt, spec);
  const double c = 1.0 / (2.0 * std::pow(kPi, 1.5));
  for (double r : {0.3, 2.0, 7.7}) CHECK(h_oscillatory(d1, r, spec) == doctest::Approx(c * std::cos(2 * r - kPi / 4)));
  const auto scan = h_scan(d1, 0.01, 10.0, 2001, spec);
  CHECK(scan.max_abs >= c - 1e-6);

  const auto two = rpd::measures::RadialMeasure::make({{1.0, 0.5}, {std::sqrt(2.0), 0.5}}, std::nullopt, spec);
  CHECK(h_scan(two, 1.0, 50.0, 500, spec).max_abs > 0.0);

  // Uniform density on [1, 2]: closed form through Fresnel-type integral, checked by a direct quadrature.
  const auto u = rpd::measures::RadialMeasure::make({}, rpd::measures::uniform_family(1.0, 2.0), spec);
  const double r = 3.0;
  const double ref = c * rpd::quad::integrate(
      rpd::quad::PlainIntegrand([&](double s) { return std::cos(2 * r * s - kPi / 4) / std::sqrt(s); }), {1.0, 2.0},
      spec.with_tol(1e-13)).value;
  CHECK(std::abs(h_oscillatory(u, r, spec) - ref) < 1e-10);
  CHECK_THROWS_AS(h_oscillatory(d1, 0.0, spec), rpd::DomainError);
}

TEST_CASE("limit at infinity") {
  auto l = limit_at_infinity(RadialKernel::omega(2));
  CHECK(l.exists);
  CHECK(std::abs(l.value) < 1e-3);
  l = limit_at_infinity(RadialKernel::gauss_decay());
  CHECK(l.exists);
  CHECK_FALSE(limit_at_infinity(RadialKernel::power(RadialKernel::omega(1), 2)).exists);
  CHECK_FALSE(limit_at_infinity(RadialKernel::omega(1)).exists);
}

TEST_CASE("simplex witness") {
  for (int n = 1; n <= 5; ++n) {
    const auto w = simplex_witness(n, RadialKernel::omega(n));
    CHECK(w.lambda < 0.0);
    CHECK(w.inertia.n_neg >= 1);
    CHECK(w.config.size() == static_cast<std::size_t>(n + 3));
  }
  // A kernel in every class has no witness.
  CHECK_THROWS_AS(simplex_witness(2, RadialKernel::gauss_decay()), rpd::NumericalFailure);
}

TEST_CASE("negative squares growth") {
  const auto k = RadialKernel::omega(2);
  const auto w = simplex_witness(2, k);
  const auto one = negative_squares_growth(k, w.config, 1);
  CHECK(one.passed);
  const auto four = negative_squares_growth(k, w.config, 4);
  CHECK(four.passed);
  CHECK(four.margin >= 10.0 * four.tol);

  const auto c2 = RadialKernel::power(RadialKernel::omega(1), 2);
  const auto base = rpd::geometry::regular_polygon(64, 11.375);
  REQUIRE(polygon_negative_count(c2, 64, 11.375) >= 1);
  CHECK_THROWS_AS(negative_squares_growth(c2, base, 3), rpd::UnsupportedKernel);
  CHECK_THROWS_AS(negative_squares_growth(k, rpd::geometry::regular_polygon(5, 1.0), 2), rpd::DomainError);
}
