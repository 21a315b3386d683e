#include <doctest.h>

#include <cmath>
#include <numbers>

#include "rpd/errors.hpp"
#include "rpd/kernels.hpp"
#include "rpd/measures.hpp"
#include "rpd/specfun.hpp"

using rpd::kernels::RadialKernel;
using rpd::kernels::parse_kernel;
using rpd::kernels::taylor_coeffs;
using rpd::kernels::taylor_nonmembership;
constexpr double kPi = std::numbers::pi;

TEST_CASE("evaluation of composite kernels") {
  const auto c1 = RadialKernel::omega(1);
  CHECK(std::abs(RadialKernel::product(c1, c1)(kPi / 2)) < 1e-15);
  CHECK(std::abs(RadialKernel::power(RadialKernel::omega(3), 2)(kPi)) < 1e-30);
  CHECK(RadialKernel::scaled(RadialKernel::omega(2), 2.0)(1.0) ==
        doctest::Approx(rpd::specfun::bessel_j(0.0, 2.0)).epsilon(1e-15));
  CHECK(RadialKernel::exp_decay()(2.0) == doctest::Approx(std::exp(-2.0)));
  CHECK(RadialKernel::gauss_decay()(1.3) == doctest::Approx(std::exp(-1.69)));
  CHECK(RadialKernel::cosine(2.0)(0.4) == doctest::Approx(std::cos(0.8)));
  for (int n = 1; n <= 6; ++n) CHECK(RadialKernel::omega(n)(0.0) == 1.0);
}

TEST_CASE("grammar round trip") {
  const rpd::quad::QuadratureSpec spec{};
  for (const char* s : {"omega:3", "exp", "gauss", "cos:1", "scale:2(omega:2)", "prod(omega:1,scale:3(omega:1))",
                        "pow:2(omega:3)", "pow:3(prod(cos:1,gauss))"}) {
    const auto k = parse_kernel(s, spec);
    CHECK(k.describe() == s);
    CHECK(parse_kernel(k.describe(), spec)(0.77) == k(0.77));
  }
  CHECK(parse_kernel(" omega:3 ", spec)(kPi) == doctest::Approx(0.0));
  for (const char* bad : {"", "omega:0", "omega:x", "pow:2(omega:3", "prod(omega:1)", "cos:-1", "foo", "omega:3)"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_kernel(bad, spec), rpd::DomainError);
  }
}

TEST_CASE("Taylor coefficients of Omega_n and its powers") {
  for (int n = 1; n <= 10; ++n) {
    const auto f = taylor_coeffs(RadialKernel::omega(n));
    CHECK(f.exact);
    CHECK(f.a1 == doctest::Approx(1.0 / (2 * n)));
    CHECK(f.a2 == doctest::Approx(1.0 / (8.0 * n * (n + 2))));
    const double lhs = f.a1 * f.a1 - (2.0 * n + 6) / (n + 1) * f.a2;
    CHECK(lhs == doctest::Approx(1.0 / (2.0 * n * n * (n + 1) * (n + 2))).epsilon(1e-13));

    const auto sq = taylor_coeffs(RadialKernel::power(RadialKernel::omega(n), 2));
    CHECK(sq.a1 * sq.a1 / sq.a2 == doctest::Approx((2.0 * n + 4) / (n + 1)).epsilon(1e-14));
    const auto cu = taylor_coeffs(RadialKernel::power(RadialKernel::omega(n), 3));
    CHECK(cu.a1 * cu.a1 / cu.a2 == doctest::Approx((6.0 * n + 12) / (3 * n + 4)).epsilon(1e-14));
  }
}

TEST_CASE("Taylor non-membership index") {
  for (int n = 1; n <= 10; ++n) {
    const auto o = RadialKernel::omega(n);
    CHECK(taylor_nonmembership(o) == n);
    CHECK(taylor_nonmembership(RadialKernel::power(o, 2)) == 2 * n + 2);
    CHECK(taylor_nonmembership(RadialKernel::power(o, 3)) == 3 * n + 4);
  }
  // Scaling does not change membership.
  CHECK(taylor_nonmembership(RadialKernel::scaled(RadialKernel::omega(4), 3.5)) == 4);
  // The Gaussian lies in every class.
  CHECK_FALSE(taylor_nonmembership(RadialKernel::gauss_decay()).has_value());
  CHECK_THROWS_AS(taylor_coeffs(RadialKernel::exp_decay()), rpd::UnsupportedKernel);
}

TEST_CASE("mixture kernel") {
  const rpd::quad::QuadratureSpec spec{};
  using rpd::measures::Atom;
  using rpd::measures::RadialMeasure;
  auto nu = std::make_shared<const RadialMeasure>(RadialMeasure::make({{1.0, 0.5}, {2.0, 0.5}}, std::nullopt, spec));
  const auto k = RadialKernel::mixture(3, nu, spec);
  const double r = 1.7;
  CHECK(k(r) == doctest::Approx(0.5 * std::sin(r) / r + 0.5 * std::sin(2 * r) / (2 * r)).epsilon(1e-13));
  // a1 = s2 / (2n) with s2 = (1 + 4) / 2
  CHECK(taylor_coeffs(k).a1 == doctest::Approx(2.5 / 6.0));

  auto cauchy = std::make_shared<const RadialMeasure>(rpd::measures::classical_family_measure(
      rpd::measures::ClassicalFamily::exp_decay, 1, spec));
  CHECK_THROWS_AS(taylor_coeffs(RadialKernel::mixture(1, cauchy, spec)), rpd::UnsupportedKernel);
}
