#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "rpd/errors.hpp"
#include "rpd/geometry.hpp"
#include "rpd/kernels.hpp"
#include "rpd/matrices.hpp"

using namespace rpd::matrices;
using rpd::kernels::RadialKernel;

namespace {

SymmetricMatrix random_symmetric(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a.set(i, j, u(rng));
  }
  return a;
}

std::vector<double> eigen_reference(const SymmetricMatrix& a) {
  const auto n = static_cast<Eigen::Index>(a.order());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = a(i, j);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

// Compares as multisets.
double max_diff(std::vector<double> a, std::vector<double> b) {
  REQUIRE(a.size() == b.size());
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("eigenvalues of small matrices") {
  CHECK(sym_eigenvalues(SymmetricMatrix::identity(5)) == std::vector<double>(5, 1.0));
  const auto e = sym_eigenvalues(SymmetricMatrix::all_ones(4));
  CHECK(max_diff(e, {0.0, 0.0, 0.0, 4.0}) < 1e-14);
  SymmetricMatrix d(3);
  d.set(0, 0, 1.0);
  d.set(1, 1, -2.0);
  d.set(2, 2, 3.0);
  CHECK(sym_eigenvalues(d) == std::vector<double>{-2.0, 1.0, 3.0});
  CHECK(sym_eigenvalues(SymmetricMatrix{}).empty());
}

TEST_CASE("Jacobi against Eigen, parallel against serial") {
  std::mt19937_64 rng(42);
  for (std::size_t n : {1u, 2u, 7u, 31u, 64u, 101u}) {
    const auto a = random_symmetric(n, rng);
    const auto ref = eigen_reference(a);
    const auto par = sym_eigenvalues(a);
    const auto ser = sym_eigenvalues_serial(a);
    INFO("n=" << n);
    CHECK(max_diff(par, ref) < 1e-12 * std::max(1.0, a.norm_frobenius()));
    CHECK(max_diff(ser, ref) < 1e-12 * std::max(1.0, a.norm_frobenius()));
  }
}

TEST_CASE("inertia") {
  const auto ones = SymmetricMatrix::all_ones(4);
  const auto in = inertia_of(ones, 1e-10);
  CHECK(in.n_neg == 0);
  CHECK(in.n_zero == 3);
  CHECK(in.n_pos == 1);
  const auto id = inertia_of(SymmetricMatrix::identity(6), default_tol(SymmetricMatrix::identity(6)));
  CHECK((id.n_neg == 0 && id.n_zero == 0 && id.n_pos == 6));

  // Block matrix: 4x4 with a on the off-diagonal, b to the centre.
  const double a = 0.9, b = 0.99;
  SymmetricMatrix m(5);
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j <= i; ++j) m.set(i, j, i == j ? 1.0 : (i == 4 ? b : a));
  }
  const double lambda = 1.0 + 3.0 * a - 4.0 * b * b;
  CHECK(lambda == doctest::Approx(-0.2204));
  const auto e = sym_eigenvalues(m);
  CHECK(e.front() < 0.0);
  CHECK(inertia_of(m, 1e-9).n_neg >= 1);
}

TEST_CASE("Schoenberg matrices") {
  const auto k = RadialKernel::omega(1);
  const auto one = schoenberg_matrix(k, rpd::geometry::PointConfig{2, {{0.0, 0.0}}, "pt"});
  CHECK(one.order() == 1);
  CHECK(one(0, 0) == 1.0);

  const double r = std::numbers::pi / 2;
  const auto s = schoenberg_matrix(k, rpd::geometry::regular_polygon(4, r));
  CHECK(s(0, 1) == doctest::Approx(std::cos(std::sqrt(2.0) * r)).epsilon(1e-14));
  CHECK(s(0, 2) == doctest::Approx(-1.0).epsilon(1e-14));

  const auto cfg = rpd::geometry::random_config(3, 60, 3, 4.0);
  const auto par = schoenberg_matrix(RadialKernel::omega(3), cfg);
  const auto ser = schoenberg_matrix_serial(RadialKernel::omega(3), cfg);
  CHECK(par.dense() == ser.dense());
}

TEST_CASE("kappa_minus") {
  const auto o2 = RadialKernel::omega(2);
  for (std::uint64_t seed : {1u, 2u, 3u}) CHECK(kappa_minus(o2, rpd::geometry::random_config(2, 40, seed, 10.0), 1e-9) == 0);
  const auto prod = RadialKernel::product(RadialKernel::scaled(o2, 1.0), RadialKernel::scaled(o2, 3.0));
  CHECK(kappa_minus(prod, rpd::geometry::random_config(2, 40, 9, 10.0), 1e-9) == 0);
  CHECK(kappa_minus(RadialKernel::omega(3), rpd::geometry::simplex_with_center(3, 0.5), 1e-9) >= 1);
}

TEST_CASE("circulant spectra") {
  CHECK(max_diff(circulant_eigs({1.0, 0.0, 0.0, 0.0}), {1.0, 1.0, 1.0, 1.0}) < 1e-15);
  CHECK(max_diff(circulant_eigs({1.0, 0.5, 0.2, 0.5}), {0.2, 0.8, 0.8, 2.2}) < 1e-14);
  CHECK_THROWS_AS(circulant_eigs({1.0, 0.5, 0.2, 0.4}), rpd::DomainError);

  std::vector<double> row(3);
  for (int j = 0; j < 3; ++j) row[j] = std::cos(2.0 * std::sin(std::numbers::pi * j / 3));
  CHECK(max_diff(circulant_eigs(row), eigen_reference(circulant_matrix(row))) < 1e-13);

  std::vector<double> big(257);
  for (int j = 0; j < 257; ++j) big[j] = std::cos(20.0 * std::sin(std::numbers::pi * j / 257));
  CHECK(max_diff(circulant_eigs(big), circulant_eigs_serial(big)) < 1e-12);
}

TEST_CASE("simplex lambda") {
  const auto o3 = RadialKernel::omega(3);
  const auto l = simplex_lambda(3, o3, 0.1);
  CHECK(l.lambda < 0.0);
  CHECK(l.lambda == doctest::Approx(-1.0 / 450 * 1e-4).epsilon(0.02));
  // Leading term is t^4: halving t divides lambda by ~16.
  const double r1 = simplex_lambda(3, o3, 0.2).lambda / simplex_lambda(3, o3, 0.1).lambda;
  const double r2 = simplex_lambda(3, o3, 0.1).lambda / simplex_lambda(3, o3, 0.05).lambda;
  CHECK(std::log2(r1) >= 3.8);
  CHECK(std::log2(r2) >= 3.8);
  // lambda is the determinant of the 2x2 block on span{vertex sum, centre};
  // its smaller eigenvalue is the smallest of the assembled matrix.
  const double t = 0.5;
  const double fa = o3(t), fb = o3(rpd::geometry::simplex_rho(3) * t);
  const double p = 5.0;
  const double A = 1.0 + (p - 1.0) * fa, B = std::sqrt(p) * fb;
  CHECK(A - B * B == doctest::Approx(simplex_lambda(3, o3, t).lambda).epsilon(1e-12));
  const double small = 0.5 * ((A + 1.0) - std::sqrt((A - 1.0) * (A - 1.0) + 4.0 * B * B));
  const auto a = schoenberg_matrix(o3, rpd::geometry::simplex_with_center(3, t));
  CHECK(std::abs(sym_eigenvalues(a).front() - small) < 1e-14);
}

TEST_CASE("CSV output") {
  std::ostringstream os;
  write_matrix_csv(os, SymmetricMatrix::identity(2));
  CHECK(os.str().rfind("# rpd-lab matrix v1, order=2\n", 0) == 0);
}
