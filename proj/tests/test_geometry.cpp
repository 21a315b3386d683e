#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rpd/errors.hpp"
#include "rpd/geometry.hpp"
#include "rpd/matrices.hpp"

using namespace rpd::geometry;

TEST_CASE("simplex with centre") {
  CHECK(simplex_rho(1) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(simplex_rho(2) == doctest::Approx(std::sqrt(3.0 / 8.0)).epsilon(1e-15));
  for (int m : {1, 2, 4, 7}) {
    const double t = 0.3;
    const auto c = simplex_with_center(m, t);
    CHECK(c.dim == m + 1);
    REQUIRE(c.size() == static_cast<std::size_t>(m + 3));
    for (int i = 0; i < m + 2; ++i) {
      for (int j = 0; j < i; ++j) CHECK(std::abs(distance(c.points[i], c.points[j]) - t) < 1e-15);
      CHECK(std::abs(distance(c.points[i], c.points.back()) - simplex_rho(m) * t) < 1e-15);
    }
  }
  CHECK_THROWS_AS(simplex_with_center(0, 1.0), rpd::DomainError);
  CHECK_THROWS_AS(simplex_with_center(2, 0.0), rpd::DomainError);
}

TEST_CASE("regular polygon chords") {
  auto d = distance_matrix(regular_polygon(4, 1.0));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double v = d(i, j);
      CHECK((std::abs(v) < 1e-15 || std::abs(v - std::sqrt(2.0)) < 1e-15 || std::abs(v - 2.0) < 1e-15));
    }
  }
  const auto hex = regular_polygon(6, 1.0);
  CHECK(distance(hex.points[0], hex.points[1]) == doctest::Approx(1.0).epsilon(1e-15));
  const auto p = regular_polygon(32, 5.0);
  for (int j = 0; j < 32; ++j) {
    CHECK(std::abs(distance(p.points[0], p.points[j]) - 10.0 * std::sin(std::numbers::pi * j / 32)) < 1e-13);
  }
}

TEST_CASE("shifted union") {
  const auto base = simplex_with_center(3, 1.0);
  CHECK(shifted_union(base, {0.0}).points == base.points);
  const auto u = shifted_union(base, {0.0, 100.0, 200.0});
  CHECK(u.size() == 3 * base.size());
  const std::size_t p = base.size();
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = p; j < 3 * p; ++j) CHECK(distance(u.points[i], u.points[j]) >= 99.0);
  }
  CHECK_THROWS_AS(shifted_union(base, {0.0, 0.0}), rpd::DomainError);
  const PointConfig pair{1, {{0.0}, {1.0}}, "pair"};
  CHECK_THROWS_AS(shifted_union(pair, {0.0, 1.0}), rpd::DegenerateConfiguration);
}

TEST_CASE("random configuration is reproducible") {
  const auto a = random_config(2, 40, 7, 10.0);
  const auto b = random_config(2, 40, 7, 10.0);
  CHECK(a.points == b.points);
  CHECK(random_config(2, 40, 8, 10.0).points != a.points);
  for (const auto& x : a.points) {
    for (double v : x) CHECK((v >= 0.0 && v < 10.0));
  }
}

TEST_CASE("distance matrix and validation") {
  PointConfig one{3, {{1.0, 2.0, 3.0}}, "one"};
  const auto d = distance_matrix(one);
  CHECK(d.order() == 1);
  CHECK(d(0, 0) == 0.0);
  PointConfig dup{1, {{1.0}, {2.0}, {1.0}}, "dup"};
  CHECK_THROWS_AS(validate(dup), rpd::DegenerateConfiguration);
  PointConfig ragged{2, {{1.0, 2.0}, {1.0}}, "ragged"};
  CHECK_THROWS_AS(validate(ragged), rpd::DomainError);
  CHECK(diameter(regular_polygon(6, 2.0)) == doctest::Approx(4.0));
}

TEST_CASE("configuration grammar") {
  CHECK(parse_config("simplex-center:2@0.1").size() == 5);
  CHECK(parse_config("polygon:12@3").size() == 12);
  CHECK(parse_config("random:3,20,5,2").size() == 20);
  const auto s = parse_config("shifted(simplex-center:2@0.5; 0,10,20)");
  CHECK(s.size() == 15);
  for (const char* bad : {"", "polygon:2@1", "simplex-center:2", "random:2,3", "shifted(polygon:4@1 0,1)", "cube:3"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse_config(bad), rpd::DomainError);
  }
}
