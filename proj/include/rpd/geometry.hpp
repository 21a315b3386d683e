#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rpd::matrices {
class SymmetricMatrix;
}

namespace rpd::geometry {

struct PointConfig {
  int dim = 0;
  std::vector<std::vector<double>> points;
  std::string label;  // construction tag in the CLI grammar

  std::size_t size() const { return points.size(); }
};

// Throws DegenerateConfiguration on repeated points and DomainError on
// ragged coordinates.
void validate(const PointConfig& c);

// Regular simplex with m+2 vertices and edge t in R^{m+1}, followed by its centroid.
PointConfig simplex_with_center(int m, double t);
// Circumradius factor rho_m = sqrt((m+1) / (2(m+2))).
double simplex_rho(int m);

// y_k = r (cos 2 pi k/m, sin 2 pi k/m), k = 0..m-1.
PointConfig regular_polygon(int m, double r);

// Union of copies base + spacing_j e_axis.
PointConfig shifted_union(const PointConfig& base, const std::vector<double>& spacings, int axis = 0);

// `count` points uniform in [0, box]^dim from a seeded mt19937_64.
PointConfig random_config(int dim, int count, std::uint64_t seed, double box);

double distance(const std::vector<double>& a, const std::vector<double>& b);
double diameter(const PointConfig& c);
matrices::SymmetricMatrix distance_matrix(const PointConfig& c);

// simplex-center:m@t, polygon:m@r, shifted(C; u1,...,uN), random:dim,count,seed,box
PointConfig parse_config(const std::string& text);

}  // namespace rpd::geometry
