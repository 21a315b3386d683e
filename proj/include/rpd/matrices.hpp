#pragma once

// Dense symmetric matrices, Jacobi eigenvalues and inertia. The OpenMP
// routines have *_serial twins kept as references for tests and benchmarks.

#include <iosfwd>
#include <vector>

#include "rpd/geometry.hpp"
#include "rpd/kernels.hpp"

namespace rpd::matrices {

// Packed lower triangle, so symmetry holds by storage.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t order) : n_(order), a_(order * (order + 1) / 2, 0.0) {}

  std::size_t order() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[index(i, j)]; }
  void set(std::size_t i, std::size_t j, double v) { a_[index(i, j)] = v; }

  double norm_inf() const;
  double norm_frobenius() const;
  double trace() const;
  std::vector<double> dense() const;  // row-major n*n

  static SymmetricMatrix identity(std::size_t n);
  static SymmetricMatrix all_ones(std::size_t n);
  static SymmetricMatrix from_dense(const std::vector<double>& a, std::size_t n);  // uses the lower triangle

 private:
  static std::size_t tri(std::size_t i, std::size_t j) { return i * (i + 1) / 2 + j; }
  std::size_t index(std::size_t i, std::size_t j) const { return i >= j ? tri(i, j) : tri(j, i); }

  std::size_t n_ = 0;
  std::vector<double> a_;
};

struct Inertia {
  int n_neg = 0;
  int n_zero = 0;
  int n_pos = 0;
  double tol = 0.0;
};

SymmetricMatrix schoenberg_matrix(const kernels::RadialKernel& k, const geometry::PointConfig& x);
SymmetricMatrix schoenberg_matrix_serial(const kernels::RadialKernel& k, const geometry::PointConfig& x);

// Ascending eigenvalues. Parallel round-robin Jacobi; the serial version is
// the classical cyclic sweep. Throws NumericalFailure after the sweep cap.
std::vector<double> sym_eigenvalues(const SymmetricMatrix& a);
std::vector<double> sym_eigenvalues_serial(const SymmetricMatrix& a);

// 1e-9 * max(1, |A|_inf)
double default_tol(const SymmetricMatrix& a);

Inertia inertia_from_eigenvalues(const std::vector<double>& eigs, double tol);
Inertia inertia_of(const SymmetricMatrix& a, double tol);

int kappa_minus(const kernels::RadialKernel& k, const geometry::PointConfig& x, double tol);

// lambda_k = sum_j a_j cos(2 pi k j / m) for k = 0..m-1, first row a_0..a_{m-1}.
std::vector<double> circulant_eigs(const std::vector<double>& first_row);
std::vector<double> circulant_eigs_serial(const std::vector<double>& first_row);
SymmetricMatrix circulant_matrix(const std::vector<double>& first_row);

struct SimplexLambda {
  double lambda = 0.0;
  bool has_negative = false;
};
// lambda = 1 + (m+1) f(t) - (m+2) f(rho_m t)^2.
SimplexLambda simplex_lambda(int m, const kernels::RadialKernel& k, double t);

// CSV: "# rpd-lab matrix v1, order=N" then rows at 17 significant digits.
void write_matrix_csv(std::ostream& out, const SymmetricMatrix& a);
// Same header, then the values on one row.
void write_spectrum_csv(std::ostream& out, const std::vector<double>& values);

}  // namespace rpd::matrices
