#include "rpd/matrices.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <ostream>

#include "rpd/errors.hpp"

namespace rpd::matrices {

namespace {

constexpr int kMaxSweeps = 50;
constexpr double kOffRatio = 1e-14;

struct Rotation {
  std::size_t p, q;
  double c, s;
};

// Zeroes a[p][q] of a symmetric 2x2 block; empty when already zero.
bool make_rotation(double app, double aqq, double apq, double& c, double& s) {
  if (apq == 0.0) return false;
  const double theta = (aqq - app) / (2.0 * apq);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  c = 1.0 / std::sqrt(t * t + 1.0);
  s = t * c;
  return true;
}

void rotate_rows(std::vector<double>& a, std::size_t n, const Rotation& r) {
  double* rp = a.data() + r.p * n;
  double* rq = a.data() + r.q * n;
  for (std::size_t k = 0; k < n; ++k) {
    const double x = rp[k];
    const double y = rq[k];
    rp[k] = r.c * x - r.s * y;
    rq[k] = r.s * x + r.c * y;
  }
}

void rotate_cols(std::vector<double>& a, std::size_t n, const Rotation& r) {
  for (std::size_t k = 0; k < n; ++k) {
    double& x = a[k * n + r.p];
    double& y = a[k * n + r.q];
    const double xp = x;
    x = r.c * xp - r.s * y;
    y = r.s * xp + r.c * y;
  }
}

double off_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    for (std::size_t j = 0; j < i; ++j) s += a[i * n + j] * a[i * n + j];
  }
  return std::sqrt(2.0 * s);
}

std::vector<double> sorted_diagonal(const std::vector<double>& a, std::size_t n) {
  std::vector<double> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = a[i * n + i];
  std::sort(d.begin(), d.end());
  return d;
}

[[noreturn]] void sweep_cap(double off) {
  throw NumericalFailure(fmt::format("Jacobi eigensolver did not converge in {} sweeps (off-norm {:.3e})",
                                     kMaxSweeps, off),
                         off);
}

void check_row(const std::vector<double>& row) {
  if (row.empty()) throw DomainError("circulant row is empty");
  const std::size_t m = row.size();
  double scale = 0.0;
  for (double v : row) scale = std::max(scale, std::abs(v));
  for (std::size_t j = 1; j < m; ++j) {
    if (std::abs(row[j] - row[m - j]) > 1e-12 * scale) {
      throw DomainError(fmt::format("circulant row is not symmetric at index {}", j));
    }
  }
}

double circulant_eig(const std::vector<double>& row, std::size_t k) {
  const std::size_t m = row.size();
  double s = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    // reduce k*j mod m first so the angle stays exact for large m
    const std::size_t idx = (k * j) % m;
    s += row[j] * std::cos(2.0 * std::numbers::pi * static_cast<double>(idx) / static_cast<double>(m));
  }
  return s;
}

}  // namespace

double SymmetricMatrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double SymmetricMatrix::norm_frobenius() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double v = (*this)(i, j);
      s += (i == j ? 1.0 : 2.0) * v * v;
    }
  }
  return std::sqrt(s);
}

double SymmetricMatrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

std::vector<double> SymmetricMatrix::dense() const {
  std::vector<double> a(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) a[i * n_ + j] = (*this)(i, j);
  }
  return a;
}

SymmetricMatrix SymmetricMatrix::identity(std::size_t n) {
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) a.set(i, i, 1.0);
  return a;
}

SymmetricMatrix SymmetricMatrix::all_ones(std::size_t n) {
  SymmetricMatrix a(n);
  std::fill(a.a_.begin(), a.a_.end(), 1.0);
  return a;
}

SymmetricMatrix SymmetricMatrix::from_dense(const std::vector<double>& a, std::size_t n) {
  if (a.size() != n * n) throw DomainError("dense matrix has the wrong size");
  SymmetricMatrix s(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) s.set(i, j, a[i * n + j]);
  }
  return s;
}

SymmetricMatrix schoenberg_matrix(const kernels::RadialKernel& k, const geometry::PointConfig& x) {
  const std::size_t n = x.size();
  SymmetricMatrix a(n);
  std::exception_ptr first_error;
  std::size_t first_row = n;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t i = 0; i < n; ++i) {
    try {
      a.set(i, i, k(0.0));
      for (std::size_t j = 0; j < i; ++j) a.set(i, j, k(geometry::distance(x.points[i], x.points[j])));
    } catch (...) {
#pragma omp critical(rpd_schoenberg_error)
      {
        if (i < first_row) {
          first_row = i;
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return a;
}

SymmetricMatrix schoenberg_matrix_serial(const kernels::RadialKernel& k, const geometry::PointConfig& x) {
  const std::size_t n = x.size();
  SymmetricMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a.set(i, i, k(0.0));
    for (std::size_t j = 0; j < i; ++j) a.set(i, j, k(geometry::distance(x.points[i], x.points[j])));
  }
  return a;
}

std::vector<double> sym_eigenvalues_serial(const SymmetricMatrix& m) {
  const std::size_t n = m.order();
  std::vector<double> a = m.dense();
  const double target = kOffRatio * m.norm_frobenius();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_norm(a, n) <= target) return sorted_diagonal(a, n);
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        Rotation r{p, q, 1.0, 0.0};
        if (!make_rotation(a[p * n + p], a[q * n + q], a[q * n + p], r.c, r.s)) continue;
        rotate_rows(a, n, r);
        rotate_cols(a, n, r);
        a[p * n + q] = a[q * n + p] = 0.0;
      }
    }
  }
  const double off = off_norm(a, n);
  if (off <= target) return sorted_diagonal(a, n);
  sweep_cap(off);
}

std::vector<double> sym_eigenvalues(const SymmetricMatrix& m) {
  const std::size_t n = m.order();
  if (n < 2) return sym_eigenvalues_serial(m);
  std::vector<double> a = m.dense();
  const double target = kOffRatio * m.norm_frobenius();

  // Round-robin tournament: every round pairs all indices disjointly, so the
  // rotations of one round commute and can be applied concurrently.
  const std::size_t players = n + (n % 2);
  std::vector<std::size_t> pos(players);
  for (std::size_t i = 0; i < players; ++i) pos[i] = i;
  std::vector<Rotation> rots;
  rots.reserve(players / 2);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_norm(a, n) <= target) return sorted_diagonal(a, n);
    for (std::size_t round = 0; round + 1 < players; ++round) {
      rots.clear();
      for (std::size_t i = 0; i < players / 2; ++i) {
        std::size_t p = pos[i];
        std::size_t q = pos[players - 1 - i];
        if (p >= n || q >= n) continue;
        if (p > q) std::swap(p, q);
        Rotation r{p, q, 1.0, 0.0};
        if (make_rotation(a[p * n + p], a[q * n + q], a[q * n + p], r.c, r.s)) rots.push_back(r);
      }
      const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(rots.size());
#pragma omp parallel
      {
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) rotate_rows(a, n, rots[static_cast<std::size_t>(i)]);
#pragma omp for schedule(static)
        for (std::ptrdiff_t i = 0; i < count; ++i) rotate_cols(a, n, rots[static_cast<std::size_t>(i)]);
      }
      for (const Rotation& r : rots) a[r.p * n + r.q] = a[r.q * n + r.p] = 0.0;
      std::rotate(pos.begin() + 1, pos.end() - 1, pos.end());
    }
  }
  const double off = off_norm(a, n);
  if (off <= target) return sorted_diagonal(a, n);
  sweep_cap(off);
}

double default_tol(const SymmetricMatrix& a) { return 1e-9 * std::max(1.0, a.norm_inf()); }

Inertia inertia_from_eigenvalues(const std::vector<double>& eigs, double tol) {
  if (!(tol > 0.0)) throw DomainError("inertia tolerance must be positive");
  Inertia in;
  in.tol = tol;
  for (double v : eigs) {
    if (v < -tol) {
      ++in.n_neg;
    } else if (v > tol) {
      ++in.n_pos;
    } else {
      ++in.n_zero;
    }
  }
  return in;
}

Inertia inertia_of(const SymmetricMatrix& a, double tol) {
  if (!(tol > 0.0)) throw DomainError("inertia tolerance must be positive");
  return inertia_from_eigenvalues(sym_eigenvalues(a), tol);
}

int kappa_minus(const kernels::RadialKernel& k, const geometry::PointConfig& x, double tol) {
  return inertia_of(schoenberg_matrix(k, x), tol).n_neg;
}

std::vector<double> circulant_eigs(const std::vector<double>& row) {
  check_row(row);
  const std::size_t m = row.size();
  std::vector<double> out(m);
  const std::ptrdiff_t mm = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < mm; ++k) out[static_cast<std::size_t>(k)] = circulant_eig(row, static_cast<std::size_t>(k));
  return out;
}

std::vector<double> circulant_eigs_serial(const std::vector<double>& row) {
  check_row(row);
  std::vector<double> out(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) out[k] = circulant_eig(row, k);
  return out;
}

SymmetricMatrix circulant_matrix(const std::vector<double>& row) {
  check_row(row);
  const std::size_t m = row.size();
  SymmetricMatrix a(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j <= i; ++j) a.set(i, j, row[i - j]);
  }
  return a;
}

SimplexLambda simplex_lambda(int m, const kernels::RadialKernel& k, double t) {
  if (m < 1) throw DomainError("simplex_lambda needs m >= 1");
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("simplex_lambda needs t > 0");
  const double a = k(t);
  const double b = k(geometry::simplex_rho(m) * t);
  const double lambda = 1.0 + (m + 1.0) * a - (m + 2.0) * b * b;
  return {lambda, a > 1.0 || lambda < 0.0};
}

void write_matrix_csv(std::ostream& out, const SymmetricMatrix& a) {
  out << fmt::format("# rpd-lab matrix v1, order={}\n", a.order());
  for (std::size_t i = 0; i < a.order(); ++i) {
    for (std::size_t j = 0; j < a.order(); ++j) out << (j ? "," : "") << fmt::format("{:.17g}", a(i, j));
    out << '\n';
  }
}

void write_spectrum_csv(std::ostream& out, const std::vector<double>& values) {
  out << fmt::format("# rpd-lab matrix v1, order={}\n", values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << fmt::format("{:.17g}", values[i]);
  out << '\n';
}

}  // namespace rpd::matrices
