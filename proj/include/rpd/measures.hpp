#pragma once

// Radial measures on [0, inf): atoms plus an optional density with declared
// support and endpoint exponents. Densities take a quad::Abscissa so that
// distances to singular endpoints survive rounding.

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rpd/quadrature.hpp"

namespace rpd::measures {

using quad::Abscissa;
using quad::QuadratureSpec;

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

// How the density behaves as u -> hi when hi is infinite.
struct Tail {
  enum class Kind { compact, rapid, power, unknown };
  Kind kind = Kind::compact;
  double exponent = 0.0;  // density ~ u^-exponent for Kind::power
};

struct Density {
  std::function<double(const Abscissa&)> eval;
  double lo = 0.0;
  double hi = 0.0;
  double left_exponent = 0.0;
  double right_exponent = 0.0;
  std::vector<double> breaks;  // interior points with integrable singularities
  Tail tail;
  std::string tag;  // text-format family descriptor, e.g. "exp:3"; empty if not serialisable
  double weight = 1.0;  // multiplier already folded into eval; kept for the text form
};

class RadialMeasure {
 public:
  // Computes total_mass by quadrature. When expected_mass is given, a
  // mismatch above 1e-7 is reported as NumericalFailure.
  static RadialMeasure make(std::vector<Atom> atoms, std::optional<Density> density,
                            const QuadratureSpec& spec,
                            std::optional<double> expected_mass = std::nullopt);

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::optional<Density>& density() const { return density_; }
  double total_mass() const { return total_mass_; }
  double density_mass() const { return density_mass_; }

  // Largest point of the support (inf for unbounded densities).
  double support_hi() const;
  // Smallest point of the support.
  double support_lo() const;

  // True when the measure has atoms or its density vanishes near 0; such a
  // measure cannot be the Schoenberg measure of a kernel one dimension up.
  bool blocks_promotion() const;

  // Integral of u^k against the measure; inf when the tail makes it diverge.
  double moment(int k, const QuadratureSpec& spec) const;

  // Integral of g(u) over the measure (atoms by point evaluation).
  double integrate(const std::function<double(const Abscissa&)>& g, const QuadratureSpec& spec) const;

 private:
  std::vector<Atom> atoms_;
  std::optional<Density> density_;
  double total_mass_ = 0.0;
  double density_mass_ = 0.0;
};

using MeasurePtr = std::shared_ptr<const RadialMeasure>;

enum class ClassicalFamily { exp_decay, gauss_decay };

// Schoenberg densities in R^m of e^{-r} and e^{-r^2}.
double classical_family_density(ClassicalFamily family, int m, double u);
Density classical_family(ClassicalFamily family, int m);
RadialMeasure classical_family_measure(ClassicalFamily family, int m, const QuadratureSpec& spec);

// f(r) = sum m_i Omega_n(r t_i) + int Omega_n(r t) p(t) dt.
double schoenberg_transform(int n, const RadialMeasure& nu, double r, const QuadratureSpec& spec);

// Density in R^m obtained from the R^{m+k} Schoenberg measure nu.
double transition_density(int m, int k, const RadialMeasure& nu, double x, const QuadratureSpec& spec);
RadialMeasure transition_measure(int m, int k, MeasurePtr nu, const QuadratureSpec& spec);

// Schoenberg density in R^m of r -> int e^{-s r^2} sigma(ds).
double gaussian_mixture_density(int m, const RadialMeasure& sigma, double x, const QuadratureSpec& spec);
RadialMeasure gaussian_mixture_measure(int m, MeasurePtr sigma, const QuadratureSpec& spec);

// Schoenberg measure of Omega_n^2 in R^{2n-2} (n >= 2) and its density.
double omega_sq_constant(int n);
double omega_sq_density(int n, double x);
Density omega_sq_family(int n);
// n = 1 gives (delta_0 + delta_2) / 2.
RadialMeasure omega_sq_measure(int n, const QuadratureSpec& spec);

// Schoenberg density of Omega_n^2 in R^{2n-3}; normalising constant by quadrature.
double omega_sq_step_back_constant(int n, const QuadratureSpec& spec);
double omega_sq_step_back_density(int n, double x, const QuadratureSpec& spec);
Density omega_sq_step_back_family(int n, const QuadratureSpec& spec);

struct ProductSupport {
  quad::Interval support;
  bool not_in_next_class = false;
};
// Support of the R^n Schoenberg measure of Omega_n(a.)Omega_n(b.).
ProductSupport product_kernel_support(int n, double a, double b);

// R^{2n-2} density of f(r) = int Omega_n^2(r t) sigma(dt).
double phi2_subclass_density(int n, const RadialMeasure& sigma, double u, const QuadratureSpec& spec);
RadialMeasure phi2_subclass_measure(int n, MeasurePtr sigma, const QuadratureSpec& spec);

// Uniform density on [lo, hi] with total mass `mass`.
Density uniform_family(double lo, double hi, double mass = 1.0);

// Text format: one item per line,
//   atom <location> <mass>
//   density <family>:<params> support <lo> <hi> exps <l> <r> [weight <w>]
// The weight scales a family density; it defaults to 1. At most one density.
// Families: exp:m, gauss:m, omega_sq:n, omega_sq_down:n, uniform.
// Blank lines and lines starting with '#' are ignored.
RadialMeasure read_measure(std::istream& in, const QuadratureSpec& spec);
RadialMeasure read_measure_file(const std::string& path, const QuadratureSpec& spec);
void write_measure(std::ostream& out, const RadialMeasure& nu);

}  // namespace rpd::measures
