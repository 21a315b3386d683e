#pragma once

// Composable radial kernels r -> f(r) with f(0) = 1.

#include <memory>
#include <optional>
#include <string>
#include <variant>

#include "rpd/measures.hpp"
#include "rpd/quadrature.hpp"

namespace rpd::kernels {

class RadialKernel;
using KernelPtr = std::shared_ptr<const RadialKernel>;

struct Omega {
  int n;
};
struct ExpDecay {};
struct GaussDecay {};
struct Cosine {
  double s;
};
struct Scaled {
  KernelPtr inner;
  double a;
};
struct Product {
  KernelPtr left;
  KernelPtr right;
};
struct Power {
  KernelPtr inner;
  int p;
};
struct Mixture {
  int n;
  measures::MeasurePtr measure;
  quad::QuadratureSpec spec;
  std::string source;  // file name for the grammar form
};

class RadialKernel {
 public:
  using Variant = std::variant<Omega, ExpDecay, GaussDecay, Cosine, Scaled, Product, Power, Mixture>;

  static RadialKernel omega(int n);
  static RadialKernel exp_decay();
  static RadialKernel gauss_decay();
  static RadialKernel cosine(double s);
  static RadialKernel scaled(const RadialKernel& inner, double a);
  static RadialKernel product(const RadialKernel& left, const RadialKernel& right);
  static RadialKernel power(const RadialKernel& inner, int p);
  // The measure must be a probability measure.
  static RadialKernel mixture(int n, measures::MeasurePtr measure, const quad::QuadratureSpec& spec,
                              std::string source = {});

  const Variant& node() const { return node_; }

  double operator()(double r) const;

  // Grammar form, e.g. "pow:2(omega:3)".
  std::string describe() const;

 private:
  explicit RadialKernel(Variant v) : node_(std::move(v)) {}
  Variant node_;
};

double eval_kernel(const RadialKernel& k, double r);

// f(z) = 1 - a1 z^2 + a2 z^4 - ...
struct TaylorFront {
  double a1 = 0.0;
  double a2 = 0.0;
  // Exact rational values when every ingredient is rational.
  bool exact = false;
  long long a1_num = 0, a1_den = 1, a2_num = 0, a2_den = 1;
};

// Throws UnsupportedKernel for ExpDecay (odd term in r) and for mixtures
// whose measure lacks a finite fourth moment.
TaylorFront taylor_coeffs(const RadialKernel& k);

// Smallest m >= 1 with (2m+6) a2 < (m+1) a1^2, i.e. f not in Phi_{m+1};
// empty when the criterion never fires.
std::optional<int> taylor_nonmembership(const RadialKernel& k);
std::optional<int> taylor_nonmembership(const TaylorFront& t);

// Parses the CLI grammar: omega:n, exp, gauss, cos:s, scale:a(K), prod(K,K),
// pow:p(K), mix:n@FILE. Mixture measures are read with `spec`.
RadialKernel parse_kernel(const std::string& text, const quad::QuadratureSpec& spec);

}  // namespace rpd::kernels
