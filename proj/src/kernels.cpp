#include "rpd/kernels.hpp"

#include <fmt/format.h>

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "rpd/errors.hpp"
#include "rpd/specfun.hpp"

namespace rpd::kernels {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// Rational with overflow tracking; falls back to "inexact" rather than wrapping.
struct Q {
  __int128 num = 0;
  __int128 den = 1;
  bool ok = true;

  static Q of(long long n, long long d = 1) { return Q{n, d, true}.norm(); }

  Q norm() const {
    if (!ok) return *this;
    Q r = *this;
    if (r.den < 0) {
      r.num = -r.num;
      r.den = -r.den;
    }
    __int128 a = r.num < 0 ? -r.num : r.num;
    __int128 b = r.den;
    while (b != 0) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      r.num /= a;
      r.den /= a;
    }
    constexpr __int128 kLimit = static_cast<__int128>(1) << 62;
    if (r.den > kLimit || r.num > kLimit || r.num < -kLimit) r.ok = false;
    return r;
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Q operator+(Q a, Q b) {
  if (!a.ok || !b.ok) return Q{0, 1, false};
  return Q{a.num * b.den + b.num * a.den, a.den * b.den, true}.norm();
}
Q operator*(Q a, Q b) {
  if (!a.ok || !b.ok) return Q{0, 1, false};
  return Q{a.num * b.num, a.den * b.den, true}.norm();
}

// Exact rational form of a double with a small denominator, if any.
Q rational_of(double x) {
  for (long long den : {1LL, 2LL, 4LL, 8LL, 16LL, 32LL, 64LL, 128LL, 256LL, 512LL, 1024LL, 10LL, 100LL,
                        1000LL, 10000LL, 100000LL, 1000000LL}) {
    const double n = std::round(x * static_cast<double>(den));
    if (std::abs(n) < 1e15 && n / static_cast<double>(den) == x) return Q::of(static_cast<long long>(n), den);
  }
  return Q{0, 1, false};
}

struct Front {
  double a1, a2;
  Q q1, q2;
};

Front product_front(const Front& f, const Front& g) {
  return {f.a1 + g.a1, f.a2 + g.a2 + f.a1 * g.a1, f.q1 + g.q1, f.q2 + g.q2 + f.q1 * g.q1};
}

Front front_of(const RadialKernel& k) {
  return std::visit(
      overloaded{
          [](const Omega& o) -> Front {
            const long long n = o.n;
            return {1.0 / (2.0 * n), 1.0 / (8.0 * n * (n + 2)), Q::of(1, 2 * n), Q::of(1, 8 * n * (n + 2))};
          },
          [](const ExpDecay&) -> Front {
            throw UnsupportedKernel("exp kernel has an odd Taylor term; the criterion does not apply");
          },
          [](const GaussDecay&) -> Front { return {1.0, 0.5, Q::of(1), Q::of(1, 2)}; },
          [](const Cosine& c) -> Front {
            const double s2 = c.s * c.s;
            const Q qs = rational_of(c.s);
            return {s2 / 2.0, s2 * s2 / 24.0, qs * qs * Q::of(1, 2), qs * qs * qs * qs * Q::of(1, 24)};
          },
          [](const Scaled& s) -> Front {
            const Front f = front_of(*s.inner);
            const double a2 = s.a * s.a;
            const Q qa = rational_of(s.a);
            return {f.a1 * a2, f.a2 * a2 * a2, f.q1 * qa * qa, f.q2 * qa * qa * qa * qa};
          },
          [](const Product& p) -> Front { return product_front(front_of(*p.left), front_of(*p.right)); },
          [](const Power& p) -> Front {
            const Front base = front_of(*p.inner);
            Front acc = base;
            for (int i = 1; i < p.p; ++i) acc = product_front(acc, base);
            return acc;
          },
          [](const Mixture& m) -> Front {
            const double s2 = m.measure->moment(2, m.spec);
            const double s4 = m.measure->moment(4, m.spec);
            if (!std::isfinite(s2) || !std::isfinite(s4)) {
              throw UnsupportedKernel("mixture measure has no finite fourth moment");
            }
            const double n = m.n;
            return {s2 / (2.0 * n), s4 / (8.0 * n * (n + 2.0)), Q{0, 1, false}, Q{0, 1, false}};
          },
      },
      k.node());
}

// floor of a rational
__int128 floor_q(const Q& q) {
  __int128 f = q.num / q.den;
  if (q.num % q.den != 0 && q.num < 0) --f;
  return f;
}

class Parser {
 public:
  Parser(const std::string& text, const quad::QuadratureSpec& spec) : s_(text), spec_(spec) {}

  RadialKernel parse() {
    RadialKernel k = kernel();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return k;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError(fmt::format("kernel '{}': {} at position {}", s_, what, pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(fmt::format("expected '{}'", c));
    ++pos_;
  }
  std::string name() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a kernel name");
    return s_.substr(start, pos_ - start);
  }
  double number() {
    skip_ws();
    const char* begin = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || !std::isfinite(v)) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - begin);
    return v;
  }
  int integer() {
    const double v = number();
    if (v != std::floor(v) || std::abs(v) > 1e6) fail("expected an integer");
    return static_cast<int>(v);
  }

  RadialKernel kernel() {
    const std::string n = name();
    if (n == "omega") {
      expect(':');
      return RadialKernel::omega(integer());
    }
    if (n == "exp") return RadialKernel::exp_decay();
    if (n == "gauss") return RadialKernel::gauss_decay();
    if (n == "cos") {
      expect(':');
      return RadialKernel::cosine(number());
    }
    if (n == "scale") {
      expect(':');
      const double a = number();
      expect('(');
      RadialKernel inner = kernel();
      expect(')');
      return RadialKernel::scaled(inner, a);
    }
    if (n == "prod") {
      expect('(');
      RadialKernel left = kernel();
      expect(',');
      RadialKernel right = kernel();
      expect(')');
      return RadialKernel::product(left, right);
    }
    if (n == "pow") {
      expect(':');
      const int p = integer();
      expect('(');
      RadialKernel inner = kernel();
      expect(')');
      return RadialKernel::power(inner, p);
    }
    if (n == "mix") {
      expect(':');
      const int dim = integer();
      expect('@');
      const std::size_t start = pos_;
      while (pos_ < s_.size() && s_[pos_] != ')' && s_[pos_] != ',') ++pos_;
      const std::string file = s_.substr(start, pos_ - start);
      if (file.empty()) fail("expected a measure file");
      auto nu = std::make_shared<const measures::RadialMeasure>(measures::read_measure_file(file, spec_));
      return RadialKernel::mixture(dim, nu, spec_, file);
    }
    fail("unknown kernel '" + n + "'");
  }

  const std::string& s_;
  const quad::QuadratureSpec& spec_;
  std::size_t pos_ = 0;
};

}  // namespace

RadialKernel RadialKernel::omega(int n) {
  require(n >= 1, "omega kernel needs n >= 1");
  return RadialKernel(Omega{n});
}
RadialKernel RadialKernel::exp_decay() { return RadialKernel(ExpDecay{}); }
RadialKernel RadialKernel::gauss_decay() { return RadialKernel(GaussDecay{}); }
RadialKernel RadialKernel::cosine(double s) {
  require(s > 0.0 && std::isfinite(s), "cosine kernel needs s > 0");
  return RadialKernel(Cosine{s});
}
RadialKernel RadialKernel::scaled(const RadialKernel& inner, double a) {
  require(a > 0.0 && std::isfinite(a), "scale factor must be positive");
  return RadialKernel(Scaled{std::make_shared<const RadialKernel>(inner), a});
}
RadialKernel RadialKernel::product(const RadialKernel& left, const RadialKernel& right) {
  return RadialKernel(
      Product{std::make_shared<const RadialKernel>(left), std::make_shared<const RadialKernel>(right)});
}
RadialKernel RadialKernel::power(const RadialKernel& inner, int p) {
  require(p >= 1, "kernel power must be a positive integer");
  return RadialKernel(Power{std::make_shared<const RadialKernel>(inner), p});
}
RadialKernel RadialKernel::mixture(int n, measures::MeasurePtr measure, const quad::QuadratureSpec& spec,
                                   std::string source) {
  require(n >= 1, "mixture kernel needs n >= 1");
  require(measure != nullptr, "mixture kernel needs a measure");
  if (std::abs(measure->total_mass() - 1.0) > 1e-8) {
    throw DomainError(fmt::format("mixture measure must have mass 1, got {}", measure->total_mass()));
  }
  spec.validate();
  return RadialKernel(Mixture{n, std::move(measure), spec, std::move(source)});
}

double RadialKernel::operator()(double r) const {
  require(r >= 0.0 && !std::isnan(r), "kernel argument must be >= 0");
  return std::visit(overloaded{
                        [r](const Omega& o) { return specfun::omega(o.n, r); },
                        [r](const ExpDecay&) { return std::exp(-r); },
                        [r](const GaussDecay&) { return std::exp(-r * r); },
                        [r](const Cosine& c) { return std::cos(c.s * r); },
                        [r](const Scaled& s) { return (*s.inner)(s.a * r); },
                        [r](const Product& p) { return (*p.left)(r) * (*p.right)(r); },
                        [r](const Power& p) {
                          const double v = (*p.inner)(r);
                          double acc = v;
                          for (int i = 1; i < p.p; ++i) acc *= v;
                          return acc;
                        },
                        [r](const Mixture& m) { return measures::schoenberg_transform(m.n, *m.measure, r, m.spec); },
                    },
                    node_);
}

std::string RadialKernel::describe() const {
  return std::visit(overloaded{
                        [](const Omega& o) { return fmt::format("omega:{}", o.n); },
                        [](const ExpDecay&) { return std::string("exp"); },
                        [](const GaussDecay&) { return std::string("gauss"); },
                        [](const Cosine& c) { return fmt::format("cos:{}", c.s); },
                        [](const Scaled& s) { return fmt::format("scale:{}({})", s.a, s.inner->describe()); },
                        [](const Product& p) {
                          return fmt::format("prod({},{})", p.left->describe(), p.right->describe());
                        },
                        [](const Power& p) { return fmt::format("pow:{}({})", p.p, p.inner->describe()); },
                        [](const Mixture& m) {
                          return fmt::format("mix:{}@{}", m.n, m.source.empty() ? "<memory>" : m.source);
                        },
                    },
                    node_);
}

double eval_kernel(const RadialKernel& k, double r) { return k(r); }

TaylorFront taylor_coeffs(const RadialKernel& k) {
  const Front f = front_of(k);
  TaylorFront t;
  t.a1 = f.a1;
  t.a2 = f.a2;
  if (f.q1.ok && f.q2.ok) {
    t.exact = true;
    t.a1_num = static_cast<long long>(f.q1.num);
    t.a1_den = static_cast<long long>(f.q1.den);
    t.a2_num = static_cast<long long>(f.q2.num);
    t.a2_den = static_cast<long long>(f.q2.den);
    t.a1 = f.q1.value();
    t.a2 = f.q2.value();
  }
  return t;
}

std::optional<int> taylor_nonmembership(const TaylorFront& t) {
  // (2m+6) a2 < (m+1) a1^2  <=>  m d > 6 a2 - a1^2 with d = a1^2 - 2 a2.
  if (t.exact) {
    const Q a1 = Q::of(t.a1_num, t.a1_den);
    const Q a2 = Q::of(t.a2_num, t.a2_den);
    const Q sq = a1 * a1;
    const Q d = sq + Q::of(-2) * a2;
    const Q rhs = Q::of(6) * a2 + Q::of(-1) * sq;
    if (d.ok && rhs.ok) {
      if (d.num <= 0) return std::nullopt;
      const Q q = rhs * Q{d.den, d.num, true}.norm();
      if (q.ok) {
        const __int128 m = floor_q(q) + 1;  // strict: a tie at integer q is silent
        if (m > 1000000) return std::nullopt;
        return static_cast<int>(std::max<__int128>(1, m));
      }
    }
  }
  const double d = t.a1 * t.a1 - 2.0 * t.a2;
  if (!(d > 0.0)) return std::nullopt;
  const double q = (6.0 * t.a2 - t.a1 * t.a1) / d;
  if (q > 1e6) return std::nullopt;
  const double rq = std::round(q);
  // Ties within rounding are treated as exact ties (criterion silent at m = q).
  const double fl = std::abs(q - rq) <= 1e-9 * std::max(1.0, std::abs(q)) ? rq : std::floor(q);
  return std::max(1, static_cast<int>(fl) + 1);
}

std::optional<int> taylor_nonmembership(const RadialKernel& k) { return taylor_nonmembership(taylor_coeffs(k)); }

RadialKernel parse_kernel(const std::string& text, const quad::QuadratureSpec& spec) {
  return Parser(text, spec).parse();
}

}  // namespace rpd::kernels
