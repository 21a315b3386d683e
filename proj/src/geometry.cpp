#include "rpd/geometry.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>

#include "rpd/errors.hpp"
#include "rpd/matrices.hpp"

namespace rpd::geometry {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

std::string num(double v) { return fmt::format("{}", v); }

}  // namespace

void validate(const PointConfig& c) {
  require(c.dim >= 1, "configuration dimension must be >= 1");
  for (const auto& p : c.points) {
    require(static_cast<int>(p.size()) == c.dim, "point has the wrong dimension");
    for (double v : p) require(std::isfinite(v), "point coordinates must be finite");
  }
  auto sorted = c.points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DegenerateConfiguration("configuration '" + c.label + "' has coincident points");
  }
}

double simplex_rho(int m) { return std::sqrt((m + 1.0) / (2.0 * (m + 2.0))); }

PointConfig simplex_with_center(int m, double t) {
  require(m >= 1, "simplex needs m >= 1");
  require(t > 0.0 && std::isfinite(t), "simplex edge must be positive");
  const int v = m + 2;  // vertices, living in R^v before projection
  const int d = m + 1;
  const double c = 1.0 / v;

  // Orthonormal basis of the centred span, by Gram-Schmidt on e_i - c*1.
  std::vector<std::vector<double>> basis;
  for (int i = 0; i < d; ++i) {
    std::vector<double> w(static_cast<std::size_t>(v), -c);
    w[static_cast<std::size_t>(i)] += 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        double dot = 0.0;
        for (int k = 0; k < v; ++k) dot += w[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(k)];
        for (int k = 0; k < v; ++k) w[static_cast<std::size_t>(k)] -= dot * b[static_cast<std::size_t>(k)];
      }
    }
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : w) x /= norm;
    basis.push_back(std::move(w));
  }

  const double scale = t / std::numbers::sqrt2;
  PointConfig out;
  out.dim = d;
  out.label = fmt::format("simplex-center:{}@{}", m, num(t));
  for (int i = 0; i < v; ++i) {
    std::vector<double> p(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
      // <e_i - c*1, b_j> = b_j[i] since b_j is orthogonal to 1
      p[static_cast<std::size_t>(j)] = scale * basis[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
    out.points.push_back(std::move(p));
  }
  out.points.emplace_back(static_cast<std::size_t>(d), 0.0);
  return out;
}

PointConfig regular_polygon(int m, double r) {
  require(m >= 3, "polygon needs m >= 3");
  require(r > 0.0 && std::isfinite(r), "polygon radius must be positive");
  PointConfig out;
  out.dim = 2;
  out.label = fmt::format("polygon:{}@{}", m, num(r));
  for (int k = 0; k < m; ++k) {
    const double a = 2.0 * std::numbers::pi * k / m;
    out.points.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return out;
}

PointConfig shifted_union(const PointConfig& base, const std::vector<double>& spacings, int axis) {
  require(!spacings.empty() && spacings.front() == 0.0, "spacings must start at 0");
  for (std::size_t j = 1; j < spacings.size(); ++j) {
    require(spacings[j] > spacings[j - 1] && std::isfinite(spacings[j]), "spacings must be strictly increasing");
  }
  require(axis >= 0 && axis < base.dim, "shift axis out of range");
  PointConfig out;
  out.dim = base.dim;
  std::string list;
  for (double u : spacings) list += (list.empty() ? "" : ",") + num(u);
  out.label = fmt::format("shifted({}; {})", base.label, list);
  for (double u : spacings) {
    for (auto p : base.points) {
      p[static_cast<std::size_t>(axis)] += u;
      out.points.push_back(std::move(p));
    }
  }
  validate(out);
  return out;
}

PointConfig random_config(int dim, int count, std::uint64_t seed, double box) {
  require(dim >= 1 && count >= 1, "random configuration needs dim >= 1 and count >= 1");
  require(box > 0.0 && std::isfinite(box), "random box must be positive");
  std::mt19937_64 gen(seed);
  PointConfig out;
  out.dim = dim;
  out.label = fmt::format("random:{},{},{},{}", dim, count, seed, num(box));
  for (int i = 0; i < count; ++i) {
    std::vector<double> p(static_cast<std::size_t>(dim));
    // fixed 53-bit mapping so the stream is identical across standard libraries
    for (double& x : p) x = box * static_cast<double>(gen() >> 11) * 0x1.0p-53;
    out.points.push_back(std::move(p));
  }
  validate(out);
  return out;
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return std::sqrt(s);
}

double diameter(const PointConfig& c) {
  double d = 0.0;
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) d = std::max(d, distance(c.points[i], c.points[j]));
  }
  return d;
}

matrices::SymmetricMatrix distance_matrix(const PointConfig& c) {
  matrices::SymmetricMatrix a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) a.set(i, j, distance(c.points[i], c.points[j]));
  }
  return a;
}

namespace {

class ConfigParser {
 public:
  explicit ConfigParser(const std::string& s) : s_(s) {}

  PointConfig parse() {
    PointConfig c = config();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    return c;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError(fmt::format("configuration '{}': {} at position {}", s_, what, pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(fmt::format("expected '{}'", c));
    ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
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
  long long integer() {
    const double v = number();
    if (v != std::floor(v) || std::abs(v) > 9e15) fail("expected an integer");
    return static_cast<long long>(v);
  }
  std::string name() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) ++pos_;
    if (start == pos_) fail("expected a configuration name");
    return s_.substr(start, pos_ - start);
  }

  PointConfig config() {
    const std::string n = name();
    if (n == "simplex-center") {
      expect(':');
      const long long m = integer();
      expect('@');
      const double t = number();
      if (m < 1 || m > 10000) fail("simplex order out of range");
      return simplex_with_center(static_cast<int>(m), t);
    }
    if (n == "polygon") {
      expect(':');
      const long long m = integer();
      expect('@');
      const double r = number();
      if (m < 3 || m > 1000000) fail("polygon order out of range");
      return regular_polygon(static_cast<int>(m), r);
    }
    if (n == "random") {
      expect(':');
      const long long dim = integer();
      expect(',');
      const long long count = integer();
      expect(',');
      const long long seed = integer();
      expect(',');
      const double box = number();
      if (dim < 1 || dim > 1000 || count < 1 || count > 100000 || seed < 0) fail("random parameters out of range");
      return random_config(static_cast<int>(dim), static_cast<int>(count), static_cast<std::uint64_t>(seed), box);
    }
    if (n == "shifted") {
      expect('(');
      PointConfig base = config();
      expect(';');
      std::vector<double> u{number()};
      while (accept(',')) u.push_back(number());
      expect(')');
      return shifted_union(base, u, 0);
    }
    fail("unknown configuration '" + n + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

PointConfig parse_config(const std::string& text) { return ConfigParser(text).parse(); }

}  // namespace rpd::geometry
