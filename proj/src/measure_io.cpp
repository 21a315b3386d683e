#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "rpd/errors.hpp"
#include "rpd/measures.hpp"

namespace rpd::measures {

namespace {

double parse_number(const std::string& tok, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || std::isnan(v)) {
    throw DomainError(fmt::format("measure line {}: bad number '{}'", line, tok));
  }
  return v;
}

int parse_param(const std::string& family, const std::string& param, int line) {
  const double v = parse_number(param, line);
  if (v < 1.0 || v != std::floor(v) || v > 1000.0) {
    throw DomainError(fmt::format("measure line {}: {} needs a positive integer parameter", line, family));
  }
  return static_cast<int>(v);
}

Density family_density(const std::string& spec_text, double lo, double hi, const QuadratureSpec& spec,
                       int line) {
  const auto colon = spec_text.find(':');
  const std::string family = spec_text.substr(0, colon);
  const std::string param = colon == std::string::npos ? "" : spec_text.substr(colon + 1);
  if (family == "uniform") {
    if (!param.empty()) throw DomainError(fmt::format("measure line {}: uniform takes no parameter", line));
    return uniform_family(lo, hi);
  }
  if (param.empty()) throw DomainError(fmt::format("measure line {}: family '{}' needs a parameter", line, family));
  const int p = parse_param(family, param, line);
  if (family == "exp") return classical_family(ClassicalFamily::exp_decay, p);
  if (family == "gauss") return classical_family(ClassicalFamily::gauss_decay, p);
  if (family == "omega_sq") return omega_sq_family(p);
  if (family == "omega_sq_down") return omega_sq_step_back_family(p, spec);
  throw DomainError(fmt::format("measure line {}: unknown density family '{}'", line, family));
}

}  // namespace

RadialMeasure read_measure(std::istream& in, const QuadratureSpec& spec) {
  std::vector<Atom> atoms;
  std::optional<Density> density;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    std::istringstream ls(text);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (kind == "atom") {
      if (tok.size() != 2) throw DomainError(fmt::format("measure line {}: expected 'atom <location> <mass>'", line));
      atoms.push_back({parse_number(tok[0], line), parse_number(tok[1], line)});
    } else if (kind == "density") {
      if (density) throw DomainError(fmt::format("measure line {}: only one density line is allowed", line));
      const bool weighted = tok.size() == 9 && tok[7] == "weight";
      if (!(tok.size() == 7 || weighted) || tok[1] != "support" || tok[4] != "exps") {
        throw DomainError(fmt::format(
            "measure line {}: expected 'density <family>:<params> support <lo> <hi> exps <l> <r> [weight <w>]'",
            line));
      }
      const double lo = parse_number(tok[2], line);
      const double hi = parse_number(tok[3], line);
      Density d = family_density(tok[0], lo, hi, spec, line);
      d.lo = lo;
      d.hi = hi;
      d.left_exponent = parse_number(tok[5], line);
      d.right_exponent = parse_number(tok[6], line);
      if (weighted) {
        const double w = parse_number(tok[8], line);
        if (!(w > 0.0)) throw DomainError(fmt::format("measure line {}: weight must be positive", line));
        auto inner = d.eval;
        d.eval = [inner, w](const Abscissa& a) { return w * inner(a); };
        d.weight *= w;
      }
      density = std::move(d);
    } else {
      throw DomainError(fmt::format("measure line {}: unknown item '{}'", line, kind));
    }
  }
  return RadialMeasure::make(std::move(atoms), std::move(density), spec);
}

RadialMeasure read_measure_file(const std::string& path, const QuadratureSpec& spec) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open measure file '" + path + "'");
  return read_measure(in, spec);
}

void write_measure(std::ostream& out, const RadialMeasure& nu) {
  for (const Atom& a : nu.atoms()) out << fmt::format("atom {:.17g} {:.17g}\n", a.location, a.mass);
  if (const auto& d = nu.density()) {
    if (d->tag.empty()) throw DomainError("density has no text form");
    out << fmt::format("density {} support {:.17g} {:.17g} exps {:.17g} {:.17g}", d->tag, d->lo, d->hi,
                       d->left_exponent, d->right_exponent);
    // uniform carries its mass in the weight; families are unit-mass otherwise
    if (d->weight != 1.0) out << fmt::format(" weight {:.17g}", d->weight);
    out << '\n';
  }
}

}  // namespace rpd::measures
