#include "rpd/cli.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>

#include "rpd/analysis.hpp"
#include "rpd/errors.hpp"
#include "rpd/geometry.hpp"
#include "rpd/kernels.hpp"
#include "rpd/matrices.hpp"
#include "rpd/measures.hpp"
#include "rpd/specfun.hpp"
#include "rpd/verify.hpp"

namespace rpd::cli {

namespace {

using json = nlohmann::ordered_json;

std::string g17(double v) { return fmt::format("{:.17g}", v); }

struct Options {
  // shared
  std::string kernel;
  std::string config;
  double tol = 0.0;
  // eval
  std::vector<double> at;
  // inertia
  bool dump_matrix = false;
  bool dump_spectrum = false;
  int trials = 1;
  // simplex-scan / polygon / fourier
  int m = 0;
  double r = 0.0;
  bool dense = false;
  int idx = 1;
  int idx_max = 0;
  // transition / density
  int dim = 0;
  int k = 0;
  std::string measure;
  std::string family;
  std::vector<double> xs;
  std::vector<double> grid;
  // growth / moments
  std::string base;
  int copies = 0;
  int n = 0;
  // verify
  std::string only;
};

void emit_density(std::ostream& out, const std::vector<double>& xs, const std::function<double(double)>& p) {
  out << "# rpd-lab density v1\n";
  out << "x,p(x)\n";
  for (double x : xs) out << g17(x) << ',' << g17(p(x)) << '\n';
}

std::vector<double> sample_points(const Options& o) {
  std::vector<double> xs = o.xs;
  if (!o.grid.empty()) {
    if (o.grid.size() != 3 || !(o.grid[2] >= 1) || o.grid[2] != std::floor(o.grid[2]) || !(o.grid[1] >= o.grid[0])) {
      throw DomainError("--grid takes LO HI COUNT with LO <= HI and a positive integer COUNT");
    }
    const int count = static_cast<int>(o.grid[2]);
    for (int i = 0; i < count; ++i) {
      xs.push_back(count == 1 ? o.grid[0] : o.grid[0] + (o.grid[1] - o.grid[0]) * i / (count - 1));
    }
  }
  if (xs.empty()) throw DomainError("give sample points with --x or --grid");
  return xs;
}

int cmd_eval(const Options& o, const quad::QuadratureSpec& spec, std::ostream& out) {
  const auto k = kernels::parse_kernel(o.kernel, spec);
  out << "r,f(r)\n";
  for (double r : o.at) out << g17(r) << ',' << g17(k(r)) << '\n';
  return kOk;
}

int cmd_inertia(const Options& o, const quad::QuadratureSpec& spec, std::ostream& out) {
  const auto k = kernels::parse_kernel(o.kernel, spec);
  auto cfg = geometry::parse_config(o.config);
  if (o.trials > 1) {
    // Random search: repeat a random:dim,count,seed,box configuration with
    // consecutive seeds and keep the most negative smallest eigenvalue.
    if (o.config.rfind("random:", 0) != 0) throw DomainError("--trials needs a random:dim,count,seed,box configuration");
    unsigned long long dim = 0, count = 0, seed = 0;
    double box = 0.0;
    if (std::sscanf(o.config.c_str(), "random:%llu,%llu,%llu,%lf", &dim, &count, &seed, &box) != 4) {
      throw DomainError("bad random configuration");
    }
    double best = std::numeric_limits<double>::infinity();
    std::string best_label;
    int best_neg = 0;
    for (int t = 0; t < o.trials; ++t) {
      const auto c = geometry::random_config(static_cast<int>(dim), static_cast<int>(count), seed + t, box);
      const auto a = matrices::schoenberg_matrix(k, c);
      const auto e = matrices::sym_eigenvalues(a);
      const double tol = o.tol > 0.0 ? o.tol : matrices::default_tol(a);
      if (e.front() < best) {
        best = e.front();
        best_label = c.label;
        best_neg = matrices::inertia_from_eigenvalues(e, tol).n_neg;
      }
    }
    json j;
    j["kernel"] = k.describe();
    j["search"] = o.config;
    j["trials"] = o.trials;
    j["best_config"] = best_label;
    j["min_eigenvalue"] = best;
    j["n_neg"] = best_neg;
    out << j.dump(2) << '\n';
    return kOk;
  }
  const auto a = matrices::schoenberg_matrix(k, cfg);
  if (o.dump_matrix) {
    matrices::write_matrix_csv(out, a);
    return kOk;
  }
  const auto e = matrices::sym_eigenvalues(a);
  if (o.dump_spectrum) {
    matrices::write_spectrum_csv(out, e);
    return kOk;
  }
  const double tol = o.tol > 0.0 ? o.tol : matrices::default_tol(a);
  const auto in = matrices::inertia_from_eigenvalues(e, tol);
  json j;
  j["kernel"] = k.describe();
  j["config"] = cfg.label;
  j["order"] = a.order();
  j["tol"] = tol;
  j["n_neg"] = in.n_neg;
  j["n_zero"] = in.n_zero;
  j["n_pos"] = in.n_pos;
  j["min_eigenvalue"] = e.empty() ? 0.0 : e.front();
  out << j.dump(2) << '\n';
  return kOk;
}

int cmd_simplex_scan(const Options& o, const quad::QuadratureSpec& spec, std::ostream& out) {
  const auto k = kernels::parse_kernel(o.kernel, spec);
  const double base_tol = o.tol > 0.0 ? o.tol : 1e-9;
  const double threshold = -10.0 * base_tol * (o.m + 3);
  out << "t,lambda,has_negative\n";
  for (double t = 0.5; t >= 0x1.0p-30; t *= 0.5) {
    const auto l = matrices::simplex_lambda(o.m, k, t);
    out << g17(t) << ',' << g17(l.lambda) << ',' << (l.has_negative ? "true" : "false") << '\n';
    if (l.lambda < threshold) return kOk;
  }
  return kFailed;
}

int cmd_polygon(const Options& o, const quad::QuadratureSpec& spec, std::ostream& out) {
  const auto k = kernels::parse_kernel(o.kernel, spec);
  std::vector<double> e;
  if (o.dense) {
    e = matrices::sym_eigenvalues(matrices::schoenberg_matrix(k, geometry::regular_polygon(o.m, o.r)));
  } else {
    e = analysis::polygon_eigs(k, o.m, o.r);
  }
  matrices::write_spectrum_csv(out, e);
  return kOk;
}

int cmd_fourier(const Options& o, const quad::QuadratureSpec& spec, std::ostream& out) {
  const auto k = kernels::parse_kernel(o.kernel, spec);
  const int last = std::max(o.idx, o.idx_max);
  out << "k,coefficient\n";
  for (int i = o.idx; i <= last; ++i) out << i << ',' << g17(analysis::fourier_coefficient(k, i, o.r, spec)) << '\n';
  return kOk;
}

int cmd_transition(const Options& o, const quad::QuadratureSpec& spec, std::ostream& out) {
  const auto nu = measures::read_measure_file(o.measure, spec);
  emit_density(out, sample_points(o), [&](double x) { return measures::transition_density(o.dim, o.k, nu, x, spec); });
  return kOk;
}

int cmd_density(const Options& o, const quad::QuadratureSpec& spec, std::ostream& out) {
  const auto colon = o.family.find(':');
  if (colon == std::string::npos) throw DomainError("--family needs the form name:param");
  const std::string name = o.family.substr(0, colon);
  std::string rest = o.family.substr(colon + 1);
  std::string file;
  if (const auto at = rest.find('@'); at != std::string::npos) {
    file = rest.substr(at + 1);
    rest = rest.substr(0, at);
  }
  int p = 0;
  try {
    std::size_t used = 0;
    p = std::stoi(rest, &used);
    if (used != rest.size() || p < 1) throw std::invalid_argument("bad");
  } catch (const std::exception&) {
    throw DomainError("--family parameter must be a positive integer");
  }
  const auto xs = sample_points(o);
  using measures::ClassicalFamily;
  if (name == "exp" || name == "gauss") {
    const auto fam = name == "exp" ? ClassicalFamily::exp_decay : ClassicalFamily::gauss_decay;
    emit_density(out, xs, [&](double x) { return measures::classical_family_density(fam, p, x); });
  } else if (name == "omega_sq") {
    emit_density(out, xs, [&](double x) { return measures::omega_sq_density(p, x); });
  } else if (name == "omega_sq_down") {
    emit_density(out, xs, [&](double x) { return measures::omega_sq_step_back_density(p, x, spec); });
  } else if (name == "mixture" || name == "phi2") {
    if (file.empty()) throw DomainError("--family " + name + " needs @FILE");
    const auto sigma = measures::read_measure_file(file, spec);
    if (name == "mixture") {
      emit_density(out, xs, [&](double x) { return measures::gaussian_mixture_density(p, sigma, x, spec); });
    } else {
      emit_density(out, xs, [&](double x) { return measures::phi2_subclass_density(p, sigma, x, spec); });
    }
  } else {
    throw DomainError("unknown density family '" + name + "'");
  }
  return kOk;
}

json report_json(const analysis::CertificateReport& rep) {
  json j;
  j["claim"] = rep.claim;
  json w = json::object();
  for (const auto& [k, v] : rep.witness) w[k] = v;
  j["witness"] = w;
  j["margin"] = rep.margin;
  j["tol"] = rep.tol;
  j["passed"] = rep.passed;
  return j;
}

int cmd_growth(const Options& o, const quad::QuadratureSpec& spec, std::ostream& out) {
  const auto k = kernels::parse_kernel(o.kernel, spec);
  const auto base = geometry::parse_config(o.base);
  analysis::CertificateReport rep;
  try {
    rep = analysis::negative_squares_growth(k, base, o.copies, o.tol);
  } catch (const UnsupportedKernel& e) {
    rep.claim = fmt::format("kappa_minus({}) growth on shifted copies", k.describe());
    rep.witness = {{"kernel", k.describe()}, {"base", base.label}, {"rejected", e.what()}};
    rep.passed = false;
  }
  out << report_json(rep).dump(2) << '\n';
  return rep.passed ? kOk : kFailed;
}

int cmd_moment(const Options& o, std::ostream& out) {
  const auto s = analysis::omega_moments(o.n, 2);
  const double det = analysis::moment_determinant(o.n);
  json j;
  j["claim"] = fmt::format("Omega_{} not in Phi_{}", o.n, o.n + 1);
  j["witness"] = json{{"n", o.n}, {"s0", s[0]}, {"s2", s[1]}, {"s4", s[2]}};
  j["determinant"] = det;
  j["closed_form"] = analysis::moment_determinant_closed(o.n);
  j["margin"] = -det;
  j["passed"] = det < 0.0;
  j["verdict"] = det < 0.0 ? fmt::format("Omega_{} not in Phi_{}", o.n, o.n + 1) : std::string("inconclusive");
  out << j.dump(2) << '\n';
  return det < 0.0 ? kOk : kFailed;
}

int cmd_verify(const Options& o, const quad::QuadratureSpec& spec, std::ostream& out) {
  const auto results = verify::run_suite(o.only.empty() ? std::nullopt : std::optional<std::string>(o.only), spec);
  if (results.empty()) throw DomainError("no criterion matches --only " + o.only);
  bool all = true;
  for (const auto& r : results) {
    out << verify::format_line(r) << '\n';
    all = all && r.passed;
  }
  const auto passed = std::count_if(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  out << fmt::format("{}/{} criteria passed\n", passed, results.size());
  return all ? kOk : kFailed;
}

}  // namespace

int run_command(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Radial positive definite function lab"};
  app.name("rpd-lab");
  app.require_subcommand(1);
  Options o;

  auto* eval = app.add_subcommand("eval", "evaluate a kernel");
  eval->add_option("--kernel", o.kernel, "kernel expression")->required();
  eval->add_option("--at", o.at, "radii")->required()->check(CLI::NonNegativeNumber);

  auto* inertia = app.add_subcommand("inertia", "inertia of a Schoenberg matrix");
  inertia->add_option("--kernel", o.kernel)->required();
  inertia->add_option("--config", o.config)->required();
  inertia->add_option("--tol", o.tol, "threshold (default 1e-9 max(1,|A|_inf))")->check(CLI::PositiveNumber);
  inertia->add_flag("--matrix", o.dump_matrix, "print the matrix as CSV");
  inertia->add_flag("--spectrum", o.dump_spectrum, "print the eigenvalues as CSV");
  inertia->add_option("--trials", o.trials, "random search over consecutive seeds")->check(CLI::Range(1, 100000));

  auto* scan = app.add_subcommand("simplex-scan", "lambda(t) on the simplex-with-centre witness");
  scan->add_option("--kernel", o.kernel)->required();
  scan->add_option("--m", o.m)->required()->check(CLI::Range(1, 10000));
  scan->add_option("--tol", o.tol)->check(CLI::PositiveNumber);

  auto* poly = app.add_subcommand("polygon-spectrum", "spectrum of the regular m-gon matrix");
  poly->add_option("--kernel", o.kernel)->required();
  poly->add_option("--m", o.m)->required()->check(CLI::Range(3, 1 << 22));
  poly->add_option("--r", o.r)->required()->check(CLI::PositiveNumber);
  poly->add_flag("--dense", o.dense, "use the dense eigensolver instead of the closed form");

  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients g^(k, r)");
  fourier->add_option("--kernel", o.kernel)->required();
  fourier->add_option("--idx", o.idx)->check(CLI::Range(1, 100000));
  fourier->add_option("--idx-max", o.idx_max)->check(CLI::Range(1, 100000));
  fourier->add_option("--r", o.r)->required()->check(CLI::PositiveNumber);

  auto* trans = app.add_subcommand("transition", "k-step transition density");
  trans->add_option("--m", o.dim)->required()->check(CLI::Range(1, 1000));
  trans->add_option("--k", o.k)->required()->check(CLI::Range(1, 1000));
  trans->add_option("--measure", o.measure, "measure file")->required()->check(CLI::ExistingFile);
  trans->add_option("--x", o.xs)->check(CLI::PositiveNumber);
  trans->add_option("--grid", o.grid, "LO HI COUNT")->expected(3);

  auto* dens = app.add_subcommand("density", "closed or derived Schoenberg densities");
  dens->add_option("--family", o.family, "exp:m, gauss:m, omega_sq:n, omega_sq_down:n, mixture:m@FILE, phi2:n@FILE")
      ->required();
  dens->add_option("--x", o.xs)->check(CLI::PositiveNumber);
  dens->add_option("--grid", o.grid, "LO HI COUNT")->expected(3);

  auto* growth = app.add_subcommand("negeigs-growth", "negative squares on shifted copies");
  growth->add_option("--kernel", o.kernel)->required();
  growth->add_option("--base", o.base)->required();
  growth->add_option("--n", o.copies)->required()->check(CLI::Range(1, 200));
  growth->add_option("--tol", o.tol)->check(CLI::PositiveNumber);

  auto* moment = app.add_subcommand("moment-test", "moment determinant for Omega_n");
  moment->add_option("--n", o.n)->required()->check(CLI::Range(1, 100000));

  auto* ver = app.add_subcommand("verify", "run the acceptance suite");
  ver->add_option("--only", o.only, "tag filter, e.g. specfun or C5");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const auto spec = quad::QuadratureSpec::from_env();
    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "eval") return cmd_eval(o, spec, out);
    if (name == "inertia") return cmd_inertia(o, spec, out);
    if (name == "simplex-scan") return cmd_simplex_scan(o, spec, out);
    if (name == "polygon-spectrum") return cmd_polygon(o, spec, out);
    if (name == "fourier") return cmd_fourier(o, spec, out);
    if (name == "transition") return cmd_transition(o, spec, out);
    if (name == "density") return cmd_density(o, spec, out);
    if (name == "negeigs-growth") return cmd_growth(o, spec, out);
    if (name == "moment-test") return cmd_moment(o, out);
    if (name == "verify") return cmd_verify(o, spec, out);
  } catch (const NumericalFailure& e) {
    err << "rpd-lab: numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const DomainError& e) {
    err << "rpd-lab: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace rpd::cli
