#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "pointfrac/closure.hpp"
#include "pointfrac/highrank.hpp"
#include "pointfrac/io.hpp"
#include "pointfrac/kernels.hpp"
#include "pointfrac/operators.hpp"
#include "pointfrac/quadrature.hpp"
#include "pointfrac/spectral.hpp"
#include "pointfrac/verify.hpp"

namespace {

using namespace pointfrac;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitBadInput = 2;
constexpr int kExitPole = 3;

GridSpec grid_spec_from_env() {
  GridSpec spec;
  if (const char* env = std::getenv("POINTFRAC_GRID")) {
    double rmin, rmax;
    int count;
    if (std::sscanf(env, "%lf,%lf,%d", &rmin, &rmax, &count) == 3) {
      spec.r_min = rmin;
      spec.r_max = rmax;
      spec.count = count;
    } else {
      throw BadSpec("POINTFRAC_GRID must be 'r_min,r_max,count'");
    }
  }
  return spec;
}

json meta(const std::string& command, json params) {
  return json{{"version", io::kVersion}, {"command", command}, {"params", std::move(params)}};
}

void emit(const json& doc, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw BadSpec("cannot open output file: " + out_path);
    out << doc.dump(2) << '\n';
  }
}

struct ConstantsArgs {
  int d = 3;
  double s = 2.0;
  double lambda = 1.0;
  std::string format = "json";
  std::string out;
};

int cmd_constants(const ConstantsArgs& a) {
  ProblemParams p(a.d, a.s, a.lambda);
  if (a.d == 1) p.require_not_s_equal_one();
  json rows = json::array();
  auto add_row = [&](const std::string& name, double value, double oracle) {
    const double dev = std::abs(value - oracle) /
                       std::max({std::abs(value), std::abs(oracle), 1e-300});
    rows.push_back(
        {{"name", name}, {"value", value}, {"oracle", oracle}, {"deviation", dev}});
  };

  add_row("deficiency_index", static_cast<double>(deficiency_index(a.d, a.s)),
          static_cast<double>(multi_indices_up_to(a.d, p.regime.n - 1).size()));

  if (a.s < a.d) {
    const double lam = singularity_constant(a.d, a.s);
    GreenKernel k(KernelKind::Homogeneous, p);
    // deep in the short-distance regime the lambda-dependent correction is
    // negligible relative to the leading power
    const double x = 1e-9;
    add_row("singularity_constant", lam, std::pow(x, a.d - a.s) * kernel_position(k, x));
  }
  if (a.s > a.d) {
    GreenKernel k(KernelKind::Homogeneous, p);
    auto fn = [&](double r) {
      return std::pow(r, a.d - 1.0) / (std::pow(r, a.s) + a.lambda);
    };
    const double oracle = surface_measure(a.d) * std::pow(2.0 * kPi, -a.d) *
                          (quad::adaptive(fn, 0.0, 1e6, 1e-12) +
                           quad::tail_power_shifted(a.d - 1.0, a.s, 1.0, a.lambda, 1e6));
    add_row("kernel_at_zero", kernel_at_zero(k), oracle);
  }
  if (a.d == 1 && a.s > 0.5 && std::abs(a.s - 1.0) > 1e-9) {
    const double th = theta(a.s, a.lambda);
    GreenKernel k(KernelKind::Homogeneous, p);
    double oracle = th;
    if (a.s > 1.0) oracle = kernel_at_zero(k);
    add_row("theta", th, oracle);
    if (a.s < 1.5) {
      const OmegaTheta ot = omega_theta_flag(a.s);
      add_row("omega", ot.omega,
              a.s * a.s * std::sin(kPi / a.s) / (a.s - 1.0));
      add_row("theta_flag", ot.theta_flag, a.s < 1.0 ? 0.0 : 1.0);
    }
  }
  if (a.s > 0.5 * a.d) {
    GreenKernel k(KernelKind::Homogeneous, p);
    double closed = kernel_l2_norm_sq(k);
    double oracle = closed;
    if (a.d == 1)
      oracle = (a.s - 1.0) /
               (std::pow(a.lambda, 2.0 - 1.0 / a.s) * a.s * a.s * std::sin(kPi / a.s));
    add_row("kernel_l2_norm_sq", closed, oracle);
  }

  if (a.format == "csv") {
    std::ostringstream csv;
    csv << "name,value,oracle,deviation\n";
    for (const auto& row : rows)
      csv << row["name"].get<std::string>() << ',' << io::fmt12e(row["value"].get<double>())
          << ',' << io::fmt12e(row["oracle"].get<double>()) << ','
          << io::fmt12e(row["deviation"].get<double>()) << '\n';
    if (a.out.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(a.out, std::ios::binary);
      out << csv.str();
    }
    return kExitOk;
  }
  json doc{{"meta", meta("constants", {{"d", a.d}, {"s", a.s}, {"lambda", a.lambda}})},
           {"data", rows}};
  emit(doc, a.out);
  return kExitOk;
}

struct ResolventArgs {
  std::string family = "homogeneous-k";
  int d = 3;
  double s = 1.8;
  double lambda = 1.0;
  std::string param;  // "alpha" or "tau"
  double alpha = 0.0;
  double tau = 0.0;
  bool infinite = false;
  std::string input;
  std::string output = "resolvent_out";
  bool verify_round_trip = false;
};

int cmd_resolvent(const ResolventArgs& a) {
  Family family;
  if (a.family == "classic-h")
    family = Family::ClassicH;
  else if (a.family == "homogeneous-k")
    family = Family::HomogeneousK;
  else if (a.family == "inhomogeneous-d")
    family = Family::InhomogeneousD;
  else
    throw BadSpec("unknown family: " + a.family);

  ProblemParams p(a.d, a.s, a.lambda);
  ExtensionParam ext = TauAt{a.lambda, ExtendedReal::finite(a.tau)};
  if (a.param == "alpha")
    ext = AlphaParam{a.infinite ? ExtendedReal::infinity() : ExtendedReal::finite(a.alpha)};
  else if (a.param == "tau")
    ext = TauAt{a.lambda, a.infinite ? ExtendedReal::infinity() : ExtendedReal::finite(a.tau)};
  else
    throw BadSpec("--param must be alpha or tau");

  RadialFunction h = io::read_radial_function(a.input);
  if (h.grid().dimension() != a.d) throw BadSpec("input profile dimension mismatch");

  DomainElement e = apply_resolvent(h, p, ext, family);
  const ExtendedReal coef = boundary_coefficient(p, ext, family);
  std::cout << "krein_scalar " << io::fmt12e(coef.value) << '\n';

  io::write_radial_function(e.total_profile(), a.output + ".csv");
  io::write_radial_function(e.regular(), a.output + "_regular.csv");
  io::write_domain_element(e, a.output + ".json", a.output + "_regular.csv");

  if (a.verify_round_trip) {
    RadialFunction back = apply_operator(e);
    const double resid = (back.values() - h.values()).abs().maxCoeff() /
                         h.values().abs().maxCoeff();
    std::cout << "round_trip_residual " << io::fmt12e(resid) << '\n';
    if (resid > 1e-8) return kExitVerifyFail;
  }
  return kExitOk;
}

struct Figure1Args {
  double lambda = 1.0;
  double s = 1.8;
  double tau_min = -3.0;
  double tau_max = -0.05;
  int points = 50;
  std::string out;
  std::string format = "csv";
};

int cmd_figure1(const Figure1Args& a) {
  if (!(a.tau_max < 0.0)) throw BadSpec("tau_max must be negative");
  if (!(a.tau_min <= a.tau_max)) throw BadSpec("tau_min must not exceed tau_max");
  if (a.points < 1) throw BadSpec("points must be >= 1");
  std::vector<double> taus;
  for (int i = 0; i < a.points; ++i) {
    const double t = (a.points == 1)
                         ? a.tau_min
                         : a.tau_min + (a.tau_max - a.tau_min) * i / (a.points - 1);
    taus.push_back(t);
  }
  const auto rows = figure1_sweep(a.lambda, a.s, taus);
  std::size_t ok = 0;
  for (const auto& r : rows)
    if (r.E_tau) ++ok;

  if (a.format == "json") {
    json data = json::array();
    for (const auto& r : rows) {
      json row{{"tau", r.tau}, {"reference_tau", r.tau}};
      if (r.E_tau)
        row["E_tau"] = *r.E_tau;
      else
        row["error"] = r.error;
      data.push_back(row);
    }
    json doc{{"meta", meta("figure1", {{"lambda", a.lambda},
                                       {"s", a.s},
                                       {"grid", {{"r_max", 1e6}, {"count", 4096}}}})},
             {"data", data}};
    emit(doc, a.out);
  } else if (a.out.empty()) {
    std::cout << io::sweep_csv_text(rows);
  } else {
    io::write_sweep_csv(rows, a.out);
  }
  return (ok * 10 >= rows.size() * 9) ? kExitOk : kExitVerifyFail;
}

struct ProfileArgs {
  std::string kind = "gaussian";  // gaussian | kernel | derived
  int d = 3;
  double s = 2.0;
  double lambda = 1.0;
  double sigma = 1.0;
  std::string out = "profile.csv";
};

int cmd_profile(const ProfileArgs& a) {
  GridPtr grid = make_grid(grid_spec_from_env(), a.d);
  if (a.kind == "gaussian") {
    const double s2 = a.sigma * a.sigma;
    RadialFunction f = RadialFunction::from_function(
        grid, [s2](double r) { return Complex(std::exp(-0.5 * r * r / s2), 0.0); });
    io::write_radial_function(f, a.out);
  } else if (a.kind == "kernel" || a.kind == "derived") {
    const KernelKind kk = (a.kind == "kernel") ? KernelKind::Homogeneous
                                               : KernelKind::DerivedH;
    GreenKernel k(kk, ProblemParams(a.d, a.s, a.lambda));
    io::write_radial_function(kernel_profile(k, grid), a.out);
  } else {
    throw BadSpec("unknown profile kind: " + a.kind);
  }
  return kExitOk;
}

struct ClosureArgs {
  double s = 1.0;
  int d = 3;
  std::vector<int> scales{4, 8, 16, 32};
  bool moment_free = false;
  std::string out;
};

int cmd_closure(const ClosureArgs& a) {
  GridPtr grid = make_grid(grid_spec_from_env(), a.d);
  RadialFunction f =
      a.moment_free
          ? verify::random_moment_free_profile(grid, 1)
          : RadialFunction::from_function(
                grid, [](double r) { return Complex(std::exp(-0.5 * r * r), 0.0); });
  const DecayFit fit = decay_rate_fit(f, a.s, a.d, a.scales);

  std::ostringstream csv;
  csv << "n,distance_sq\n";
  for (size_t i = 0; i < a.scales.size(); ++i)
    csv << a.scales[i] << ',' << io::fmt12e(fit.distances_sq[i]) << '\n';
  const RegimeInterval reg = classify_regime(a.d, a.s);
  const double bound = a.moment_free ? 2.0 * a.s - 5.0 : 2.0 * a.s - 3.0;
  json metadata{{"meta", meta("closure", {{"s", a.s}, {"d", a.d}})},
                {"regime", a.moment_free ? "moment_free" : "generic"},
                {"regime_window", reg.n},
                {"slope", fit.slope},
                {"bound", bound},
                {"no_signal", fit.no_signal}};
  if (a.out.empty()) {
    std::cout << csv.str();
    std::cout << metadata.dump(2) << '\n';
  } else {
    std::ofstream outf(a.out, std::ios::binary);
    outf << csv.str();
    std::ofstream meta_out(a.out + ".json", std::ios::binary);
    meta_out << metadata.dump(2) << '\n';
  }
  return kExitOk;
}

struct GramArgs {
  int d = 3;
  double s = 3.0;
  double lambda = 1.0;
  std::string flavor = "homogeneous";
  std::string out;
};

int cmd_gram(const GramArgs& a) {
  ProblemParams p(a.d, a.s, a.lambda);
  const BasisFlavor flavor = (a.flavor == "inhomogeneous") ? BasisFlavor::Inhomogeneous
                                                           : BasisFlavor::Homogeneous;
  const auto basis = kernel_basis(p, p.regime.n, flavor);
  const Eigen::MatrixXcd G = gram_matrix(basis);
  json labels = json::array();
  for (const auto& b : basis) labels.push_back(b.gamma);
  json rows = json::array();
  for (Eigen::Index i = 0; i < G.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < G.cols(); ++j)
      row.push_back({{"re", G(i, j).real()}, {"im", G(i, j).imag()}});
    rows.push_back(row);
  }
  json doc{{"meta", meta("gram", {{"d", a.d}, {"s", a.s}, {"lambda", a.lambda},
                                  {"flavor", a.flavor}})},
           {"basis", labels},
           {"data", rows}};
  emit(doc, a.out);
  return kExitOk;
}

struct VerifyArgs {
  std::string suite = "all";
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  const auto results = verify::run_suite(a.suite);
  bool all_pass = true;
  json data = json::array();
  for (const auto& r : results) {
    all_pass = all_pass && r.pass;
    data.push_back({{"suite", r.suite},
                    {"check", r.name},
                    {"pass", r.pass},
                    {"residual", r.residual},
                    {"tolerance", r.tolerance}});
  }
  json doc{{"meta", meta("verify", {{"suite", a.suite}})},
           {"data", data},
           {"pass", all_pass}};
  emit(doc, a.out);
  return all_pass ? kExitOk : kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"singular point perturbations of fractional Laplacians"};
  app.require_subcommand(1);

  ConstantsArgs ca;
  CLI::App* constants = app.add_subcommand("constants", "closed-form constants with oracles");
  constants->add_option("--d", ca.d, "dimension");
  constants->add_option("--s", ca.s, "power");
  constants->add_option("--lambda", ca.lambda, "shift");
  constants->add_option("--format", ca.format, "csv or json");
  constants->add_option("--out", ca.out, "output path (default stdout)");

  ResolventArgs ra;
  CLI::App* resolvent = app.add_subcommand("resolvent", "apply a Krein resolvent to a profile");
  resolvent->add_option("--family", ra.family, "classic-h | homogeneous-k | inhomogeneous-d");
  resolvent->add_option("--d", ra.d, "dimension");
  resolvent->add_option("--s", ra.s, "power");
  resolvent->add_option("--lambda", ra.lambda, "shift");
  resolvent->add_option("--param", ra.param, "alpha or tau")->required();
  resolvent->add_option("--alpha", ra.alpha, "extension parameter alpha");
  resolvent->add_option("--tau", ra.tau, "extension parameter tau");
  resolvent->add_flag("--infinite", ra.infinite, "use the unperturbed extension");
  resolvent->add_option("--input", ra.input, "input profile CSV")->required();
  resolvent->add_option("--output", ra.output, "output prefix");
  resolvent->add_flag("--verify", ra.verify_round_trip, "apply the operator back");

  Figure1Args fa;
  CLI::App* figure1 = app.add_subcommand("figure1", "negative eigenvalue sweep of the "
                                                    "inhomogeneous family");
  figure1->add_option("--lambda", fa.lambda, "shift");
  figure1->add_option("--s", fa.s, "power");
  figure1->add_option("--tau-min", fa.tau_min, "sweep start");
  figure1->add_option("--tau-max", fa.tau_max, "sweep end (negative)");
  figure1->add_option("--points", fa.points, "row count");
  figure1->add_option("--out", fa.out, "output path (default stdout)");
  figure1->add_option("--format", fa.format, "csv or json");

  ProfileArgs pa;
  CLI::App* profile = app.add_subcommand("profile", "emit a sample momentum profile");
  profile->add_option("--kind", pa.kind, "gaussian | kernel | derived");
  profile->add_option("--d", pa.d, "dimension");
  profile->add_option("--s", pa.s, "power (kernel kinds)");
  profile->add_option("--lambda", pa.lambda, "shift (kernel kinds)");
  profile->add_option("--sigma", pa.sigma, "gaussian width");
  profile->add_option("--out", pa.out, "output CSV path");

  ClosureArgs cla;
  CLI::App* closure = app.add_subcommand("closure", "cut-off convergence experiment");
  closure->add_option("--s", cla.s, "Sobolev power");
  closure->add_option("--d", cla.d, "dimension");
  closure->add_option("--scales", cla.scales, "cut-off scale indices");
  closure->add_flag("--moment-free", cla.moment_free, "use a moment-free profile");
  closure->add_option("--out", cla.out, "CSV path (JSON metadata beside it)");

  GramArgs ga;
  CLI::App* gram = app.add_subcommand("gram", "kernel-basis gram matrix");
  gram->add_option("--d", ga.d, "dimension");
  gram->add_option("--s", ga.s, "power");
  gram->add_option("--lambda", ga.lambda, "shift");
  gram->add_option("--flavor", ga.flavor, "homogeneous | inhomogeneous");
  gram->add_option("--out", ga.out, "output path (default stdout)");

  VerifyArgs va;
  CLI::App* verify_cmd = app.add_subcommand("verify", "run invariant suites");
  verify_cmd->add_option("suite", va.suite, "suite name or 'all'");
  verify_cmd->add_option("--out", va.out, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    // alpha/tau exclusivity: a value for the wrong parametrisation is an error
    if (resolvent->parsed()) {
      const bool gave_alpha = resolvent->count("--alpha") > 0;
      const bool gave_tau = resolvent->count("--tau") > 0;
      if (ra.param == "alpha" && gave_tau)
        throw BadSpec("--tau given with --param alpha");
      if (ra.param == "tau" && gave_alpha)
        throw BadSpec("--alpha given with --param tau");
      return cmd_resolvent(ra);
    }
    if (constants->parsed()) return cmd_constants(ca);
    if (figure1->parsed()) return cmd_figure1(fa);
    if (profile->parsed()) return cmd_profile(pa);
    if (closure->parsed()) return cmd_closure(cla);
    if (gram->parsed()) return cmd_gram(ga);
    if (verify_cmd->parsed()) return cmd_verify(va);
  } catch (const PoleAtLambda& e) {
    std::cerr << "pole: lambda_star = " << io::fmt12e(e.lambda_star) << '\n';
    return kExitPole;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}
