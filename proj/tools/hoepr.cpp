// hoepr: higher-order quadrature bounds and entanglement criteria.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 unphysical input.

#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hoepr/criteria.hpp"
#include "hoepr/parallel.hpp"
#include "hoepr/report.hpp"
#include "hoepr/spectral.hpp"
#include "hoepr/states.hpp"
#include "hoepr/wavefunc.hpp"

namespace {

using namespace hoepr;

enum Exit { kOk = 0, kUsage = 1, kNumerical = 2, kUnphysical = 3 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

void emit(const Json& doc) { std::cout << doc.dump(2) << '\n'; }

void require_even_order(int order) {
  if (order < 2 || order % 2 != 0) throw UsageError("--order must be even and >= 2");
}

SolverKind parse_solver(const std::string& s) {
  if (s == "dense") return SolverKind::dense;
  if (s == "banded") return SolverKind::banded_iterative;
  throw UsageError("--solver must be banded or dense");
}

FitObjective parse_objective(const std::string& s) {
  if (s == "sup_norm") return FitObjective::sup_norm;
  if (s == "least_squares") return FitObjective::least_squares;
  throw UsageError("--objective must be sup_norm or least_squares");
}

Grid make_grid(double min, double max, double step) {
  if (!(step > 0.0) || !(max > min)) throw UsageError("grid needs max > min and step > 0");
  return {min, max, step};
}

struct LambdaArgs {
  int order = 4;
  std::size_t trunc = 0;
  double tol = 1e-10;
  std::string solver = "banded";
};

int run_lambda(const LambdaArgs& a) {
  require_even_order(a.order);
  SolverOptions opts;
  opts.tol = a.tol;
  opts.kind = parse_solver(a.solver);
  const std::size_t n = a.trunc ? a.trunc : default_truncation(a.order);
  try {
    emit(lambda_json(a.order, solve_order(a.order, n, opts), opts, true));
    return kOk;
  } catch (const SolverError& e) {
    auto best = e.best();
    best.truncation = n;
    emit(lambda_json(a.order, best, opts, false));
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
}

struct BipartiteArgs {
  int order = 4;
  std::string sign = "plus";
  std::size_t trunc = 40;
  double tol = 1e-4;
  std::size_t single_trunc = 400;
};

int run_bipartite(const BipartiteArgs& a) {
  require_even_order(a.order);
  const Sign sign = parse_sign(a.sign);
  const auto opts = bipartite_solver_options();
  const auto r = solve_bipartite(a.order, sign_value(sign), a.trunc, opts);
  ScalingCheck check;
  check.bipartite = r.eigenvalue;
  check.single = solve_order(a.order, a.single_trunc).eigenvalue;
  const double scaled = std::ldexp(check.single, a.order / 2);
  check.relative_error = std::abs(check.bipartite - scaled) / check.bipartite;
  check.holds = check.relative_error <= a.tol;
  emit(bipartite_json(a.order, sign, r, check, opts));
  return kOk;
}

struct WavefunctionArgs {
  int order = 4;
  std::size_t trunc = 400;
  double min = -6.0, max = 6.0, step = 0.01;
  int derivs = -1;
};

int run_wavefunction(const WavefunctionArgs& a) {
  require_even_order(a.order);
  const Grid grid = make_grid(a.min, a.max, a.step);
  const auto r = solve_order(a.order, a.trunc);
  const auto coeffs = r.fock_vector();
  const int max_deriv = a.derivs >= 0 ? a.derivs : a.order - 2;
  const auto d = derivatives_at_zero(coeffs, max_deriv);
  std::ostringstream out;
  out.precision(12);
  out << "# order=" << a.order << " N=" << a.trunc << " lambda=" << r.eigenvalue << '\n';
  out << "# grid min=" << grid.min << " max=" << grid.max << " step=" << grid.step << '\n';
  out << "# ode_residual_max=" << ode_residual_max(coeffs, a.order, r.eigenvalue) << '\n';
  for (int m = 0; m <= max_deriv; m += 2) out << "# psi^(" << m << ")(0)=" << d[static_cast<std::size_t>(m)] << '\n';
  out << "x,psi\n";
  const HermiteSeries psi(coeffs);
  for (double x : grid.points()) out << x << ',' << psi(x) << '\n';
  std::cout << out.str();
  return kOk;
}

struct FitArgs {
  int order = 4;
  std::size_t trunc = 400;
  std::string objective = "sup_norm";
};

int run_fit(const FitArgs& a) {
  require_even_order(a.order);
  const auto objective = parse_objective(a.objective);
  const auto r = solve_order(a.order, a.trunc);
  const Grid grid;
  auto doc = fit_json(a.order, objective, grid, fit_bessel_gauss(r.fock_vector(), objective, grid));
  doc["N"] = a.trunc;
  doc["lambda"] = r.eigenvalue;
  emit(doc);
  return kOk;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos)
        throw UsageError("bad number '" + item + "'");
    } catch (const std::logic_error&) {
      throw UsageError("bad number '" + item + "'");
    }
  }
  return out;
}

struct StateArgs {
  std::string family = "squeezed_vacuum";
  double lambda = 0.0;
  double xi = 0.0;
  int n = 2;
  std::string sigma;
  std::string mean;
  std::string criterion = "power";
  int order = 2;
  std::string sign = "plus";
  std::size_t trunc = 0;
  bool best_sign = false;
};

StateSpec make_state(const StateArgs& a) {
  if (a.family == "squeezed_vacuum") return SqueezedVacuum{a.lambda};
  if (a.family == "psi_n") return PsiN{a.n, a.xi};
  if (a.family == "psi2_prime") return Psi2Prime{a.xi};
  if (a.family == "vacuum") {
    BipartiteFockVector v(1, 1);
    v.at(0, 0) = 1.0;
    return ExplicitState{v};
  }
  if (a.family == "gaussian") {
    const auto sigma = parse_list(a.sigma);
    const auto mean = parse_list(a.mean);
    return GaussianState{CovarianceMatrix::from_values(sigma, mean)};
  }
  throw UsageError("unknown family '" + a.family + "'");
}

CriterionId make_criterion(const StateArgs& a) {
  const Sign sign = parse_sign(a.sign);
  if (a.criterion == "duan_higher") return DuanHigher{a.order, sign};
  if (a.criterion == "power") return PowerCriterion{a.order, sign};
  if (a.criterion == "dbS") return DbS{sign};
  throw UsageError("unknown criterion '" + a.criterion + "'");
}

int run_state(const StateArgs& a) {
  const auto state = make_state(a);
  const auto id = make_criterion(a);
  const auto report = a.best_sign ? evaluate_best_sign(state, id, a.trunc) : evaluate(state, id, a.trunc);
  Json doc = criterion_json(report);
  doc["command"] = "state";
  doc["state"] = state_json(state);
  doc["best_sign"] = a.best_sign;
  doc["threshold_chain"] = threshold_json(threshold(report.criterion))["chain"];
  require_finite(doc);
  emit(doc);
  return kOk;
}

struct ScanArgs {
  std::size_t samples = 10000;
  std::uint64_t seed = 1;
  int n = 2;
};

int run_scan(const ScanArgs& a) {
  if (a.samples == 0) throw UsageError("--samples must be positive");
  if (a.n < 1) throw UsageError("--n must be >= 1");
  emit(scan_json(theorem3_scan(a.samples, a.seed, a.n)));
  return kOk;
}

struct GridArgs {
  std::string family = "psi2";
  double xi = 0.5;
  double min = -4.0, max = 4.0, step = 0.1;
};

int run_state_grid(const GridArgs& a) {
  const Grid grid = make_grid(a.min, a.max, a.step);
  double (*f)(double, double, double) = nullptr;
  if (a.family == "psi2")
    f = psi2_wavefunction;
  else if (a.family == "psi2_prime")
    f = psi2_prime_wavefunction;
  else
    throw UsageError("--family must be psi2 or psi2_prime");
  if (!(std::abs(a.xi) < 1.0)) throw UsageError("--xi must satisfy |xi| < 1");
  const auto pts = grid.points();
  std::ostringstream out;
  out.precision(12);
  out << "# family=" << a.family << " xi=" << a.xi << '\n';
  out << "x,y,psi\n";
  for (double x : pts)
    for (double y : pts) out << x << ',' << y << ',' << f(a.xi, x, y) << '\n';
  std::cout << out.str();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Higher-order quadrature uncertainty bounds and entanglement criteria"};
  app.require_subcommand(1);
  app.fallthrough();
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker cap (also HOEPR_THREADS)");

  LambdaArgs la;
  auto* lambda = app.add_subcommand("lambda", "Minimal eigenvalue of x^2n + p^2n");
  lambda->add_option("--order", la.order, "Even order 2n")->required();
  lambda->add_option("--trunc", la.trunc, "Fock truncation (default 2000, 4000 above order 8)");
  lambda->add_option("--tol", la.tol, "Relative residual tolerance")->capture_default_str();
  lambda->add_option("--solver", la.solver, "banded or dense")->capture_default_str();

  BipartiteArgs ba;
  auto* bip = app.add_subcommand("bipartite", "Two-mode minimal eigenvalue and scaling check");
  bip->add_option("--order", ba.order)->required();
  bip->add_option("--sign", ba.sign)->capture_default_str();
  bip->add_option("--trunc", ba.trunc, "Levels per mode")->capture_default_str();
  bip->add_option("--tol", ba.tol, "Scaling identity tolerance")->capture_default_str();
  bip->add_option("--single-trunc", ba.single_trunc)->capture_default_str();

  WavefunctionArgs wa;
  auto* wf = app.add_subcommand("wavefunction", "Minimizing wave function on a grid (CSV)");
  wf->add_option("--order", wa.order)->required();
  wf->add_option("--trunc", wa.trunc)->capture_default_str();
  wf->add_option("--min", wa.min)->capture_default_str();
  wf->add_option("--max", wa.max)->capture_default_str();
  wf->add_option("--step", wa.step)->capture_default_str();
  wf->add_option("--derivs", wa.derivs, "Highest derivative at zero (default order - 2)");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Bessel-Gauss fit of the minimizing wave function");
  fit->add_option("--order", fa.order)->required();
  fit->add_option("--trunc", fa.trunc)->capture_default_str();
  fit->add_option("--objective", fa.objective, "sup_norm or least_squares")->capture_default_str();

  StateArgs sa;
  auto* st = app.add_subcommand("state", "Evaluate a criterion on a state");
  st->add_option("--family", sa.family,
                 "squeezed_vacuum, psi_n, psi2_prime, vacuum or gaussian")
      ->capture_default_str();
  st->add_option("--lambda", sa.lambda);
  st->add_option("--xi", sa.xi);
  st->add_option("--n", sa.n, "psi_n index")->capture_default_str();
  st->add_option("--sigma", sa.sigma, "16 comma-separated covariance entries, row-major");
  st->add_option("--mean", sa.mean, "4 comma-separated means");
  st->add_option("--criterion", sa.criterion, "duan_higher, power or dbS")->capture_default_str();
  st->add_option("--order", sa.order, "Order 2n for duan_higher, n for power")->capture_default_str();
  st->add_option("--sign", sa.sign)->capture_default_str();
  st->add_option("--trunc", sa.trunc, "Levels per mode (0 = automatic)")->capture_default_str();
  st->add_flag("--best-sign", sa.best_sign, "Try both signs and report the smaller value");

  ScanArgs ga;
  auto* scan = app.add_subcommand("gaussian-scan", "Random Gaussian covariance scan");
  scan->add_option("--samples", ga.samples)->capture_default_str();
  scan->add_option("--seed", ga.seed)->capture_default_str();
  scan->add_option("--n", ga.n)->capture_default_str();

  GridArgs gr;
  auto* grid = app.add_subcommand("state-grid", "Two-mode wave function on a grid (CSV)");
  grid->add_option("--family", gr.family, "psi2 or psi2_prime")->capture_default_str();
  grid->add_option("--xi", gr.xi)->capture_default_str();
  grid->add_option("--min", gr.min)->capture_default_str();
  grid->add_option("--max", gr.max)->capture_default_str();
  grid->add_option("--step", gr.step)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (threads > 0) set_thread_cap(threads);

  try {
    if (*lambda) return run_lambda(la);
    if (*bip) return run_bipartite(ba);
    if (*wf) return run_wavefunction(wa);
    if (*fit) return run_fit(fa);
    if (*st) return run_state(sa);
    if (*scan) return run_scan(ga);
    if (*grid) return run_state_grid(gr);
  } catch (const PhysicalityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnphysical;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}
