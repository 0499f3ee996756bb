// rho-lab: batch verification front-end for the relativistic (anti-de
// Sitter) harmonic oscillator laboratory. Subcommands run check suites and
// emit machine-readable reports; see README for the JSON schema.
//
// Exit codes: 0 all asserted checks pass, 1 a check failed, 2 invalid
// input, 3 internal numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "report_io.hpp"
#include "rho/errors.hpp"
#include "rho/exact.hpp"
#include "rho/parallel.hpp"
#include "rho/perturb.hpp"
#include "rho/suites.hpp"

namespace {

struct CliConfig {
  double N = 0.0;
  double m = 0.0, omega = 0.0, hbar = 0.0, c = 0.0;
  double lambda = 0.0, sigma = 0.0;
  int nmax = 8;
  std::string format = "table";
  std::string out_path;
  unsigned seed = 20260808;
  std::vector<std::string> tol_overrides;

  std::string measure = "alpha2";
  double measure_a = -1.0;
  double xi_min = -4.0, xi_max = 4.0;
  int points = 81;
  int doublings = 3;
};

void add_common_options(CLI::App* cmd, CliConfig& cfg) {
  cmd->add_option("--N", cfg.N, "dimensionless rest energy m c^2/(hbar omega)");
  cmd->add_option("--m", cfg.m, "mass (with --omega --hbar --c)");
  cmd->add_option("--omega", cfg.omega, "angular frequency");
  cmd->add_option("--hbar", cfg.hbar, "action quantum");
  cmd->add_option("--c", cfg.c, "speed of light");
  cmd->add_option("--lambda", cfg.lambda, "coupling lambda");
  cmd->add_option("--sigma", cfg.sigma, "rescaled coupling sigma = N lambda");
  cmd->add_option("--nmax", cfg.nmax, "level truncation")->capture_default_str();
  cmd->add_option("--format", cfg.format, "json|csv|table")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  cmd->add_option("--out", cfg.out_path, "output path (default stdout)");
  cmd->add_option("--seed", cfg.seed, "seed for randomized property suites")
      ->capture_default_str();
  cmd->add_option("--tol", cfg.tol_overrides,
                  "tolerance override name=value (repeatable, exact record name)");
}

rho::ModelParams resolve_params(const CliConfig& cfg, const CLI::App* sub) {
  const bool has_n = sub->count("--N") > 0;
  const int phys_count = (sub->count("--m") > 0) + (sub->count("--omega") > 0) +
                         (sub->count("--hbar") > 0) + (sub->count("--c") > 0);
  if (phys_count != 0 && phys_count != 4) {
    throw CLI::ValidationError("params", "the physical set needs all of --m --omega --hbar --c");
  }
  if (has_n == (phys_count == 4)) {
    throw CLI::ValidationError("params", "give exactly one of --N or the physical quadruple");
  }
  const bool has_lambda = sub->count("--lambda") > 0;
  const bool has_sigma = sub->count("--sigma") > 0;
  if (has_lambda && has_sigma) {
    throw CLI::ValidationError("params", "give at most one of --lambda / --sigma");
  }
  double n_value = cfg.N;
  if (!has_n) {
    const rho::PhysicalParams phys{cfg.m, cfg.omega, cfg.hbar, cfg.c};
    if (!phys.valid()) throw CLI::ValidationError("params", "physical parameters must be positive");
    n_value = phys.m * phys.c * phys.c / (phys.hbar * phys.omega);
  }
  if (has_sigma) return rho::ModelParams::from_n_sigma(n_value, cfg.sigma);
  return rho::ModelParams::from_n_lambda(n_value, cfg.lambda);  // lambda defaults to 0
}

rho::MeasureSpec resolve_measure(const std::string& name, double a) {
  if (name == "flat") return rho::MeasureSpec::flat();
  if (name == "alpha2") return rho::MeasureSpec::power_weight(2.0);
  if (name == "perturbed") return rho::MeasureSpec::perturbed(a);
  throw CLI::ValidationError("--measure", "expected flat|alpha2|perturbed");
}

void apply_tol_overrides(const CliConfig& cfg, rho::Report& report) {
  for (const std::string& entry : cfg.tol_overrides) {
    const size_t eq = entry.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--tol", "expected name=value");
    const std::string name = entry.substr(0, eq);
    const double value = std::stod(entry.substr(eq + 1));
    bool found = false;
    for (rho::CheckRecord& r : report.records) {
      if (r.name != name) continue;
      r.tolerance = value;
      r.evaluate();
      found = true;
    }
    if (!found) throw CLI::ValidationError("--tol", "no check named '" + name + "'");
  }
}

int emit(const CliConfig& cfg, const rho::Report& report, const rho_lab::Extras& extras) {
  std::string text;
  if (cfg.format == "json") {
    text = rho_lab::to_json(report, extras);
  } else if (cfg.format == "csv") {
    if (!extras.matrix && extras.grid_rows.empty()) {
      throw CLI::ValidationError("--format", "csv is only available for matrix/grid commands");
    }
    text = rho_lab::to_csv(report, extras);
  } else {
    text = rho_lab::to_table(report, extras);
  }
  if (cfg.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw CLI::ValidationError("--out", "cannot open '" + cfg.out_path + "'");
    out << text;
  }
  return report.overall_pass() ? 0 : 1;
}

rho_lab::Extras gram_extras(const rho::ModelParams& params, const rho::MeasureSpec& mu,
                            int nmax) {
  std::vector<rho::ExactState> st;
  for (int n = 0; n <= nmax; ++n) st.push_back(rho::exact_state(params, n));
  Eigen::MatrixXd g(nmax + 1, nmax + 1);
  for (int row = 0; row <= nmax; ++row)
    for (int col = 0; col <= nmax; ++col) g(row, col) = rho::inner_x(st[row], st[col], mu);
  rho_lab::Extras extras;
  extras.matrix = std::move(g);
  return extras;
}

rho_lab::Extras states_extras(const rho::ModelParams& params, const CliConfig& cfg) {
  rho_lab::Extras extras;
  extras.grid_header.push_back("xi");
  for (int n = 0; n <= cfg.nmax; ++n) extras.grid_header.push_back("exact_" + std::to_string(n));
  for (int n = 0; n <= cfg.nmax; ++n) extras.grid_header.push_back("pert_" + std::to_string(n));
  std::vector<rho::ExactState> exact;
  std::vector<rho::PerturbativeState> pert;
  for (int n = 0; n <= cfg.nmax; ++n) {
    exact.push_back(rho::exact_state(params, n));
    pert.push_back(rho::perturbative_state(params, n, true));
  }
  for (int i = 0; i < cfg.points; ++i) {
    const double xi = cfg.xi_min + (cfg.xi_max - cfg.xi_min) * i / std::max(1, cfg.points - 1);
    std::vector<double> row{xi};
    for (int n = 0; n <= cfg.nmax; ++n) row.push_back(rho::evaluate_x(exact[n], xi));
    for (int n = 0; n <= cfg.nmax; ++n) row.push_back(rho::gp_evaluate(pert[n].gp, xi));
    extras.grid_rows.push_back(std::move(row));
  }
  return extras;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rho-lab: verification suites for the relativistic harmonic oscillator\n"
               "(RHO_LAB_THREADS caps worker threads for randomized suites)"};
  app.require_subcommand(1);

  CliConfig cfg;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"spectrum", "exact vs perturbative energies"},
      {"states", "tabulate normalized exact and perturbative states on a grid"},
      {"gram", "Gram matrix under a chosen measure"},
      {"kg-residual", "Klein-Gordon residual certificates"},
      {"ode-residual", "relativistic Hermite ODE residuals"},
      {"ladder", "ladder coefficients and differential-action certification"},
      {"hermiticity", "Hamiltonian symmetry defect under a chosen measure"},
      {"measure-solve", "solve the perturbed-measure coefficient by imposing Hermiticity"},
      {"pt-compare", "first-order perturbation theory vs closed forms and exact states"},
      {"limit-scan", "N-doubling convergence tables"},
      {"commutators", "commutator-algebra diagnostics (never gating)"},
      {"verify-all", "run the full acceptance battery with pinned parameter sweeps"},
  };
  for (const auto& [name, desc] : commands) {
    CLI::App* sub = app.add_subcommand(name, desc);
    if (name == "gram" || name == "hermiticity") {
      sub->add_option("--measure", cfg.measure, "flat|alpha2|perturbed")->capture_default_str();
      sub->add_option("--measure-a", cfg.measure_a, "coefficient a of (1 + a xi^2/N)")
          ->capture_default_str();
    }
    if (name == "states") {
      sub->add_option("--xi-min", cfg.xi_min)->capture_default_str();
      sub->add_option("--xi-max", cfg.xi_max)->capture_default_str();
      sub->add_option("--points", cfg.points)->capture_default_str();
    }
    if (name == "limit-scan") {
      sub->add_option("--doublings", cfg.doublings)->capture_default_str();
    }
    add_common_options(sub, cfg);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    const std::string command = sub->get_name();
    const rho::ModelParams params = resolve_params(cfg, sub);

    rho::Report report;
    report.command = command;
    report.params = params;
    report.seed = cfg.seed;
    rho_lab::Extras extras;

    if (command == "spectrum") {
      report.records = rho::suite_spectrum(params, cfg.nmax);
    } else if (command == "states") {
      extras = states_extras(params, cfg);
    } else if (command == "gram") {
      const rho::MeasureSpec mu = resolve_measure(cfg.measure, cfg.measure_a);
      report.records = rho::suite_gram(params, mu, cfg.nmax);
      extras = gram_extras(params, mu, cfg.nmax);
    } else if (command == "kg-residual") {
      report.records = rho::suite_kg_residual(params, cfg.nmax);
    } else if (command == "ode-residual") {
      report.records = rho::suite_ode_residual(params, cfg.nmax);
    } else if (command == "ladder") {
      report.records = rho::suite_ladder(params, cfg.nmax);
    } else if (command == "hermiticity") {
      // Default measure is flat here; an explicit choice wins.
      const std::string name = sub->count("--measure") ? cfg.measure : "flat";
      const rho::MeasureSpec mu = resolve_measure(name, cfg.measure_a);
      report.records = rho::suite_hermiticity(params, cfg.nmax, mu);
      extras.matrix =
          rho::hermiticity_defect(rho::perturbed_hamiltonian(params), cfg.nmax, mu).defect;
    } else if (command == "measure-solve") {
      if (cfg.nmax < 6) throw CLI::ValidationError("--nmax", "measure-solve needs nmax >= 6");
      report.records = rho::suite_measure_solve(params, cfg.nmax);
    } else if (command == "pt-compare") {
      if (cfg.nmax < 4) throw CLI::ValidationError("--nmax", "pt-compare needs nmax >= 4");
      report.records = rho::suite_pt_compare(params, cfg.nmax);
    } else if (command == "limit-scan") {
      report.records = rho::suite_limit_scan(params, cfg.nmax, cfg.doublings);
    } else if (command == "commutators") {
      if (cfg.nmax < 8) throw CLI::ValidationError("--nmax", "commutators needs nmax >= 8");
      report.records = rho::suite_commutators(params, cfg.nmax);
    } else if (command == "verify-all") {
      const std::vector<rho::CriterionResult> criteria =
          rho::run_acceptance(cfg.seed, rho::thread_cap());
      for (const rho::CriterionResult& c : criteria) {
        for (const rho::CheckRecord& r : c.records) report.records.push_back(r);
      }
    }

    apply_tol_overrides(cfg, report);
    return emit(cfg, report, extras);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "rho-lab: " << e.what() << "\n";
    return 2;
  } catch (const rho::ComplexSpectrum& e) {
    std::cerr << "rho-lab: invalid parameters: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "rho-lab: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rho-lab: numerical failure: " << e.what() << "\n";
    return 3;
  }
}
