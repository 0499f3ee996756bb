#pragma once

#include <string>
#include <vector>

#include "rho/measures.hpp"
#include "rho/model.hpp"
#include "rho/report.hpp"

namespace rho {

// Named verification suites backing the CLI subcommands. Each returns the
// records for the given parameters; tolerances are fixed here.
std::vector<CheckRecord> suite_spectrum(const ModelParams& params, int nmax);
std::vector<CheckRecord> suite_gram(const ModelParams& params, const MeasureSpec& measure,
                                    int nmax);
std::vector<CheckRecord> suite_ode_residual(const ModelParams& params, int nmax);
std::vector<CheckRecord> suite_kg_residual(const ModelParams& params, int nmax);
std::vector<CheckRecord> suite_ladder(const ModelParams& params, int nmax);
std::vector<CheckRecord> suite_hermiticity(const ModelParams& params, int nmax,
                                           const MeasureSpec& measure);
std::vector<CheckRecord> suite_measure_solve(const ModelParams& params, int nmax);
std::vector<CheckRecord> suite_pt_compare(const ModelParams& params, int nmax);
std::vector<CheckRecord> suite_limit_scan(const ModelParams& params, int nmax, int doublings);
std::vector<CheckRecord> suite_commutators(const ModelParams& params, int nmax);
std::vector<CheckRecord> suite_oracle_agreement(unsigned seed, int count, int threads);

// Acceptance criteria with the parameter sweeps and tolerances pinned.
struct CriterionResult {
  int index = 0;
  std::string title;
  bool pass = false;
  std::vector<CheckRecord> records;
};

std::vector<CriterionResult> run_acceptance(unsigned seed, int threads);

}  // namespace rho
