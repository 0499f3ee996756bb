#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rho/report.hpp"

namespace rho_lab {

// Optional payloads next to the check records: a matrix (gram,
// hermiticity) or a tabulated grid (states).
struct Extras {
  std::optional<Eigen::MatrixXd> matrix;
  std::vector<std::string> grid_header;
  std::vector<std::vector<double>> grid_rows;
};

// Canonical machine-readable form: fixed key order, records sorted by name,
// floats with 17 significant digits. Byte-identical for identical inputs.
std::string to_json(const rho::Report& report, const Extras& extras);

// CSV carries only the matrix/grid payload.
std::string to_csv(const rho::Report& report, const Extras& extras);

std::string to_table(const rho::Report& report, const Extras& extras);

}  // namespace rho_lab
