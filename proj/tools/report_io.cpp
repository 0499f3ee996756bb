#include "report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace rho_lab {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

const char* provenance_name(rho::Provenance p) {
  switch (p) {
    case rho::Provenance::Paper: return "paper";
    case rho::Provenance::Derived: return "derived";
    case rho::Provenance::Trivial: return "trivial";
  }
  return "?";
}

std::vector<rho::CheckRecord> sorted_records(const rho::Report& report) {
  std::vector<rho::CheckRecord> recs = report.records;
  std::sort(recs.begin(), recs.end(),
            [](const rho::CheckRecord& a, const rho::CheckRecord& b) { return a.name < b.name; });
  return recs;
}

}  // namespace

std::string to_json(const rho::Report& report, const Extras& extras) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"schema_version\": \"" << json_escape(report.schema_version) << "\",\n";
  out << "  \"command\": \"" << json_escape(report.command) << "\",\n";
  out << "  \"seed\": " << report.seed << ",\n";
  out << "  \"params\": {\"N\": " << num(report.params.N)
      << ", \"lambda\": " << num(report.params.lambda)
      << ", \"sigma\": " << num(report.params.sigma)
      << ", \"Nlambda\": " << num(report.params.Nlambda)
      << ", \"chi\": " << num(report.params.chi)
      << ", \"curvature\": " << num(report.params.curvature) << "},\n";
  out << "  \"checks\": [\n";
  const std::vector<rho::CheckRecord> recs = sorted_records(report);
  for (size_t i = 0; i < recs.size(); ++i) {
    const rho::CheckRecord& r = recs[i];
    out << "    {\"name\": \"" << json_escape(r.name) << "\", \"computed\": " << num(r.computed)
        << ", \"reference\": " << num(r.reference) << ", \"tolerance\": " << num(r.tolerance)
        << ", \"mode\": \"" << (r.mode == rho::CheckRecord::Mode::Within ? "within" : "at_least")
        << "\", \"provenance\": \"" << provenance_name(r.provenance) << "\", \"diagnostic\": "
        << (r.diagnostic ? "true" : "false") << ", \"pass\": " << (r.pass ? "true" : "false")
        << ", \"note\": \"" << json_escape(r.note) << "\"}" << (i + 1 < recs.size() ? "," : "")
        << "\n";
  }
  out << "  ],\n";
  if (extras.matrix) {
    out << "  \"matrix\": [\n";
    for (Eigen::Index row = 0; row < extras.matrix->rows(); ++row) {
      out << "    [";
      for (Eigen::Index col = 0; col < extras.matrix->cols(); ++col) {
        out << num((*extras.matrix)(row, col)) << (col + 1 < extras.matrix->cols() ? ", " : "");
      }
      out << "]" << (row + 1 < extras.matrix->rows() ? "," : "") << "\n";
    }
    out << "  ],\n";
  }
  if (!extras.grid_rows.empty()) {
    out << "  \"grid_columns\": [";
    for (size_t i = 0; i < extras.grid_header.size(); ++i) {
      out << "\"" << json_escape(extras.grid_header[i]) << "\""
          << (i + 1 < extras.grid_header.size() ? ", " : "");
    }
    out << "],\n";
    out << "  \"grid\": [\n";
    for (size_t i = 0; i < extras.grid_rows.size(); ++i) {
      out << "    [";
      for (size_t j = 0; j < extras.grid_rows[i].size(); ++j) {
        out << num(extras.grid_rows[i][j]) << (j + 1 < extras.grid_rows[i].size() ? ", " : "");
      }
      out << "]" << (i + 1 < extras.grid_rows.size() ? "," : "") << "\n";
    }
    out << "  ],\n";
  }
  out << "  \"overall_pass\": " << (report.overall_pass() ? "true" : "false") << "\n";
  out << "}\n";
  return out.str();
}

std::string to_csv(const rho::Report&, const Extras& extras) {
  std::ostringstream out;
  if (extras.matrix) {
    for (Eigen::Index row = 0; row < extras.matrix->rows(); ++row) {
      for (Eigen::Index col = 0; col < extras.matrix->cols(); ++col) {
        out << num((*extras.matrix)(row, col)) << (col + 1 < extras.matrix->cols() ? "," : "");
      }
      out << "\n";
    }
    return out.str();
  }
  for (size_t i = 0; i < extras.grid_header.size(); ++i) {
    out << extras.grid_header[i] << (i + 1 < extras.grid_header.size() ? "," : "");
  }
  out << "\n";
  for (const std::vector<double>& row : extras.grid_rows) {
    for (size_t j = 0; j < row.size(); ++j) out << num(row[j]) << (j + 1 < row.size() ? "," : "");
    out << "\n";
  }
  return out.str();
}

std::string to_table(const rho::Report& report, const Extras& extras) {
  std::ostringstream out;
  out << "command: " << report.command << "   N=" << num(report.params.N)
      << " lambda=" << num(report.params.lambda) << " sigma=" << num(report.params.sigma)
      << " N_lambda=" << num(report.params.Nlambda) << "\n\n";
  char line[512];
  std::snprintf(line, sizeof(line), "%-52s %-24s %-24s %-10s %-9s %s\n", "check", "computed",
                "reference", "tol", "prov", "status");
  out << line;
  for (const rho::CheckRecord& r : sorted_records(report)) {
    const char* status = r.diagnostic ? "reported" : (r.pass ? "PASS" : "FAIL");
    std::snprintf(line, sizeof(line), "%-52s %-24.12g %-24.12g %-10.3g %-9s %s\n", r.name.c_str(),
                  r.computed, r.reference, r.tolerance, provenance_name(r.provenance), status);
    out << line;
  }
  if (extras.matrix) {
    out << "\nmatrix (" << extras.matrix->rows() << "x" << extras.matrix->cols() << "):\n";
    for (Eigen::Index row = 0; row < extras.matrix->rows(); ++row) {
      for (Eigen::Index col = 0; col < extras.matrix->cols(); ++col) {
        std::snprintf(line, sizeof(line), " % .3e", (*extras.matrix)(row, col));
        out << line;
      }
      out << "\n";
    }
  }
  if (!extras.grid_rows.empty()) {
    out << "\ngrid columns:";
    for (const std::string& h : extras.grid_header) out << " " << h;
    out << "  (" << extras.grid_rows.size() << " rows)\n";
  }
  out << "\nOVERALL: " << (report.overall_pass() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace rho_lab
