#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rho/model.hpp"

namespace rho {

enum class Provenance { Paper, Derived, Trivial };

// One verification record. Asserted records pass per `mode`; diagnostic
// records report a value and never gate a run.
struct CheckRecord {
  enum class Mode { Within, AtLeast };

  std::string name;
  double computed = 0.0;
  double reference = 0.0;
  double tolerance = 0.0;
  Mode mode = Mode::Within;
  Provenance provenance = Provenance::Derived;
  bool diagnostic = false;
  bool pass = true;
  std::string note;

  void evaluate() {
    if (diagnostic) {
      pass = true;
      return;
    }
    pass = (mode == Mode::Within) ? std::abs(computed - reference) <= tolerance
                                  : computed >= reference;
  }
};

inline CheckRecord check_within(std::string name, double computed, double reference,
                                double tolerance, Provenance prov, std::string note = "") {
  CheckRecord r;
  r.name = std::move(name);
  r.computed = computed;
  r.reference = reference;
  r.tolerance = tolerance;
  r.mode = CheckRecord::Mode::Within;
  r.provenance = prov;
  r.note = std::move(note);
  r.evaluate();
  return r;
}

inline CheckRecord check_at_least(std::string name, double computed, double reference,
                                  Provenance prov, std::string note = "") {
  CheckRecord r;
  r.name = std::move(name);
  r.computed = computed;
  r.reference = reference;
  r.mode = CheckRecord::Mode::AtLeast;
  r.provenance = prov;
  r.note = std::move(note);
  r.evaluate();
  return r;
}

inline CheckRecord diagnostic(std::string name, double value, Provenance prov,
                              std::string note = "") {
  CheckRecord r;
  r.name = std::move(name);
  r.computed = value;
  r.provenance = prov;
  r.diagnostic = true;
  r.note = std::move(note);
  return r;
}

struct Report {
  std::string schema_version = "1";
  std::string command;
  ModelParams params;
  unsigned seed = 0;
  std::vector<CheckRecord> records;

  bool overall_pass() const {
    for (const CheckRecord& r : records)
      if (!r.diagnostic && !r.pass) return false;
    return true;
  }
};

}  // namespace rho
