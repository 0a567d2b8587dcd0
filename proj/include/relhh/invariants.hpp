#pragma once

// The one-shot invariant suite behind `relhh check`.

#include <string>
#include <vector>

#include "relhh/io.hpp"

namespace relhh {

struct CheckResult {
  std::string input;
  std::string name;
  bool pass = false;
  std::string witness;  // empty on success
};

struct CheckOptions {
  /// Test-only: perturbs one entry of the resolution differential d_2.
  bool corrupt_differential = false;
};

std::vector<CheckResult> run_checks(const InputDocument& doc, const CheckOptions& options = {});

}  // namespace relhh
