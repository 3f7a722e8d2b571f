#pragma once

// Builtin problems, addressable by id from the CLI.

#include "vicert/certificates.hpp"
#include "vicert/problem_io.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace vicert {

struct ProblemRegistryEntry {
  std::string id;
  std::string description;
  ProblemSpec spec;
  std::optional<Vector> known_solution;
  // Verdicts the default certify run is expected to produce.
  std::map<std::string, Verdict> expected_verdicts;
};

const std::vector<ProblemRegistryEntry>& problem_registry();

// nullptr when the id is unknown.
const ProblemRegistryEntry* find_problem(const std::string& id);

// F(x) = (x1 + 2 x2, 3 x1 + x2) on R^2.
ProblemSpec example_vi_spec();

// f1 = x1^2/2 + 2 x1 x2, f2 = 3 x1 x2 + x2^2/2 on R x R.
QuadraticGame example_game();

}  // namespace vicert
