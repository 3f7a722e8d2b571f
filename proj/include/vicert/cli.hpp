#pragma once

// Command-line entry point, callable in-process for tests.
//
//   vicert list [--export ID]
//   vicert solve PROBLEM [--starts N] [--seed S] [--tol EPS] [--radius R] [--trace]
//   vicert certify PROBLEM [--conditions a,b,...] [--seed S] [--samples N]
//                          [--tol T] [--radius R] [--exponent P] [--timing]
//   vicert report FILE... [--format text|delimited]
//
// PROBLEM is a registry id or a problem file path.
//
// Exit codes: 0 success (solved / all certificates pass), 1 usage or input
// error, 2 not solved / some certificate failed, 3 some certificate
// inconclusive and none failed. The report goes to stdout, diagnostics to
// stderr.

#include <iosfwd>
#include <string>
#include <vector>

namespace vicert {

// Documented condition ids, in report order.
const std::vector<std::string>& condition_ids();

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace vicert
