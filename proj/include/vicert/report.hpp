#pragma once

// Run reports: structured text with one `[run]` header followed by
// `[solution]`, `[certificate]` and `[skipped]` records.
//
//   [certificate]
//   condition = upsilon
//   verdict = fail
//   margin = -5
//   witness = [1, 2]
//   evidence = [1, -2, -3, 1]
//   seed = 42
//   budget = 3
//   notes = ...
//
// Field order is fixed; numbers use shortest round-trip form.

#include "vicert/certificates.hpp"
#include "vicert/solver.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vicert {

inline constexpr const char* kVersion = "0.1.0";

struct SkippedCondition {
  std::string condition;
  std::string reason;
};

struct RunReport {
  std::string problem;
  std::string provenance;
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<SolveResult> solutions;
  std::vector<CertificateReport> certificates;
  std::vector<SkippedCondition> skipped;
  std::optional<double> wall_clock_seconds;
  bool include_trace = false;
};

void write_report(std::ostream& out, const RunReport& report);

struct ReportRow {
  std::string problem;
  std::string condition;
  std::string verdict;
  std::string margin;
};

// Rows of one report file: one per certificate and one `solve` row for the
// best solution. Malformed records are skipped and described in `warnings`.
std::vector<ReportRow> read_report_rows(std::istream& in, const std::string& source,
                                        std::vector<std::string>& warnings);

enum class TableFormat { kText, kDelimited };

// Stable-sorted by (problem, condition).
void write_table(std::ostream& out, std::vector<ReportRow> rows, TableFormat format);

}  // namespace vicert
