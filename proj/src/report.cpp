#include "vicert/report.hpp"

#include "vicert/numfmt.hpp"
#include "vicert/problem_io.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>

namespace vicert {

void write_report(std::ostream& out, const RunReport& report) {
  out << "[run]\n";
  out << "version = " << kVersion << "\n";
  out << "command = " << report.command << "\n";
  out << "problem = " << report.problem << "\n";
  out << "provenance = " << report.provenance << "\n";
  for (const auto& [key, value] : report.config) out << "config." << key << " = " << value << "\n";
  if (report.wall_clock_seconds) {
    out << "wall_clock_s = " << format_number(*report.wall_clock_seconds) << "\n";
  }

  for (const SolveResult& s : report.solutions) {
    out << "\n[solution]\n";
    out << "status = " << to_string(s.status) << "\n";
    out << "classification = " << to_string(s.classification) << "\n";
    out << "x = " << format_vector(s.x) << "\n";
    out << "v = " << format_vector(s.v) << "\n";
    out << "residual = " << format_number(s.residual) << "\n";
    out << "iterations = " << s.iterations << "\n";
    if (report.include_trace) {
      out << "trace = " << format_list(s.trace) << "\n";
      out << "steps = ";
      for (size_t k = 0; k < s.steps.size(); ++k) out << (k ? ", " : "") << to_string(s.steps[k]);
      out << "\n";
    }
    if (!s.message.empty()) out << "message = " << s.message << "\n";
  }

  for (const CertificateReport& c : report.certificates) {
    out << "\n[certificate]\n";
    out << "condition = " << c.condition << "\n";
    out << "verdict = " << to_string(c.verdict) << "\n";
    out << "margin = " << format_number(c.margin) << "\n";
    out << "witness = " << format_list(c.witness) << "\n";
    out << "evidence = " << format_list(c.evidence) << "\n";
    out << "seed = " << c.seed << "\n";
    out << "budget = " << c.budget << "\n";
    out << "notes = " << c.notes << "\n";
  }

  for (const SkippedCondition& s : report.skipped) {
    out << "\n[skipped]\n";
    out << "condition = " << s.condition << "\n";
    out << "reason = " << s.reason << "\n";
  }
}

namespace {

struct Record {
  std::string section;
  int line = 0;
  std::map<std::string, std::string> fields;
};

}  // namespace

std::vector<ReportRow> read_report_rows(std::istream& in, const std::string& source,
                                        std::vector<std::string>& warnings) {
  std::vector<KeyValue> kvs;
  try {
    kvs = read_key_values(in, source);
  } catch (const ParseError& e) {
    warnings.push_back(std::string(e.what()) + " (file skipped)");
    return {};
  }
  std::vector<Record> records;
  for (const KeyValue& kv : kvs) {
    if (records.empty() || records.back().section != kv.section ||
        records.back().fields.count(kv.key)) {
      records.push_back({kv.section, kv.line, {}});
    }
    records.back().fields[kv.key] = kv.value;
  }

  std::vector<ReportRow> rows;
  std::string problem;
  bool have_run = false;
  bool have_solution_row = false;
  for (const Record& r : records) {
    auto warn = [&](const std::string& what) {
      warnings.push_back(source + ":" + std::to_string(r.line) + ": " + what +
                         " (record skipped)");
    };
    auto field = [&](const char* key) -> const std::string* {
      auto it = r.fields.find(key);
      return it == r.fields.end() ? nullptr : &it->second;
    };
    if (r.section == "run") {
      const std::string* p = field("problem");
      if (!p || p->empty()) {
        warn("[run] record without a problem");
        continue;
      }
      problem = *p;
      have_run = true;
      have_solution_row = false;
      continue;
    }
    if (!have_run) {
      warn("record before any [run] header");
      continue;
    }
    if (r.section == "certificate") {
      const std::string* cond = field("condition");
      const std::string* verdict = field("verdict");
      const std::string* margin = field("margin");
      if (!cond || !verdict || !margin) {
        warn("[certificate] record missing condition, verdict or margin");
        continue;
      }
      if (*verdict != "pass" && *verdict != "fail" && *verdict != "inconclusive") {
        warn("unknown verdict '" + *verdict + "'");
        continue;
      }
      try {
        parse_number(*margin, source, r.line);
      } catch (const ParseError& e) {
        warn(e.what());
        continue;
      }
      rows.push_back({problem, *cond, *verdict, *margin});
    } else if (r.section == "solution") {
      if (have_solution_row) continue;
      const std::string* status = field("status");
      const std::string* residual = field("residual");
      if (!status || !residual) {
        warn("[solution] record missing status or residual");
        continue;
      }
      rows.push_back({problem, "solve", *status, *residual});
      have_solution_row = true;
    } else if (r.section == "skipped") {
      const std::string* cond = field("condition");
      if (!cond) {
        warn("[skipped] record missing condition");
        continue;
      }
      rows.push_back({problem, *cond, "skipped", "-"});
    } else {
      warn("unknown section [" + r.section + "]");
    }
  }
  return rows;
}

void write_table(std::ostream& out, std::vector<ReportRow> rows, TableFormat format) {
  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    if (a.problem != b.problem) return a.problem < b.problem;
    return a.condition < b.condition;
  });
  if (format == TableFormat::kDelimited) {
    out << "problem,condition,verdict,margin\n";
    for (const ReportRow& r : rows) {
      out << r.problem << "," << r.condition << "," << r.verdict << "," << r.margin << "\n";
    }
    return;
  }
  size_t w_problem = 7, w_condition = 9, w_verdict = 7;
  for (const ReportRow& r : rows) {
    w_problem = std::max(w_problem, r.problem.size());
    w_condition = std::max(w_condition, r.condition.size());
    w_verdict = std::max(w_verdict, r.verdict.size());
  }
  auto line = [&](const std::string& a, const std::string& b, const std::string& c,
                  const std::string& d) {
    out << std::left << std::setw(static_cast<int>(w_problem)) << a << "  "
        << std::setw(static_cast<int>(w_condition)) << b << "  "
        << std::setw(static_cast<int>(w_verdict)) << c << "  " << d << "\n";
  };
  line("problem", "condition", "verdict", "margin");
  for (const ReportRow& r : rows) line(r.problem, r.condition, r.verdict, r.margin);
}

}  // namespace vicert
