#include "vicert/cli.hpp"

#include "vicert/numfmt.hpp"
#include "vicert/registry.hpp"
#include "vicert/report.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

namespace vicert {

const std::vector<std::string>& condition_ids() {
  static const std::vector<std::string> ids = {
      "pmatrix", "uniform-pmatrix", "sigma-sweep", "pfunction",   "block-pfunction", "growth",
      "upsilon", "maximal-rank",    "coercivity",  "pl",          "block-convexity"};
  return ids;
}

namespace {

struct Resolved {
  ProblemSpec spec;
  std::string provenance;
};

// Registry id first, then a file path. Throws ParseError or ConfigurationError.
Resolved resolve(const std::string& problem) {
  if (const ProblemRegistryEntry* e = find_problem(problem)) {
    return {e->spec, "builtin:" + e->id};
  }
  std::ifstream probe(problem);
  if (!probe) {
    throw ConfigurationError("unknown problem '" + problem +
                             "' (not a registry id and not a readable file)");
  }
  return {load_problem_file(problem), "file:" + problem};
}

bool game_only(const std::string& c) {
  return c == "upsilon" || c == "pl" || c == "block-convexity";
}

std::vector<std::string> split_conditions(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct CertifyFlags {
  std::uint64_t seed = 42;
  int samples = 200;
  double tol = 1e-8;
  double radius = 10.0;
  double exponent = 1.0;
};

// Reason the condition cannot run on this problem, or nullopt.
std::optional<std::string> inapplicable(const std::string& c, const ProblemSpec& spec) {
  const QuadraticGame* game = spec.game();
  if (game_only(c) && !game) return std::string("requires a game");
  if (c == "block-pfunction" && !spec.set.has_blocks() && !game) {
    return std::string("requires a block partition");
  }
  if (c == "upsilon") {
    for (int i = 1; i < game->players(); ++i) {
      if (game->block_size(i) != game->block_size(0)) {
        return std::string("requires equal player block sizes");
      }
    }
  }
  if (c == "pl") {
    for (int i = 0; i < game->players(); ++i) {
      if (!game->action_set(i).is_full_space()) {
        return std::string("requires unconstrained action sets");
      }
    }
  }
  return std::nullopt;
}

CertificateReport run_condition(const std::string& c, const ProblemSpec& spec,
                                const VIProblem& p, const CertifyFlags& f) {
  const int m = p.dim();
  PairSearchOptions pairs;
  pairs.pairs = std::max(100, 2 * f.samples);
  pairs.seed = f.seed;
  pairs.radius = f.radius;

  if (c == "pmatrix") {
    CertificateReport r = pmatrix_minors(jacobian(p, p.set().reference_point()));
    r.seed = f.seed;
    if (p.mapping().kind() != MappingKind::kAffine && spec.game() == nullptr) {
      r.add_note("Jacobian at the reference point of K");
    }
    return r;
  }
  if (c == "uniform-pmatrix") {
    const SampleSet s = sample_box(p.set(), f.samples, f.seed, f.radius);
    return uniform_pmatrix_sampled(p, s, 2 * f.samples);
  }
  if (c == "sigma-sweep") {
    return principal_submatrix_sigma_sweep(p, sample_box(p.set(), f.samples, f.seed, f.radius));
  }
  if (c == "pfunction") return uniform_pfunction_search(p, pairs);
  if (c == "block-pfunction") {
    const BoxSet k = p.set().has_blocks() ? p.set() : spec.game()->joint_set();
    const std::vector<int> blocks(k.blocks().begin(), k.blocks().end());
    return block_pfunction_search(p, blocks, pairs);
  }
  if (c == "growth") return growth_l0lp_fit(p, f.exponent, pairs);
  if (c == "upsilon") {
    return p_upsilon_check(*spec.game(),
                           sample_box(p.set(), f.samples, f.seed, f.radius));
  }
  if (c == "maximal-rank") {
    TSearchOptions t;
    t.tol = f.tol;
    t.seed = f.seed;
    const SampleSet s = sample_boundary(p.set(), std::min(f.samples, 64), f.seed, f.radius);
    return maximal_rank_tsearch(p, s, t);
  }
  if (c == "coercivity") {
    CoercivityOptions o;
    o.rays = 2 * m + 8;
    o.seed = f.seed;
    return coercivity_certificate(p, o);
  }
  if (c == "pl") {
    const SolveResult s = solve(p);
    CertificateReport r;
    if (!s.solved()) {
      r.condition = "pl";
      r.verdict = Verdict::kInconclusive;
      r.seed = f.seed;
      r.add_note("no stationary point found from the default start (" +
                 std::string(to_string(s.status)) + ")");
      return r;
    }
    try {
      r = pl_condition_check(*spec.game(), s.x, f.samples, f.seed);
    } catch (const PreconditionError& e) {
      r.condition = "pl";
      r.verdict = Verdict::kInconclusive;
      r.seed = f.seed;
      r.add_note(e.what());
      return r;
    }
    r.add_note("xbar = " + format_vector(s.x));
    return r;
  }
  return hessian_block_convexity(*spec.game());
}

void echo_common(RunReport& rep, std::uint64_t seed, double radius) {
  rep.config.emplace_back("seed", std::to_string(seed));
  rep.config.emplace_back("radius", format_number(radius));
}

int cmd_solve(const std::string& problem, int starts, std::uint64_t seed, double tol,
              double radius, bool trace, std::ostream& out) {
  const Resolved r = resolve(problem);
  const VIProblem p = r.spec.build(r.provenance);
  SolveConfig cfg;
  cfg.tolerance = tol;
  cfg.validate();

  RunReport rep;
  rep.problem = r.spec.name;
  rep.provenance = r.provenance;
  rep.command = "solve";
  rep.include_trace = trace;
  echo_common(rep, seed, radius);
  rep.config.emplace_back("starts", std::to_string(starts));
  rep.config.emplace_back("tol", format_number(tol));
  rep.config.emplace_back("max_iterations", std::to_string(cfg.max_iterations));

  rep.solutions = multistart(p, cfg, starts, seed, radius);
  for (SolveResult& s : rep.solutions) {
    if (s.solved()) s.classification = classify(p, r.spec.game(), s);
  }
  write_report(out, rep);
  const bool any = std::any_of(rep.solutions.begin(), rep.solutions.end(),
                               [](const SolveResult& s) { return s.solved(); });
  return any ? 0 : 2;
}

int cmd_certify(const std::string& problem, const std::string& conditions,
                const CertifyFlags& f, bool timing, std::ostream& out, std::ostream& err) {
  const Resolved r = resolve(problem);
  const VIProblem p = r.spec.build(r.provenance);

  std::vector<std::string> requested;
  const bool explicit_list = !conditions.empty();
  if (explicit_list) {
    for (const std::string& c : split_conditions(conditions)) {
      if (std::find(condition_ids().begin(), condition_ids().end(), c) ==
          condition_ids().end()) {
        err << "vicert certify: unknown condition '" << c << "'\n";
        return 1;
      }
      if (std::find(requested.begin(), requested.end(), c) == requested.end()) {
        requested.push_back(c);
      }
    }
  } else {
    requested = condition_ids();
  }

  RunReport rep;
  rep.problem = r.spec.name;
  rep.provenance = r.provenance;
  rep.command = "certify";
  echo_common(rep, f.seed, f.radius);
  rep.config.emplace_back("samples", std::to_string(f.samples));
  rep.config.emplace_back("tol", format_number(f.tol));
  rep.config.emplace_back("exponent", format_number(f.exponent));
  std::string list;
  for (const std::string& c : requested) list += (list.empty() ? "" : ",") + c;
  rep.config.emplace_back("conditions", list);

  const auto t0 = std::chrono::steady_clock::now();
  for (const std::string& c : requested) {
    if (auto why = inapplicable(c, r.spec)) {
      // Only explicitly requested conditions are reported as skipped.
      if (explicit_list) rep.skipped.push_back({c, *why});
      continue;
    }
    try {
      rep.certificates.push_back(run_condition(c, r.spec, p, f));
    } catch (const BudgetError& e) {
      rep.skipped.push_back({c, e.what()});
    } catch (const EvaluationError& e) {
      CertificateReport bad;
      bad.condition = c;
      bad.verdict = Verdict::kInconclusive;
      bad.seed = f.seed;
      bad.add_note(std::string("evaluation failed: ") + e.what());
      rep.certificates.push_back(bad);
    }
  }
  if (timing) {
    rep.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  write_report(out, rep);

  bool fail = false, inconclusive = false;
  for (const CertificateReport& c : rep.certificates) {
    fail |= c.verdict == Verdict::kFail;
    inconclusive |= c.verdict == Verdict::kInconclusive;
  }
  return fail ? 2 : inconclusive ? 3 : 0;
}

int cmd_report(const std::vector<std::string>& files, const std::string& format,
               std::ostream& out, std::ostream& err) {
  std::vector<ReportRow> rows;
  std::vector<std::string> warnings;
  for (const std::string& path : files) {
    std::ifstream in(path);
    if (!in) {
      warnings.push_back(path + ": cannot open (file skipped)");
      continue;
    }
    std::vector<ReportRow> part = read_report_rows(in, path, warnings);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  for (const std::string& w : warnings) err << "warning: " << w << "\n";
  write_table(out, std::move(rows),
              format == "delimited" ? TableFormat::kDelimited : TableFormat::kText);
  return 0;
}

int cmd_list(const std::string& export_id, std::ostream& out, std::ostream& err) {
  if (!export_id.empty()) {
    const ProblemRegistryEntry* e = find_problem(export_id);
    if (!e) {
      err << "vicert list: unknown problem '" << export_id << "'\n";
      return 1;
    }
    write_problem(out, e->spec);
    return 0;
  }
  for (const ProblemRegistryEntry& e : problem_registry()) {
    out << e.id << "  " << e.description << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Variational inequality solver and existence-certificate checker", "vicert"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string problem, conditions, format = "text", export_id;
  std::vector<std::string> files;
  std::uint64_t seed = 42;
  int starts = 8;
  double solve_tol = 1e-10;
  bool trace = false, timing = false;
  CertifyFlags cf;

  CLI::App* list = app.add_subcommand("list", "List builtin problems");
  list->add_option("--export", export_id, "Print the problem file of a builtin problem");

  CLI::App* solve_cmd = app.add_subcommand("solve", "Solve a problem by multistart Newton");
  solve_cmd->add_option("problem", problem, "Registry id or problem file")->required();
  solve_cmd->add_option("--starts", starts, "Number of starting points")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", seed, "Random seed");
  solve_cmd->add_option("--tol", solve_tol, "Residual tolerance")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--radius", cf.radius, "Sampling radius for unbounded coordinates")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_flag("--trace", trace, "Include the residual trace");

  CLI::App* certify = app.add_subcommand("certify", "Check existence conditions");
  certify->add_option("problem", problem, "Registry id or problem file")->required();
  certify->add_option("--conditions", conditions, "Comma-separated condition ids");
  certify->add_option("--seed", cf.seed, "Random seed");
  certify->add_option("--samples", cf.samples, "Sample budget")->check(CLI::PositiveNumber);
  certify->add_option("--tol", cf.tol, "Singular value tolerance for maximal-rank")
      ->check(CLI::PositiveNumber);
  certify->add_option("--radius", cf.radius, "Sampling radius for unbounded coordinates")
      ->check(CLI::PositiveNumber);
  certify->add_option("--exponent", cf.exponent, "Growth exponent p")
      ->check(CLI::Range(1.0, 1e6));
  certify->add_flag("--timing", timing, "Record wall-clock time");

  CLI::App* report = app.add_subcommand("report", "Merge run reports into a table");
  report->add_option("files", files, "Run report files");
  report->add_option("--format", format, "Table format")
      ->check(CLI::IsMember({"text", "delimited"}));

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "vicert: " << e.what() << "\n";
    return 1;
  }

  try {
    if (list->parsed()) return cmd_list(export_id, out, err);
    if (solve_cmd->parsed()) return cmd_solve(problem, starts, seed, solve_tol, cf.radius, trace, out);
    if (certify->parsed()) return cmd_certify(problem, conditions, cf, timing, out, err);
    return cmd_report(files, format, out, err);
  } catch (const ParseError& e) {
    err << e.what() << "\n";
  } catch (const ConfigurationError& e) {
    err << "vicert: " << e.what() << "\n";
  } catch (const PreconditionError& e) {
    err << "vicert: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace vicert
