// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include "helpers.hpp"
#include "vicert/certificates.hpp"
#include "vicert/numfmt.hpp"
#include "vicert/registry.hpp"
#include "vicert/solver.hpp"

#include <Eigen/SVD>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#ifndef VICERT_BIN
#error "VICERT_BIN must name the CLI executable"
#endif

using namespace vicert;
using namespace vicert::test;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

Vector slice(const std::vector<double>& w, size_t from, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = w[from + i];
  return v;
}

Outcome criterion1() {
  Outcome o;
  const VIProblem p = find_problem("example-vi")->spec.build("example-vi");
  const auto t0 = Clock::now();
  const auto rs = multistart(p, {}, 8, 42);
  const double dt = seconds_since(t0);
  o.check(rs.size() == 1, "expected one distinct solution, got " + std::to_string(rs.size()));
  if (!rs.empty()) {
    o.check(rs[0].solved(), "not solved");
    o.check(rs[0].x.norm() <= 1e-8, "|x*| = " + format_number(rs[0].x.norm()));
  }
  o.check(dt < 1.0, "took " + format_number(dt) + " s");
  o.detail = o.pass ? "1 solution, |x*| = " + format_number(rs[0].x.norm()) + ", " +
                          format_number(dt) + " s"
                    : o.detail;
  return o;
}

Outcome criterion2() {
  Outcome o;
  const auto* e = find_problem("example-game");
  const QuadraticGame& g = *e->spec.game();
  const VIProblem p = e->spec.build("example-game");
  const auto rs = multistart(p, {}, 8, 42);
  o.check(!rs.empty() && rs[0].solved(), "not solved");
  if (rs.empty()) return o;
  const SolveResult& r = rs[0];
  o.check(r.x.norm() <= 1e-8, "x* = " + format_vector(r.x));
  o.check(hessian_block_convexity(g).verdict == Verdict::kPass, "convexity gate did not pass");
  o.check(classify(p, &g, r) == Classification::kNash, "classification is not nash");

  const CertificateReport pl = pl_condition_check(g, vec({0, 0}), 1000, 42);
  // Scalar own blocks: (q x + h)^2 / ((q x + h)^2 / (2 q)) = 2 q.
  for (int i = 0; i < 2; ++i) {
    const double oracle = 2.0 * g.q(i, i)(0, 0);
    o.check(pl.evidence.size() == 2 && std::abs(pl.evidence[i] - oracle) <= 1e-9,
            "mu_" + std::to_string(i + 1) + " = " + format_list(pl.evidence));
  }
  if (o.pass) o.detail = "x* = (0, 0), nash, mu = " + format_list(pl.evidence);
  return o;
}

Outcome criterion3() {
  Outcome o;
  const VIProblem vi = find_problem("example-vi")->spec.build("example-vi");
  const CertificateReport pf = uniform_pfunction_search(vi, {.pairs = 400, .seed = 42});
  o.check(pf.verdict == Verdict::kFail, "pfunction did not fail");
  double dev = 1.0;
  if (pf.witness.size() == 4) {
    const Vector x = slice(pf.witness, 0, 2), y = slice(pf.witness, 2, 2);
    const Vector dx = x - y, df = vi(x) - vi(y);
    o.check(df.cwiseProduct(dx).maxCoeff() <= 0.0, "witness pair does not re-verify");
    const Vector d = dx.normalized(), t = vec({1, -1}) / std::sqrt(2.0);
    dev = std::min((d - t).norm(), (d + t).norm());
    o.check(dev <= 1e-3, "direction off by " + format_number(dev));
  } else {
    o.check(false, "witness has the wrong layout");
  }

  const QuadraticGame g = *find_problem("example-game")->spec.game();
  const SampleSet s = sample_box(g.joint_set(), 10, 42);
  const Matrix u = upsilon_build(g, s);
  o.check(u == mat(2, 2, {1, -2, -3, 1}), "Upsilon = " + format_matrix(u));
  const CertificateReport up = p_upsilon_check(g, s);
  o.check(up.verdict == Verdict::kFail, "upsilon did not fail");
  o.check(up.margin == -5.0, "det = " + format_number(up.margin));
  if (o.pass) {
    o.detail = "pfunction witness direction within " + format_number(dev) +
               ", Upsilon = [[1, -2], [-3, 1]], det = -5";
  }
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> shift(0.0, 3.0);
  const auto t0 = Clock::now();
  int accepted = 0, minors_pass = 0, minors_fail = 0, found = 0, unsound = 0;
  while (accepted < 100) {
    Matrix a(3, 3);
    for (int i = 0; i < 9; ++i) a.data()[i] = normal(rng);
    a.diagonal().array() += shift(rng);
    bool well_separated = true;
    for (const auto& idx : principal_index_sets(3)) {
      well_separated &= std::abs(principal_submatrix(a, idx).determinant()) >= 1e-6;
    }
    if (!well_separated) continue;
    const CertificateReport minors = pmatrix_minors(a);
    const CertificateReport oracle = pmatrix_oracle(a, 100000, 1000 + accepted);
    ++accepted;
    if (minors.verdict == Verdict::kPass) {
      ++minors_pass;
      unsound += oracle.verdict == Verdict::kFail;
    } else {
      ++minors_fail;
      if (oracle.verdict == Verdict::kFail) {
        const Vector w = slice(oracle.witness, 0, 3);
        found += w.cwiseProduct(a * w).maxCoeff() <= 0.0;
      }
    }
  }
  const double dt = seconds_since(t0);
  const double rate = minors_fail ? static_cast<double>(found) / minors_fail : 1.0;
  o.check(unsound == 0, std::to_string(unsound) + " oracle failures on P-matrices");
  o.check(rate >= 0.95, "witness rate " + format_number(rate));
  o.check(dt < 10.0, "took " + format_number(dt) + " s");
  o.check(minors_pass > 0 && minors_fail > 0, "degenerate mix of matrices");
  if (o.pass) {
    o.detail = std::to_string(minors_pass) + " P / " + std::to_string(minors_fail) +
               " non-P, witness rate " + format_number(rate) + ", " + format_number(dt) + " s";
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  const std::array<const char*, 5> ids = {"example-vi", "identity-box", "cubic-box",
                                          "coupled-cubic-box", "spd-affine-box"};
  std::mt19937_64 rng(5);
  double worst = 0.0;
  int points = 0;
  for (const char* id : ids) {
    const VIProblem p = find_problem(id)->spec.build(id);
    const int m = p.dim();
    int here = 0;
    while (here < 10) {
      Vector v(m);
      bool far = true;
      for (int i = 0; i < m; ++i) {
        const double lo = std::isfinite(p.set().lo()[i]) ? p.set().lo()[i] - 1.0 : -5.0;
        const double hi = std::isfinite(p.set().hi()[i]) ? p.set().hi()[i] + 1.0 : 5.0;
        v[i] = std::uniform_real_distribution<double>(lo, hi)(rng);
        far &= std::abs(v[i] - p.set().lo()[i]) >= 1e-3 && std::abs(v[i] - p.set().hi()[i]) >= 1e-3;
      }
      if (!far) continue;
      const Matrix fd = numeric_jacobian([&](const Vector& w) { return normal_map(p, w).r; }, v);
      worst = std::max(worst, (fd - normal_map_jacobian_element(p, v)).cwiseAbs().maxCoeff());
      ++here;
      ++points;
    }
  }
  o.check(points == 50, "checked " + std::to_string(points) + " points");
  o.check(worst <= 1e-5, "max deviation " + format_number(worst));
  if (o.pass) o.detail = "50 points, max deviation " + format_number(worst);
  return o;
}

Outcome criterion6() {
  Outcome o;
  double worst = 0.0;
  for (int m : {2, 5, 10}) {
    const VIProblem id = builtin_problem("identity", BoxSet::FullSpace(m));
    const CoercivityProbe probe = coercivity_probe(id, {.rays = 2 * m + 8});
    o.check(probe.verdict == CoercivityVerdict::kCoerciveEvidence,
            "identity m=" + std::to_string(m) + " is " + std::string(to_string(probe.verdict)));
    for (const RayProbe& r : probe.rays) worst = std::max(worst, std::abs(r.slope - 1.0));

    const VIProblem c = builtin_problem("constant-one", BoxSet::FullSpace(m));
    const CoercivityProbe cp = coercivity_probe(c, {.rays = 2 * m + 8});
    o.check(cp.verdict == CoercivityVerdict::kViolationWitness, "constant not a violation");
    for (const RayProbe& r : cp.rays) {
      o.check(r.verdict == CoercivityVerdict::kViolationWitness, "a constant ray escaped");
    }
  }
  o.check(worst <= 0.01, "slope deviation " + format_number(worst));
  if (o.pass) o.detail = "identity slopes within " + format_number(worst) + " of 1, constant violates every ray";
  return o;
}

Outcome criterion7() {
  Outcome o;
  const VIProblem id = builtin_problem("identity", BoxSet::Uniform(3, 0, 1));
  const SampleSet s = sample_boundary(id.set(), 32, 42);
  const CertificateReport r = maximal_rank_tsearch(id, s);
  o.check(r.verdict == Verdict::kPass, "identity on [0,1]^3 did not pass");
  o.check(!r.evidence.empty() && r.evidence[0] == 1.0, "first t is not 1");
  o.check(r.margin >= 1e-8, "min sigma " + format_number(r.margin));

  // Independent: the family holds the beta = 1, alpha = e_i vertices, and at
  // t = 1 every member B + (I - B) = I.
  const auto family = convg_hull_sample(3, default_beta_grid(), 8, 42);
  int vertices = 0;
  double oracle = 1e300;
  for (const ConvGMember& g : family) {
    if (g.beta == 1.0 && (g.alpha.array() == 1.0).count() == 1) ++vertices;
    const Matrix mat = Matrix(g.complement().asDiagonal()) + Matrix(g.matrix());
    oracle = std::min(oracle, Eigen::JacobiSVD<Matrix>(mat).singularValues().minCoeff());
  }
  o.check(vertices == 3, "family has " + std::to_string(vertices) + " vertices");
  o.check(std::abs(r.margin - oracle) <= 1e-12, "margin differs from the direct family minimum");
  int on_boundary = 0;
  for (const Vector& x : s.points) on_boundary += id.set().on_boundary(x);
  o.check(on_boundary > 0, "no boundary samples");

  const VIProblem vi = find_problem("example-vi")->spec.build("example-vi");
  const CertificateReport rv = maximal_rank_tsearch(vi, sample_boundary(vi.set(), 16, 42));
  o.check(rv.verdict == Verdict::kPass, "example-vi did not pass");
  o.check(rv.notes.find("no boundary samples") != std::string::npos, "not the full-space path");
  const double sv = Eigen::JacobiSVD<Matrix>(example_a()).singularValues().minCoeff();
  o.check(std::abs(rv.margin - sv) <= 1e-12, "example-vi margin " + format_number(rv.margin));
  if (o.pass) {
    o.detail = "identity passes at t = 1 with min sigma " + format_number(r.margin) +
               " over " + std::to_string(family.size()) + " family members; example-vi via t grad F";
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  int solved = 0;
  double worst = 1e300;
  for (const auto& e : problem_registry()) {
    const VIProblem p = e.spec.build(e.id);
    for (const SolveResult& r : multistart(p, {}, 8, 42)) {
      if (!r.solved()) continue;
      ++solved;
      const Vector fx = p(r.x);
      const double scale = 1.0 + fx.norm();
      for (const Vector& z : sample_box(p.set(), 1000, 8).points) {
        const double gap = fx.dot(z - r.x);
        worst = std::min(worst, gap / scale);
        if (gap < -1e-8 * scale) {
          o.check(false, e.id + " violates the inequality");
          break;
        }
      }
    }
  }
  o.check(solved >= static_cast<int>(problem_registry().size()), "some problems were not solved");
  if (o.pass) {
    o.detail = std::to_string(solved) + " solutions, smallest scaled gap " + format_number(worst);
  }
  return o;
}

std::string capture(const std::string& command, int& status) {
  std::string out;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome criterion9() {
  Outcome o;
  const std::string bin = VICERT_BIN;
  size_t bytes = 0;
  for (const char* id : {"example-vi", "example-game", "coupled-cubic-box", "upsilon-game"}) {
    const std::string cmd = "'" + bin + "' certify " + id + " --seed 42 2>/dev/null";
    int s1 = 0, s2 = 0;
    const std::string a = capture(cmd, s1);
    const std::string b = capture(cmd, s2);
    o.check(!a.empty(), std::string(id) + ": empty report");
    o.check(a == b && s1 == s2, std::string(id) + ": reports differ");
    bytes += a.size();
  }
  if (o.pass) o.detail = "4 problems, " + std::to_string(bytes) + " bytes identical across runs";
  return o;
}

}  // namespace

int main() {
  const std::array<std::pair<const char*, std::function<Outcome()>>, 9> criteria = {{
      {"example VI solve", criterion1},
      {"example game solve and PL constants", criterion2},
      {"known failure witnesses", criterion3},
      {"P-matrix oracle equivalence", criterion4},
      {"normal-map Jacobian consistency", criterion5},
      {"coercivity probe calibration", criterion6},
      {"maximal-rank t-search sanity", criterion7},
      {"solution certificate property", criterion8},
      {"certify determinism", criterion9},
  }};
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failures += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " ("
              << criteria[i].first << "): " << o.detail << "\n";
  }
  std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed"
                         : std::string("acceptance: all 9 criteria passed"))
            << std::endl;
  return failures ? 1 : 0;
}
