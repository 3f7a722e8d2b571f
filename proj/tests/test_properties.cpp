// Cross-module invariants over the registry and random instances.
#include "helpers.hpp"
#include "vicert/certificates.hpp"
#include "vicert/registry.hpp"
#include "vicert/solver.hpp"

#include <gtest/gtest.h>

#include <Eigen/SVD>

using namespace vicert;
using namespace vicert::test;

namespace {

Vector slice(const std::vector<double>& w, size_t from, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = w[from + i];
  return v;
}

Matrix random_matrix(std::mt19937_64& rng, int m, double shift) {
  Matrix a(m, m);
  for (int i = 0; i < m * m; ++i) a.data()[i] = std::normal_distribution<double>()(rng);
  a.diagonal().array() += shift;
  return a;
}

}  // namespace

TEST(Properties, MinorsPassImpliesNoOracleFailure) {
  std::mt19937_64 rng(60);
  for (int s = 0; s < 40; ++s) {
    const Matrix a = random_matrix(rng, 3, 1.5);
    const CertificateReport minors = pmatrix_minors(a);
    const CertificateReport oracle = pmatrix_oracle(a, 5000, s);
    if (minors.verdict == Verdict::kPass) EXPECT_NE(oracle.verdict, Verdict::kFail);
    if (oracle.verdict == Verdict::kFail) {
      EXPECT_EQ(minors.verdict, Verdict::kFail);
      const Vector w = slice(oracle.witness, 0, 3);
      EXPECT_LE(w.cwiseProduct(a * w).maxCoeff(), 0.0);
    }
  }
}

TEST(Properties, UniformPmatrixImplicationChain) {
  // uniform P-matrix pass => sigma sweep pass and no P-function violation.
  std::vector<VIProblem> problems;
  for (const auto& e : problem_registry()) problems.push_back(e.spec.build(e.id));
  std::mt19937_64 rng(61);
  for (int s = 0; s < 10; ++s) {
    problems.push_back(affine_problem(random_matrix(rng, 3, 2.0), BoxSet::Uniform(3, -1, 1)));
  }
  int passes = 0;
  for (const VIProblem& p : problems) {
    const SampleSet samples = sample_box(p.set(), 30, 42);
    const CertificateReport u = uniform_pmatrix_sampled(p, samples, 60);
    if (u.verdict != Verdict::kPass) continue;
    ++passes;
    EXPECT_EQ(principal_submatrix_sigma_sweep(p, samples).verdict, Verdict::kPass)
        << p.provenance();
    EXPECT_NE(uniform_pfunction_search(p).verdict, Verdict::kFail) << p.provenance();
  }
  EXPECT_GE(passes, 5);
}

TEST(Properties, UpsilonIndependentOfSamples) {
  for (const auto& e : problem_registry()) {
    const QuadraticGame* g = e.spec.game();
    if (!g) continue;
    const Matrix a = upsilon_build(*g, sample_box(g->joint_set(), 10, 1));
    const Matrix b = upsilon_build(*g, sample_box(g->joint_set(), 17, 999));
    EXPECT_EQ(a, b) << e.id;
  }
}

TEST(Properties, FailWitnessesReverify) {
  for (const auto& e : problem_registry()) {
    const VIProblem p = e.spec.build(e.id);
    const int m = p.dim();
    const SampleSet samples = sample_box(p.set(), 40, 42);

    const CertificateReport pm = pmatrix_minors(jacobian(p, p.set().reference_point()));
    if (pm.verdict == Verdict::kFail) {
      std::vector<int> idx;
      for (double w : pm.witness) idx.push_back(static_cast<int>(w) - 1);
      EXPECT_LE(determinant(principal_submatrix(jacobian(p, p.set().reference_point()), idx)),
                0.0);
    }

    const CertificateReport pf = uniform_pfunction_search(p);
    if (pf.verdict == Verdict::kFail) {
      const Vector x = slice(pf.witness, 0, m), y = slice(pf.witness, m, m);
      EXPECT_TRUE(p.set().contains(x) && p.set().contains(y)) << e.id;
      EXPECT_LE((p(x) - p(y)).cwiseProduct(x - y).maxCoeff(), 1e-12) << e.id;
    }

    const CertificateReport ss = principal_submatrix_sigma_sweep(p, samples);
    if (ss.verdict == Verdict::kFail) {
      std::vector<int> idx;
      for (size_t i = m; i < ss.witness.size(); ++i) idx.push_back(static_cast<int>(ss.witness[i]) - 1);
      const Matrix sub = principal_submatrix(jacobian(p, slice(ss.witness, 0, m)), idx);
      EXPECT_LE(Eigen::JacobiSVD<Matrix>(sub).singularValues().minCoeff(), 1e-10) << e.id;
    }

    const CertificateReport co = coercivity_certificate(p, {.rays = 2 * m + 8});
    if (co.verdict == Verdict::kFail) {
      const Vector d = slice(co.witness, 0, m);
      const double r0 = co.witness[m], rn = co.witness[m + 1];
      EXPECT_LT(normal_map(p, rn * d).norm, 2.0 * normal_map(p, r0 * d).norm) << e.id;
    }
  }
}

TEST(Properties, SolvedResultsSatisfyVariationalInequality) {
  for (const auto& e : problem_registry()) {
    const VIProblem p = e.spec.build(e.id);
    for (const SolveResult& r : multistart(p, {}, 8, 42)) {
      if (!r.solved()) continue;
      const Vector fx = p(r.x);
      const double bound = -1e-8 * (1.0 + fx.norm());
      for (const Vector& z : sample_box(p.set(), 1000, 7).points) {
        EXPECT_GE(fx.dot(z - r.x), bound) << e.id;
      }
    }
  }
}

TEST(Properties, SamplesLieInK) {
  const double inf = std::numeric_limits<double>::infinity();
  const BoxSet k(vec({0, -inf, -1}), vec({1, inf, inf}));
  for (const Vector& x : sample_box(k, 500, 3).points) EXPECT_TRUE(k.contains(x));
  const SampleSet b = sample_boundary(k, 100, 3);
  int on = 0;
  for (const Vector& x : b.points) {
    EXPECT_TRUE(k.contains(x));
    on += k.on_boundary(x);
  }
  EXPECT_GE(on, 50);
}
