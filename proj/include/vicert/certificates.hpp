#pragma once

// Checkers for the existence conditions: P-matrix tests, the uniform
// P-matrix / P-function conditions, principal-submatrix singular values,
// growth bounds, the Upsilon matrix of a game, t-scaled maximal rank of the
// normal-map Jacobian, PL-type upgrades and own-block convexity.
//
// Conditions that quantify over all of K are checked on seeded finite
// samples. Their `pass` verdicts are evidence only; a `fail` always carries
// a witness that re-evaluates to a violation.

#include "vicert/core_model.hpp"
#include "vicert/normal_map.hpp"
#include "vicert/projection.hpp"
#include "vicert/sampling.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vicert {

enum class Verdict { kPass, kFail, kInconclusive };

std::string_view to_string(Verdict verdict);

inline constexpr const char* kSampledNote = "sampled surrogate, not a proof";

// Witness layouts (indices are 1-based):
//   pmatrix, upsilon         index set of the offending principal minor
//   pmatrix-oracle           w
//   uniform-pmatrix          x^1, ..., x^m (each of length m), index set
//   sigma-sweep              x, index set
//   pfunction, block-pfunction  x, y
//   maximal-rank             z (the sample where a hypothesis fails), then
//                            the index set of a vanishing minor if any
//   coercivity               ray direction, r0, final radius
//   pl                       player, x_i
//   block-convexity          player
// `evidence` holds condition-specific numbers (Upsilon row-major, per-player
// mu, [L0, Lp, coverage], per-t minimum singular values as (t, sigma) pairs).
struct CertificateReport {
  std::string condition;
  Verdict verdict = Verdict::kInconclusive;
  double margin = 0.0;
  std::vector<double> witness;
  std::vector<double> evidence;
  std::uint64_t seed = 0;
  long long budget = 0;
  std::string notes;

  void add_note(const std::string& note);
};

// Principal minors are enumerated by increasing size, lexicographically
// within a size. Indices here are 0-based.
std::vector<std::vector<int>> principal_index_sets(int m);
Matrix principal_submatrix(const Matrix& a, const std::vector<int>& indices);
// Cofactor expansion up to 3x3, partial-pivot LU above.
double determinant(const Matrix& a);
double smallest_singular_value(const Matrix& a);

inline constexpr int kMaxEnumerationDim = 20;

CertificateReport pmatrix_minors(const Matrix& a);

// max_i w_i (A w)_i over seeded unit vectors w whose support is either full
// or a random coordinate subset.
CertificateReport pmatrix_oracle(const Matrix& a, int samples, std::uint64_t seed);

// Mixed-row matrices A_{x_m} (row i of grad F(x^i)) built from tuples of
// sample points. The first `samples.count()` tuples repeat a single point.
CertificateReport uniform_pmatrix_sampled(const VIProblem& p, const SampleSet& samples,
                                          int mixed_rows, double eta_floor = 0.0);

CertificateReport principal_submatrix_sigma_sweep(const VIProblem& p,
                                                  const SampleSet& samples,
                                                  double threshold = 1e-10);

struct PairSearchOptions {
  int pairs = 400;
  std::uint64_t seed = 42;
  double radius = 10.0;
};

// rho(x, y) = max_j [F(x) - F(y)]_j [x - y]_j / |x - y|^2. Pairs along the
// directions with entries in {-1, 0, 1} come first, then random pairs.
CertificateReport uniform_pfunction_search(const VIProblem& p,
                                           const PairSearchOptions& options = {});

// As above with block inner products; `blocks` are sizes summing to m.
CertificateReport block_pfunction_search(const VIProblem& p, const std::vector<int>& blocks,
                                         const PairSearchOptions& options = {});

// Smallest (L0, Lp) with |F(x) - F(y)| <= L0 + Lp |x - y|^p on the pairs.
CertificateReport growth_l0lp_fit(const VIProblem& p, double exponent,
                                  const PairSearchOptions& options = {});

// Requires equal block sizes.
Matrix upsilon_build(const QuadraticGame& game, const SampleSet& samples);
CertificateReport p_upsilon_check(const QuadraticGame& game, const SampleSet& samples);

struct TSearchOptions {
  std::vector<double> t_schedule;  // empty selects 1, 2, 4, ..., 2^12
  double tol = 1e-8;
  std::vector<double> beta_grid;   // empty selects {0, 1/4, 1/2, 3/4, 1}
  int alpha_samples = 0;           // 0 selects max(m + 1, 8)
  std::uint64_t seed = 42;
};

// Smallest scheduled t for which every matrix
//   B + t grad F(P_K(x)) (I - B),  B = beta sum_i alpha_i e_i e_i'
// over the sampled Conv(G) family has sigma_min >= tol at the boundary
// samples (and t grad F at interior samples). The standing hypotheses
// (sigma_min(grad F) >= tol on the samples, nonzero (m-1)x(m-1) principal
// minors on boundary samples) are checked first.
CertificateReport maximal_rank_tsearch(const VIProblem& p, const SampleSet& boundary_samples,
                                       const TSearchOptions& options = {});

// Empirical PL constants mu_i at a stationary point xbar of the game.
CertificateReport pl_condition_check(const QuadraticGame& game, const Vector& xbar,
                                     int samples, std::uint64_t seed);

CertificateReport hessian_block_convexity(const QuadraticGame& game);

CertificateReport coercivity_certificate(const VIProblem& p,
                                         const CoercivityOptions& options = {});

}  // namespace vicert
