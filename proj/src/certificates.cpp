#include "vicert/certificates.hpp"

#include "vicert/numfmt.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>

namespace vicert {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> one_based(const std::vector<int>& indices) {
  std::vector<double> out;
  for (int i : indices) out.push_back(i + 1);
  return out;
}

void append(std::vector<double>& out, const Vector& v) {
  out.insert(out.end(), v.data(), v.data() + v.size());
}

std::string index_set_text(const std::vector<int>& indices) {
  std::string s = "{";
  for (size_t k = 0; k < indices.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(indices[k] + 1);
  }
  return s + "}";
}

void require_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols() || a.rows() == 0) {
    throw ConfigurationError(std::string(who) + ": matrix must be square and nonempty");
  }
}

void require_enumerable(int m, const char* who) {
  if (m > kMaxEnumerationDim) {
    throw BudgetError(std::string(who) + ": dimension " + std::to_string(m) +
                      " exceeds the exhaustive-enumeration budget (m <= 20); use the "
                      "sampled pmatrix-oracle instead");
  }
}

double min_eigenvalue_sym(const Matrix& a) {
  if (a.rows() == 1) return a(0, 0);
  const Matrix sym = 0.5 * (a + a.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> eig(sym, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff();
}

double spectral_norm(const Matrix& a) {
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

void CertificateReport::add_note(const std::string& note) {
  if (!notes.empty()) notes += "; ";
  notes += note;
}

std::vector<std::vector<int>> principal_index_sets(int m) {
  std::vector<std::vector<int>> out;
  for (int size = 1; size <= m; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      out.push_back(idx);
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == m - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int k = pos + 1; k < size; ++k) idx[k] = idx[k - 1] + 1;
    }
  }
  return out;
}

Matrix principal_submatrix(const Matrix& a, const std::vector<int>& indices) {
  const int r = static_cast<int>(indices.size());
  Matrix s(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) s(i, j) = a(indices[i], indices[j]);
  }
  return s;
}

double determinant(const Matrix& a) {
  switch (a.rows()) {
    case 0: return 1.0;
    case 1: return a(0, 0);
    case 2: return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    case 3:
      return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
             a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
             a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
    default: return a.partialPivLu().determinant();
  }
}

double smallest_singular_value(const Matrix& a) {
  if (a.size() == 0) return kInf;
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues().minCoeff();
}

CertificateReport pmatrix_minors(const Matrix& a) {
  require_square(a, "pmatrix");
  const int m = static_cast<int>(a.rows());
  require_enumerable(m, "pmatrix");
  CertificateReport r;
  r.condition = "pmatrix";
  r.budget = (1LL << m) - 1;
  r.margin = kInf;
  std::vector<int> offending;
  for (const auto& idx : principal_index_sets(m)) {
    const double minor = determinant(principal_submatrix(a, idx));
    if (minor < r.margin) r.margin = minor;
    if (!(minor > 0.0) && offending.empty()) {
      offending = idx;
      r.witness = one_based(idx);
      r.add_note("principal minor on " + index_set_text(idx) + " = " + format_number(minor));
    }
  }
  r.verdict = offending.empty() ? Verdict::kPass : Verdict::kFail;
  r.add_note("exact enumeration of all principal minors; margin is the smallest minor "
             "(P-matrix iff max_i w_i (A w)_i > 0 for every w != 0)");
  return r;
}

CertificateReport pmatrix_oracle(const Matrix& a, int samples, std::uint64_t seed) {
  require_square(a, "pmatrix-oracle");
  if (samples < 1000) throw ConfigurationError("pmatrix-oracle needs at least 1000 samples");
  const int m = static_cast<int>(a.rows());
  CertificateReport r;
  r.condition = "pmatrix-oracle";
  r.seed = seed;
  r.budget = samples;
  r.margin = kInf;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> support_size(1, m);
  std::vector<int> coords(m);
  for (int s = 0; s < samples; ++s) {
    Vector w = Vector::Zero(m);
    if (s % 2 == 0 || m == 1) {
      for (int i = 0; i < m; ++i) w[i] = normal(rng);
    } else {
      for (int i = 0; i < m; ++i) coords[i] = i;
      const int k = support_size(rng);
      for (int i = 0; i < k; ++i) {
        std::uniform_int_distribution<int> pick(i, m - 1);
        std::swap(coords[i], coords[pick(rng)]);
        w[coords[i]] = normal(rng);
      }
    }
    const double n = w.norm();
    if (n < 1e-12) continue;
    w /= n;
    const Vector aw = a * w;
    const double value = (w.array() * aw.array()).maxCoeff();
    if (value < r.margin) r.margin = value;
    if (!(value > 0.0)) {
      r.verdict = Verdict::kFail;
      append(r.witness, w);
      r.add_note("max_i w_i (A w)_i = " + format_number(value) + " <= 0 at the witness w");
      return r;
    }
  }
  r.verdict = Verdict::kPass;
  r.add_note(kSampledNote);
  r.add_note("margin is the smallest sampled max_i w_i (A w)_i over unit w");
  return r;
}

CertificateReport uniform_pmatrix_sampled(const VIProblem& p, const SampleSet& samples,
                                          int mixed_rows, double eta_floor) {
  if (samples.empty()) throw ConfigurationError("uniform-pmatrix: empty sample set");
  if (mixed_rows < samples.count()) {
    throw ConfigurationError("uniform-pmatrix: mixed_rows must be at least the sample count");
  }
  const int m = p.dim();
  const int n = samples.count();
  std::vector<Matrix> jac(n);
  for (int s = 0; s < n; ++s) jac[s] = jacobian(p, samples.points[s]);

  CertificateReport r;
  r.condition = "uniform-pmatrix";
  r.seed = samples.seed;
  r.budget = mixed_rows;
  r.margin = kInf;

  std::mt19937_64 rng(samples.seed);
  std::uniform_int_distribution<int> pick(0, n - 1);
  std::vector<int> tuple(m);
  Matrix last;
  CertificateReport last_check;
  for (int t = 0; t < mixed_rows; ++t) {
    for (int i = 0; i < m; ++i) tuple[i] = t < n ? t : pick(rng);
    Matrix mixed(m, m);
    for (int i = 0; i < m; ++i) mixed.row(i) = jac[tuple[i]].row(i);
    if (t == 0 || mixed != last) {
      last_check = m <= kMaxEnumerationDim ? pmatrix_minors(mixed)
                                           : pmatrix_oracle(mixed, 1000 * m, samples.seed + t);
      last = mixed;
    }
    r.margin = std::min(r.margin, last_check.margin);
    if (last_check.verdict == Verdict::kFail && r.witness.empty()) {
      for (int i = 0; i < m; ++i) append(r.witness, samples.points[tuple[i]]);
      r.witness.insert(r.witness.end(), last_check.witness.begin(), last_check.witness.end());
      r.add_note("mixed-row matrix from tuple " + std::to_string(t + 1) + " is not a P-matrix");
    }
  }
  if (!r.witness.empty()) {
    r.verdict = Verdict::kFail;
  } else if (r.margin >= eta_floor && r.margin > 0.0) {
    r.verdict = Verdict::kPass;
    r.add_note(kSampledNote);
  } else {
    r.verdict = Verdict::kInconclusive;
    r.add_note("all mixed-row matrices are P-matrices but the margin is below the floor " +
               format_number(eta_floor));
  }
  r.add_note(m <= kMaxEnumerationDim ? "margin is the smallest principal minor over tuples"
                                     : "margin is the smallest sampled oracle value");
  r.add_note("uniformity in x and the bounded diagonal scaling are only sampled");
  return r;
}

CertificateReport principal_submatrix_sigma_sweep(const VIProblem& p, const SampleSet& samples,
                                                  double threshold) {
  const int m = p.dim();
  require_enumerable(m, "sigma-sweep");
  if (samples.empty()) throw ConfigurationError("sigma-sweep: empty sample set");
  const auto sets = principal_index_sets(m);
  CertificateReport r;
  r.condition = "sigma-sweep";
  r.seed = samples.seed;
  r.budget = static_cast<long long>(samples.count()) * static_cast<long long>(sets.size());
  r.margin = kInf;

  int arg_sample = -1;
  const std::vector<int>* arg_set = nullptr;
  Matrix last;
  double last_min = kInf;
  const std::vector<int>* last_arg = nullptr;
  for (int s = 0; s < samples.count(); ++s) {
    const Matrix j = jacobian(p, samples.points[s]);
    if (s == 0 || j != last) {
      last_min = kInf;
      for (const auto& idx : sets) {
        const double sigma = smallest_singular_value(principal_submatrix(j, idx));
        if (sigma < last_min) {
          last_min = sigma;
          last_arg = &idx;
        }
      }
      last = j;
    }
    if (last_min < r.margin) {
      r.margin = last_min;
      arg_sample = s;
      arg_set = last_arg;
    }
  }
  r.add_note("smallest sigma_min on " + index_set_text(*arg_set) + " at sample " +
             format_vector(samples.points[arg_sample]));
  if (r.margin > threshold) {
    r.verdict = Verdict::kPass;
    r.add_note(kSampledNote);
  } else {
    r.verdict = Verdict::kFail;
    append(r.witness, samples.points[arg_sample]);
    const auto idx = one_based(*arg_set);
    r.witness.insert(r.witness.end(), idx.begin(), idx.end());
    r.add_note("principal submatrix is singular to threshold " + format_number(threshold));
  }
  return r;
}

namespace {

struct Pair {
  Vector x;
  Vector y;
};

// Nonzero vectors with entries in {-1, 0, 1}, first nonzero entry +1,
// ordered by support size. Above m = 6 only e_i and e_i +/- e_j are used.
std::vector<Vector> direction_grid(int m) {
  std::vector<Vector> dirs;
  if (m <= 6) {
    for (const auto& support : principal_index_sets(m)) {
      const int k = static_cast<int>(support.size());
      for (int signs = 0; signs < (1 << (k - 1)); ++signs) {
        Vector d = Vector::Zero(m);
        d[support[0]] = 1.0;
        for (int b = 1; b < k; ++b) d[support[b]] = (signs >> (k - 1 - b)) & 1 ? -1.0 : 1.0;
        dirs.push_back(d / d.norm());
      }
    }
  } else {
    for (int i = 0; i < m; ++i) dirs.push_back(Vector::Unit(m, i));
    for (int i = 0; i < m; ++i) {
      for (int j = i + 1; j < m; ++j) {
        for (double s : {1.0, -1.0}) {
          Vector d = Vector::Unit(m, i) + s * Vector::Unit(m, j);
          dirs.push_back(d / d.norm());
        }
      }
    }
  }
  return dirs;
}

std::vector<Pair> generate_pairs(const BoxSet& k, const PairSearchOptions& o) {
  const int m = k.dim();
  const SampleSet base = sample_box(k, 2 * o.pairs + 1, o.seed, o.radius);
  std::vector<Pair> pairs;
  auto distinct = [](const Vector& x, const Vector& y) { return (x - y).norm() >= 1e-12; };

  const auto dirs = direction_grid(m);
  const int grid_pairs = std::min<int>(static_cast<int>(dirs.size()), o.pairs / 2);
  for (int d = 0; d < grid_pairs; ++d) {
    const Vector& x = base.points[d % base.count()];
    Vector y = project(k, x + dirs[d]);
    if (!distinct(x, y)) y = project(k, x - dirs[d]);
    if (distinct(x, y)) pairs.push_back({x, y});
  }
  // Random pairs; coincident draws are resampled from a fresh stream.
  SampleSet pool = base;
  size_t next = 1;
  std::uint64_t refill = 1;
  int misses = 0;
  while (static_cast<int>(pairs.size()) < o.pairs) {
    if (next + 1 >= pool.points.size()) {
      pool = sample_box(k, 2 * o.pairs + 1, o.seed + 7919 * refill++, o.radius);
      next = 1;
    }
    const Vector& x = pool.points[next];
    const Vector& y = pool.points[next + 1];
    next += 2;
    if (distinct(x, y)) {
      pairs.push_back({x, y});
    } else if (++misses > 10 * o.pairs) {
      break;
    }
  }
  return pairs;
}

template <typename Score>
CertificateReport pair_search(const VIProblem& p, const PairSearchOptions& o,
                              std::string condition, Score score) {
  if (o.pairs < 100) throw ConfigurationError(condition + ": need at least 100 pairs");
  CertificateReport r;
  r.condition = std::move(condition);
  r.seed = o.seed;
  r.budget = o.pairs;
  r.margin = kInf;
  const auto pairs = generate_pairs(p.set(), o);
  if (pairs.empty()) {
    r.verdict = Verdict::kInconclusive;
    r.add_note("no distinct pairs exist in K");
    return r;
  }
  for (const Pair& pr : pairs) {
    const Vector dx = pr.x - pr.y;
    const Vector df = p(pr.x) - p(pr.y);
    const double rho = score(df, dx) / dx.squaredNorm() + 0.0;  // no -0
    r.margin = std::min(r.margin, rho);
    if (!(rho > 0.0) && r.witness.empty()) {
      append(r.witness, pr.x);
      append(r.witness, pr.y);
      r.add_note("ratio " + format_number(rho) + " <= 0 at the witness pair");
    }
  }
  if (r.witness.empty()) {
    r.verdict = Verdict::kPass;
    r.add_note(kSampledNote);
    r.add_note("margin is the empirical mu (smallest ratio over pairs)");
  } else {
    r.verdict = Verdict::kFail;
  }
  if (static_cast<int>(pairs.size()) < o.pairs) {
    r.add_note("only " + std::to_string(pairs.size()) + " distinct pairs were found");
  }
  return r;
}

}  // namespace

CertificateReport uniform_pfunction_search(const VIProblem& p, const PairSearchOptions& o) {
  return pair_search(p, o, "pfunction", [](const Vector& df, const Vector& dx) {
    return (df.array() * dx.array()).maxCoeff();
  });
}

CertificateReport block_pfunction_search(const VIProblem& p, const std::vector<int>& blocks,
                                         const PairSearchOptions& o) {
  int total = 0;
  for (int b : blocks) {
    if (b <= 0) throw ConfigurationError("block-pfunction: block sizes must be positive");
    total += b;
  }
  if (blocks.empty() || total != p.dim()) {
    throw ConfigurationError("block-pfunction: partition does not match the dimension");
  }
  return pair_search(p, o, "block-pfunction", [blocks](const Vector& df, const Vector& dx) {
    double best = -kInf;
    int offset = 0;
    for (int b : blocks) {
      best = std::max(best, df.segment(offset, b).dot(dx.segment(offset, b)));
      offset += b;
    }
    return best;
  });
}

CertificateReport growth_l0lp_fit(const VIProblem& p, double exponent,
                                  const PairSearchOptions& o) {
  if (!(exponent >= 1.0)) throw ConfigurationError("growth: exponent must be at least 1");
  if (o.pairs < 1) throw ConfigurationError("growth: need at least one pair");
  CertificateReport r;
  r.condition = "growth";
  r.seed = o.seed;
  r.budget = o.pairs;
  const auto pairs = generate_pairs(p.set(), o);
  if (pairs.empty()) {
    r.verdict = Verdict::kInconclusive;
    r.add_note("no distinct pairs exist in K");
    return r;
  }

  struct Sample {
    double dist;
    double gap;
  };
  std::vector<Sample> all;
  std::vector<Sample> far;  // |x - y| >= 1, plus unit extensions of short pairs
  int covered = 0;
  for (const Pair& pr : pairs) {
    const Vector fx = p(pr.x);
    const Vector dx = pr.y - pr.x;
    const double d = dx.norm();
    const double g = (p(pr.y) - fx).norm();
    all.push_back({d, g});
    if (d >= 1.0) {
      far.push_back({d, g});
      ++covered;
    } else {
      const Vector y1 = pr.x + dx / d;
      if (p.set().contains(y1)) far.push_back({(y1 - pr.x).norm(), (p(y1) - fx).norm()});
    }
  }
  double lp = 0.0;
  const auto& fit_set = far.empty() ? all : far;
  for (const Sample& s : fit_set) lp = std::max(lp, s.gap / std::pow(s.dist, exponent));
  double l0 = 0.0;
  for (const Sample& s : all) {
    const double bound = lp * std::pow(s.dist, exponent);
    const double excess = s.gap - bound;
    // Excess at rounding level is not growth.
    if (excess > 1e-12 * (1.0 + s.gap + bound)) l0 = std::max(l0, excess);
  }
  const double coverage = static_cast<double>(covered) / static_cast<double>(pairs.size());
  r.verdict = Verdict::kPass;
  r.margin = lp;
  r.evidence = {l0, lp, coverage};
  r.add_note("fitted L0 = " + format_number(l0) + ", Lp = " + format_number(lp) + " for p = " +
             format_number(exponent));
  r.add_note("coverage (pairs with |x - y| >= 1) = " + format_number(coverage));
  if (far.empty()) r.add_note("no pair reached distance 1; Lp fitted on all pairs");
  r.add_note(kSampledNote);
  return r;
}

Matrix upsilon_build(const QuadraticGame& game, const SampleSet& samples) {
  const int players = game.players();
  const int n = game.block_size(0);
  for (int i = 1; i < players; ++i) {
    if (game.block_size(i) != n) {
      throw ConfigurationError(
          "upsilon: every player must control the same number of variables (K_i in R^n)");
    }
  }
  const VIProblem vi = game_to_vi(game);
  std::vector<Vector> points = samples.points;
  if (points.empty()) points.push_back(vi.set().reference_point());

  Matrix kappa(players, players);
  for (int i = 0; i < players; ++i) {
    for (int j = 0; j < players; ++j) kappa(i, j) = i == j ? kInf : 0.0;
  }
  for (const Vector& x : points) {
    const Matrix a = jacobian(vi, x);
    for (int i = 0; i < players; ++i) {
      for (int j = 0; j < players; ++j) {
        const Matrix blk = a.block(game.offset(i), game.offset(j), n, n);
        if (i == j) {
          kappa(i, i) = std::min(kappa(i, i), min_eigenvalue_sym(blk));
        } else {
          kappa(i, j) = std::max(kappa(i, j), spectral_norm(blk));
        }
      }
    }
  }
  Matrix upsilon(players, players);
  for (int i = 0; i < players; ++i) {
    for (int j = 0; j < players; ++j) upsilon(i, j) = i == j ? kappa(i, i) : -kappa(i, j);
  }
  return upsilon;
}

CertificateReport p_upsilon_check(const QuadraticGame& game, const SampleSet& samples) {
  const Matrix upsilon = upsilon_build(game, samples);
  const int players = game.players();
  CertificateReport r;
  r.condition = "upsilon";
  r.seed = samples.seed;
  r.evidence.assign(players * players, 0.0);
  for (int i = 0; i < players; ++i) {
    for (int j = 0; j < players; ++j) r.evidence[i * players + j] = upsilon(i, j);
  }
  r.add_note("upsilon = " + format_matrix(upsilon));

  for (int i = 0; i < players; ++i) {
    if (!(upsilon(i, i) > 0.0)) {
      r.verdict = Verdict::kFail;
      r.margin = upsilon(i, i);
      r.witness = {static_cast<double>(i + 1)};
      r.add_note("clause (i) fails: own block of player " + std::to_string(i + 1) +
                 " is not positive definite");
      return r;
    }
  }
  const CertificateReport minors = pmatrix_minors(upsilon);
  r.budget = minors.budget;
  r.margin = minors.margin;
  r.witness = minors.witness;
  if (minors.verdict == Verdict::kPass) {
    r.verdict = Verdict::kPass;
    r.add_note("own blocks are positive definite and Upsilon is a P-matrix: the game has a "
               "unique Nash equilibrium");
  } else {
    r.verdict = Verdict::kFail;
    r.add_note("clause (ii) fails: Upsilon is not a P-matrix");
    r.add_note(minors.notes.substr(0, minors.notes.find(';')));
  }
  r.add_note("blocks of a quadratic game are constant, so Upsilon is exact");
  return r;
}

CertificateReport maximal_rank_tsearch(const VIProblem& p, const SampleSet& samples,
                                       const TSearchOptions& options) {
  const int m = p.dim();
  require_enumerable(m, "maximal-rank");
  if (samples.empty()) throw ConfigurationError("maximal-rank: empty sample set");
  TSearchOptions o = options;
  if (o.t_schedule.empty()) {
    for (int k = 0; k <= 12; ++k) o.t_schedule.push_back(std::ldexp(1.0, k));
  }
  if (o.beta_grid.empty()) o.beta_grid = default_beta_grid();
  if (o.alpha_samples == 0) o.alpha_samples = std::max(m + 1, 8);

  CertificateReport r;
  r.condition = "maximal-rank";
  r.seed = samples.seed;
  const BoxSet& k = p.set();
  const auto family = convg_hull_sample(m, o.beta_grid, o.alpha_samples, o.seed);
  r.budget = static_cast<long long>(samples.count()) * static_cast<long long>(family.size());

  std::vector<Matrix> jac;
  std::vector<bool> boundary;
  int boundary_count = 0;
  for (const Vector& x : samples.points) {
    const Vector z = project(k, x);
    jac.push_back(jacobian(p, z));
    boundary.push_back(k.on_boundary(z));
    boundary_count += boundary.back();
  }

  // Standing hypotheses.
  for (int s = 0; s < samples.count(); ++s) {
    const double sigma = smallest_singular_value(jac[s]);
    if (sigma < o.tol) {
      r.verdict = Verdict::kFail;
      r.margin = sigma;
      append(r.witness, samples.points[s]);
      r.add_note("hypothesis fails: sigma_min(grad F) = " + format_number(sigma) +
                 " below tol " + format_number(o.tol) + " at the witness point");
      return r;
    }
    if (!boundary[s] || m < 2) continue;
    for (const auto& idx : principal_index_sets(m)) {
      if (static_cast<int>(idx.size()) != m - 1) continue;
      const double minor = determinant(principal_submatrix(jac[s], idx));
      if (std::abs(minor) < o.tol) {
        r.verdict = Verdict::kFail;
        r.margin = minor;
        append(r.witness, samples.points[s]);
        const auto one = one_based(idx);
        r.witness.insert(r.witness.end(), one.begin(), one.end());
        r.add_note("hypothesis fails: (m-1)x(m-1) principal minor on " + index_set_text(idx) +
                   " vanishes at a boundary point");
        return r;
      }
    }
  }

  for (double t : o.t_schedule) {
    double min_sigma = kInf;
    for (int s = 0; s < samples.count(); ++s) {
      if (!boundary[s]) {
        min_sigma = std::min(min_sigma, smallest_singular_value(t * jac[s]));
        continue;
      }
      for (const ConvGMember& g : family) {
        const Matrix b = g.complement().asDiagonal();
        const Matrix mat = b + t * jac[s] * g.matrix();
        min_sigma = std::min(min_sigma, smallest_singular_value(mat));
      }
    }
    r.evidence.push_back(t);
    r.evidence.push_back(min_sigma);
    if (min_sigma >= o.tol) {
      r.verdict = Verdict::kPass;
      r.margin = min_sigma;
      r.add_note("smallest scheduled t = " + format_number(t));
      if (boundary_count == 0) {
        r.add_note("no boundary samples: the normal-map Jacobian is t grad F");
      }
      r.add_note(kSampledNote);
      return r;
    }
    r.margin = min_sigma;
  }
  r.verdict = Verdict::kInconclusive;
  r.add_note("no scheduled t reached tol; existence of t is not constructive");
  return r;
}

namespace {

struct InnerMin {
  bool finite = false;
  double value = 0.0;
  std::string note;
};

// Minimum over x of 1/2 x'Qx + h'x for a symmetric Q that is not positive
// definite: sampled draws refined by coordinate descent.
InnerMin sampled_inner_min(const Matrix& q, const Vector& h, const Vector& center,
                           std::mt19937_64& rng) {
  const int n = static_cast<int>(h.size());
  auto f = [&](const Vector& x) { return 0.5 * x.dot(q * x) + h.dot(x); };
  for (int k = 0; k < n; ++k) {
    if (q(k, k) < 0.0) return {false, 0.0, "negative curvature along a coordinate"};
  }
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector best = center;
  double best_f = f(center);
  for (int s = 0; s < 10 * n * n; ++s) {
    Vector x = center;
    for (int i = 0; i < n; ++i) x[i] += normal(rng) * (1.0 + std::abs(center[i]));
    const double fx = f(x);
    if (fx < best_f) {
      best_f = fx;
      best = x;
    }
  }
  Vector x = best;
  for (int sweep = 0; sweep < 100000; ++sweep) {
    double change = 0.0;
    for (int k = 0; k < n; ++k) {
      const double g = q.row(k).dot(x) + h[k];
      if (q(k, k) > 0.0) {
        const double step = g / q(k, k);
        x[k] -= step;
        change = std::max(change, std::abs(step));
      } else if (std::abs(g) > 1e-12) {
        return {false, 0.0, "cost is unbounded below along a flat coordinate"};
      }
    }
    if (!x.allFinite() || x.lpNorm<Eigen::Infinity>() > 1e12) {
      return {false, 0.0, "coordinate descent diverges"};
    }
    if (change < 1e-10) return {true, std::min(best_f, f(x)), ""};
  }
  return {false, 0.0, "coordinate descent did not converge"};
}

}  // namespace

CertificateReport pl_condition_check(const QuadraticGame& game, const Vector& xbar,
                                     int samples, std::uint64_t seed) {
  if (xbar.size() != game.dim()) throw ConfigurationError("pl: xbar has the wrong dimension");
  if (samples < 1) throw ConfigurationError("pl: need at least one sample");
  const double stationarity = game.gradient_map(xbar).norm();
  if (stationarity > 1e-6) {
    throw PreconditionError("pl: xbar is not a quasi-Nash point of the unconstrained game "
                            "(|F(xbar)| = " + format_number(stationarity) + ")");
  }
  CertificateReport r;
  r.condition = "pl";
  r.seed = seed;
  r.budget = static_cast<long long>(samples) * game.players();
  r.margin = kInf;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  bool inconclusive = false;

  for (int i = 0; i < game.players(); ++i) {
    const int n = game.block_size(i);
    const Matrix& q = game.q(i, i);
    Vector h = game.c(i);
    for (int j = 0; j < game.players(); ++j) {
      if (j != i) h += game.q(i, j) * xbar.segment(game.offset(j), game.block_size(j));
    }
    const Vector center = xbar.segment(game.offset(i), n);
    const std::string who = "player " + std::to_string(i + 1);

    Eigen::LLT<Matrix> llt(q);
    const bool positive_definite = llt.info() == Eigen::Success;
    Vector argmin;
    InnerMin inner;
    if (positive_definite) {
      argmin = -llt.solve(h);
      inner.finite = true;
    } else {
      inner = sampled_inner_min(q, h, center, rng);
      if (!inner.finite) {
        inconclusive = true;
        r.evidence.push_back(std::numeric_limits<double>::quiet_NaN());
        r.add_note(who + ": no finite inner minimum (" + inner.note + ")");
        continue;
      }
    }

    double mu = kInf;
    Vector worst;
    for (int s = 0; s < samples; ++s) {
      Vector x = center;
      for (int k = 0; k < n; ++k) x[k] += normal(rng) * (1.0 + std::abs(center[k]));
      const Vector grad = q * x + h;
      double gap;
      if (positive_definite) {
        const Vector u = x - argmin;
        gap = 0.5 * u.dot(q * u);
      } else {
        const double fx = 0.5 * x.dot(q * x) + h.dot(x);
        gap = fx - inner.value;
      }
      if (!(gap > 1e-12)) continue;
      const double ratio = grad.squaredNorm() / gap;
      if (ratio < mu) {
        mu = ratio;
        worst = x;
      }
    }
    r.evidence.push_back(mu);
    if (!std::isfinite(mu)) {
      inconclusive = true;
      r.add_note(who + ": no sample with a positive suboptimality gap");
      continue;
    }
    r.margin = std::min(r.margin, mu);
    if (!(mu > 0.0) && r.witness.empty()) {
      r.witness.push_back(i + 1);
      append(r.witness, worst);
      r.add_note(who + ": zero gradient at a point with positive gap");
    }
    if (!positive_definite) r.add_note(who + ": inner minimum estimated by sampling and descent");
  }
  r.add_note("mu = " + format_list(r.evidence));
  if (!r.witness.empty()) {
    r.verdict = Verdict::kFail;
  } else if (inconclusive) {
    r.verdict = Verdict::kInconclusive;
  } else {
    r.verdict = Verdict::kPass;
    r.add_note("every mu_i > 0: xbar is a Nash equilibrium of the game");
    r.add_note(kSampledNote);
  }
  return r;
}

CertificateReport hessian_block_convexity(const QuadraticGame& game) {
  CertificateReport r;
  r.condition = "block-convexity";
  r.budget = game.players();
  r.margin = kInf;
  int worst = 0;
  for (int i = 0; i < game.players(); ++i) {
    const double lam = min_eigenvalue_sym(game.q(i, i));
    if (lam < r.margin) {
      r.margin = lam;
      worst = i;
    }
  }
  if (r.margin > 0.0) {
    r.verdict = Verdict::kPass;
    r.add_note("every cost is strongly convex in the player's own variable");
  } else {
    r.verdict = Verdict::kFail;
    r.witness = {static_cast<double>(worst + 1)};
    r.add_note("own-variable Hessian of player " + std::to_string(worst + 1) +
               " is not positive definite");
  }
  return r;
}

CertificateReport coercivity_certificate(const VIProblem& p, const CoercivityOptions& options) {
  const CoercivityProbe probe = coercivity_probe(p, options);
  CertificateReport r;
  r.condition = "coercivity";
  r.seed = probe.options.seed;
  r.budget = static_cast<long long>(probe.rays.size()) * probe.options.steps;
  r.margin = probe.min_slope;
  for (const RayProbe& ray : probe.rays) r.evidence.push_back(ray.slope);
  switch (probe.verdict) {
    case CoercivityVerdict::kCoerciveEvidence:
      r.verdict = Verdict::kPass;
      r.add_note("coercive-evidence: every ray has log-log slope >= 0.5");
      r.add_note(kSampledNote);
      break;
    case CoercivityVerdict::kViolationWitness: {
      const RayProbe& ray = probe.rays[probe.witness_ray];
      r.verdict = Verdict::kFail;
      append(r.witness, ray.direction);
      r.witness.push_back(ray.radii.front());
      r.witness.push_back(ray.radii.back());
      r.add_note("violation-witness: residual norm grows from " +
                 format_number(ray.residual_norms.front()) + " to " +
                 format_number(ray.residual_norms.back()) + ", less than a factor 2");
      break;
    }
    case CoercivityVerdict::kInconclusive:
      r.verdict = Verdict::kInconclusive;
      r.add_note("inconclusive evidence: some ray grows slower than slope 0.5 or is not finite");
      break;
  }
  r.add_note("margin is the smallest log-log slope");
  return r;
}

}  // namespace vicert
