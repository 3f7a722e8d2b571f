#include "vicert/core_model.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace vicert {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigurationError(message);
}

void check_blocks(const std::vector<int>& blocks, int m) {
  if (blocks.empty()) return;
  int total = 0;
  for (int b : blocks) {
    require(b > 0, "block sizes must be positive");
    total += b;
  }
  require(total == m, "block sizes sum to " + std::to_string(total) +
                          " but the set has dimension " + std::to_string(m));
}

}  // namespace

BoxSet::BoxSet(Vector lo, Vector hi, std::vector<int> blocks)
    : lo_(std::move(lo)), hi_(std::move(hi)), blocks_(std::move(blocks)) {
  require(lo_.size() == hi_.size(), "lower and upper bounds differ in length");
  require(lo_.size() > 0, "box dimension must be positive");
  for (int i = 0; i < lo_.size(); ++i) {
    require(!std::isnan(lo_[i]) && !std::isnan(hi_[i]),
            "bound " + std::to_string(i + 1) + " is NaN");
    require(lo_[i] != kInf && hi_[i] != -kInf,
            "bound " + std::to_string(i + 1) + " makes the interval empty");
    require(lo_[i] <= hi_[i], "lo > hi at coordinate " + std::to_string(i + 1));
  }
  check_blocks(blocks_, dim());
}

BoxSet BoxSet::FullSpace(int m) {
  return BoxSet(Vector::Constant(m, -kInf), Vector::Constant(m, kInf));
}

BoxSet BoxSet::Uniform(int m, double lo, double hi) {
  return BoxSet(Vector::Constant(m, lo), Vector::Constant(m, hi));
}

BoxSet BoxSet::with_blocks(std::vector<int> blocks) const {
  return BoxSet(lo_, hi_, std::move(blocks));
}

bool BoxSet::is_full_space() const { return !has_finite_bound(); }

bool BoxSet::has_finite_bound() const {
  for (int i = 0; i < dim(); ++i) {
    if (std::isfinite(lo_[i]) || std::isfinite(hi_[i])) return true;
  }
  return false;
}

bool BoxSet::contains(const Vector& x) const {
  if (x.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (!(x[i] >= lo_[i] && x[i] <= hi_[i])) return false;
  }
  return true;
}

bool BoxSet::in_interior(const Vector& x) const {
  if (x.size() != dim()) return false;
  for (int i = 0; i < dim(); ++i) {
    if (!(x[i] > lo_[i] && x[i] < hi_[i])) return false;
  }
  return true;
}

Vector BoxSet::reference_point() const {
  Vector x(dim());
  for (int i = 0; i < dim(); ++i) {
    const bool lo_finite = std::isfinite(lo_[i]);
    const bool hi_finite = std::isfinite(hi_[i]);
    if (lo_finite && hi_finite) {
      x[i] = 0.5 * (lo_[i] + hi_[i]);
    } else if (lo_finite) {
      x[i] = lo_[i] + 1.0;
    } else if (hi_finite) {
      x[i] = hi_[i] - 1.0;
    } else {
      x[i] = 0.0;
    }
  }
  return x;
}

std::string_view to_string(MappingKind kind) {
  switch (kind) {
    case MappingKind::kAffine: return "affine";
    case MappingKind::kGame: return "game";
    case MappingKind::kBuiltin: return "builtin";
  }
  return "unknown";
}

Mapping Mapping::Affine(Matrix a, Vector b) {
  require(a.rows() == a.cols(), "affine matrix must be square");
  require(a.rows() == b.size(), "affine offset length does not match matrix");
  require(a.allFinite() && b.allFinite(), "affine data must be finite");
  Mapping m;
  m.kind_ = MappingKind::kAffine;
  m.dim_ = static_cast<int>(a.rows());
  m.label_ = "affine";
  m.affine_a_ = a;
  m.affine_b_ = b;
  m.eval_ = [a, b](const Vector& x) -> Vector { return a * x + b; };
  m.jacobian_ = [a](const Vector&) -> Matrix { return a; };
  return m;
}

Mapping Mapping::Make(MappingKind kind, int dim, std::string label, Evaluator f,
                      JacobianEvaluator jac) {
  require(dim > 0, "mapping dimension must be positive");
  require(static_cast<bool>(f), "mapping needs an evaluator");
  Mapping m;
  m.kind_ = kind;
  m.dim_ = dim;
  m.label_ = std::move(label);
  m.eval_ = std::move(f);
  m.jacobian_ = std::move(jac);
  return m;
}

Vector Mapping::operator()(const Vector& x) const {
  Vector fx = eval_(x);
  if (fx.size() != dim_) {
    throw EvaluationError("mapping returned a vector of the wrong length", -1);
  }
  for (int i = 0; i < fx.size(); ++i) {
    if (!std::isfinite(fx[i])) {
      throw EvaluationError("mapping component " + std::to_string(i + 1) +
                                " is not finite",
                            i);
    }
  }
  return fx;
}

Matrix Mapping::analytic_jacobian(const Vector& x) const {
  if (!jacobian_) throw std::logic_error("mapping has no analytic Jacobian");
  Matrix j = jacobian_(x);
  if (j.rows() != dim_ || j.cols() != dim_) {
    throw EvaluationError("Jacobian has the wrong shape", -1);
  }
  if (!j.allFinite()) throw EvaluationError("Jacobian is not finite", -1);
  return j;
}

VIProblem::VIProblem(Mapping mapping, BoxSet set, std::string provenance)
    : mapping_(std::move(mapping)), set_(std::move(set)),
      provenance_(std::move(provenance)) {
  require(mapping_.dim() == set_.dim(),
          "mapping dimension " + std::to_string(mapping_.dim()) +
              " does not match set dimension " + std::to_string(set_.dim()));
}

QuadraticGame::QuadraticGame(std::vector<int> block_sizes,
                             std::vector<std::vector<Matrix>> q,
                             std::vector<Vector> c,
                             std::vector<BoxSet> action_sets)
    : block_sizes_(std::move(block_sizes)), q_(std::move(q)), c_(std::move(c)),
      action_sets_(std::move(action_sets)) {
  const int n = players();
  require(n > 0, "a game needs at least one player");
  require(static_cast<int>(q_.size()) == n, "Q must have one row of blocks per player");
  require(static_cast<int>(c_.size()) == n, "c must have one vector per player");
  require(static_cast<int>(action_sets_.size()) == n,
          "one action set per player is required");
  offsets_.resize(n);
  for (int i = 0; i < n; ++i) {
    require(block_sizes_[i] > 0, "player block sizes must be positive");
    offsets_[i] = dim_;
    dim_ += block_sizes_[i];
  }
  for (int i = 0; i < n; ++i) {
    const std::string who = "player " + std::to_string(i + 1);
    require(static_cast<int>(q_[i].size()) == n, who + ": wrong number of Q blocks");
    require(c_[i].size() == block_sizes_[i], who + ": c has the wrong length");
    require(action_sets_[i].dim() == block_sizes_[i],
            who + ": action set dimension does not match block size");
    for (int j = 0; j < n; ++j) {
      Matrix& blk = q_[i][j];
      if (blk.size() == 0 && i != j) blk = Matrix::Zero(block_sizes_[i], block_sizes_[j]);
      require(blk.rows() == block_sizes_[i] && blk.cols() == block_sizes_[j],
              who + ": Q block (" + std::to_string(i + 1) + "," +
                  std::to_string(j + 1) + ") has the wrong shape");
      require(blk.allFinite(), who + ": Q blocks must be finite");
    }
    require(q_[i][i] == q_[i][i].transpose(), who + ": own-cost block Q_ii is not symmetric");
    require(c_[i].allFinite(), who + ": c must be finite");
  }
}

QuadraticGame QuadraticGame::Unconstrained(std::vector<int> block_sizes,
                                           std::vector<std::vector<Matrix>> q,
                                           std::vector<Vector> c) {
  std::vector<BoxSet> sets;
  for (int n : block_sizes) sets.push_back(BoxSet::FullSpace(n));
  return QuadraticGame(std::move(block_sizes), std::move(q), std::move(c), std::move(sets));
}

BoxSet QuadraticGame::joint_set() const {
  Vector lo(dim_), hi(dim_);
  for (int i = 0; i < players(); ++i) {
    lo.segment(offsets_[i], block_sizes_[i]) = action_sets_[i].lo();
    hi.segment(offsets_[i], block_sizes_[i]) = action_sets_[i].hi();
  }
  return BoxSet(std::move(lo), std::move(hi), block_sizes_);
}

double QuadraticGame::cost(int i, const Vector& x) const {
  const auto xi = x.segment(offsets_[i], block_sizes_[i]);
  double value = 0.5 * xi.dot(q_[i][i] * xi) + c_[i].dot(xi);
  for (int j = 0; j < players(); ++j) {
    if (j == i) continue;
    value += xi.dot(q_[i][j] * x.segment(offsets_[j], block_sizes_[j]));
  }
  return value;
}

Vector QuadraticGame::gradient_map(const Vector& x) const {
  Vector f(dim_);
  for (int i = 0; i < players(); ++i) {
    Vector gi = c_[i];
    for (int j = 0; j < players(); ++j) {
      gi += q_[i][j] * x.segment(offsets_[j], block_sizes_[j]);
    }
    f.segment(offsets_[i], block_sizes_[i]) = gi;
  }
  return f;
}

Matrix QuadraticGame::jacobian() const {
  Matrix a(dim_, dim_);
  for (int i = 0; i < players(); ++i) {
    for (int j = 0; j < players(); ++j) {
      a.block(offsets_[i], offsets_[j], block_sizes_[i], block_sizes_[j]) = q_[i][j];
    }
  }
  return a;
}

VIProblem game_to_vi(const QuadraticGame& game, std::string provenance) {
  Matrix a = game.jacobian();
  Mapping mapping = Mapping::Make(
      MappingKind::kGame, game.dim(), "game",
      [game](const Vector& x) -> Vector { return game.gradient_map(x); },
      [a](const Vector&) -> Matrix { return a; });
  return VIProblem(std::move(mapping), game.joint_set(), std::move(provenance));
}

Matrix jacobian(const VIProblem& problem, const Vector& x) {
  if (x.size() != problem.dim()) {
    throw ConfigurationError("point dimension does not match the problem");
  }
  for (int i = 0; i < x.size(); ++i) {
    if (!std::isfinite(x[i])) {
      throw EvaluationError("Jacobian requested at a non-finite point", i);
    }
  }
  const Mapping& f = problem.mapping();
  if (f.has_analytic_jacobian()) return f.analytic_jacobian(x);
  return finite_difference_jacobian(f, x);
}

Matrix finite_difference_jacobian(const Mapping& mapping, const Vector& x) {
  const int m = static_cast<int>(x.size());
  Matrix j(mapping.dim(), m);
  Vector xp = x, xm = x;
  for (int col = 0; col < m; ++col) {
    const double h = 1e-6 * (1.0 + std::abs(x[col]));
    xp[col] = x[col] + h;
    xm[col] = x[col] - h;
    // Use the actually representable step.
    const double width = xp[col] - xm[col];
    try {
      j.col(col) = (mapping(xp) - mapping(xm)) / width;
    } catch (const EvaluationError& e) {
      throw EvaluationError(std::string("finite difference along coordinate ") +
                                std::to_string(col + 1) + ": " + e.what(),
                            col);
    }
    xp[col] = x[col];
    xm[col] = x[col];
  }
  return j;
}

namespace {

Vector cube(const Vector& x) { return x.array().cube().matrix(); }

Matrix cube_jacobian(const Vector& x) {
  return (3.0 * x.array().square()).matrix().asDiagonal();
}

}  // namespace

std::vector<std::string> builtin_mapping_ids() {
  return {"identity", "cubic", "cubic-nojac", "constant-one", "coupled-cubic"};
}

Mapping builtin_mapping(std::string_view id, int m) {
  require(m > 0, "builtin mapping dimension must be positive");
  const std::string label(id);
  if (id == "identity") {
    return Mapping::Make(
        MappingKind::kBuiltin, m, label, [](const Vector& x) -> Vector { return x; },
        [m](const Vector&) -> Matrix { return Matrix::Identity(m, m); });
  }
  if (id == "cubic") {
    return Mapping::Make(MappingKind::kBuiltin, m, label, cube, cube_jacobian);
  }
  if (id == "cubic-nojac") {
    return Mapping::Make(MappingKind::kBuiltin, m, label, cube);
  }
  if (id == "constant-one") {
    return Mapping::Make(
        MappingKind::kBuiltin, m, label,
        [m](const Vector&) -> Vector { return Vector::Ones(m); },
        [m](const Vector&) -> Matrix { return Matrix::Zero(m, m); });
  }
  if (id == "coupled-cubic") {
    return Mapping::Make(
        MappingKind::kBuiltin, m, label,
        [m](const Vector& x) -> Vector {
          Vector f(m);
          for (int i = 0; i < m; ++i) {
            f[i] = x[i] * x[i] * x[i] + x[i] - 0.5 * x[(i + 1) % m];
          }
          return f;
        },
        [m](const Vector& x) -> Matrix {
          Matrix j = Matrix::Zero(m, m);
          for (int i = 0; i < m; ++i) {
            j(i, i) += 3.0 * x[i] * x[i] + 1.0;
            j(i, (i + 1) % m) -= 0.5;
          }
          return j;
        });
  }
  throw ConfigurationError("unknown builtin mapping id '" + label + "'");
}

}  // namespace vicert
