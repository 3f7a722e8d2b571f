#pragma once

// Problem data model: box feasible sets, mappings with Jacobian access,
// quadratic games and the VI(K, F) problem that bundles a mapping with a set.

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vicert {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Malformed problem data: dimension mismatches, inverted bounds, asymmetric
// own-cost blocks and similar.
class ConfigurationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A mapping produced a non-finite value. `coordinate()` is the offending
// input coordinate for finite-difference columns, or the output component
// for plain evaluations.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(const std::string& what, int coordinate)
      : std::runtime_error(what), coordinate_(coordinate) {}
  int coordinate() const { return coordinate_; }

 private:
  int coordinate_;
};

// Requested enumeration exceeds the exhaustive budget (e.g. 2^m minors).
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A checker was called on an input that violates its documented
// precondition (e.g. PL check at a point that is not a stationary point).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cartesian product of closed intervals [lo_i, hi_i]; bounds may be
// infinite. Optional block sizes partition the coordinates (players).
class BoxSet {
 public:
  BoxSet(Vector lo, Vector hi, std::vector<int> blocks = {});

  static BoxSet FullSpace(int m);
  static BoxSet Uniform(int m, double lo, double hi);

  int dim() const { return static_cast<int>(lo_.size()); }
  const Vector& lo() const { return lo_; }
  const Vector& hi() const { return hi_; }
  std::span<const int> blocks() const { return blocks_; }
  bool has_blocks() const { return !blocks_.empty(); }
  BoxSet with_blocks(std::vector<int> blocks) const;

  bool is_full_space() const;
  bool has_finite_bound() const;
  bool contains(const Vector& x) const;
  // Strictly inside in every bounded direction.
  bool in_interior(const Vector& x) const;
  // Member of K with at least one coordinate sitting exactly on a finite bound.
  bool on_boundary(const Vector& x) const { return contains(x) && !in_interior(x); }

  // Box midpoint; unbounded coordinates go to 0 and half-bounded ones one
  // unit inside their finite bound.
  Vector reference_point() const;

 private:
  Vector lo_;
  Vector hi_;
  std::vector<int> blocks_;
};

enum class MappingKind { kAffine, kGame, kBuiltin };

std::string_view to_string(MappingKind kind);

// F : R^m -> R^m. Evaluators must be pure and deterministic.
class Mapping {
 public:
  using Evaluator = std::function<Vector(const Vector&)>;
  using JacobianEvaluator = std::function<Matrix(const Vector&)>;

  static Mapping Affine(Matrix a, Vector b);
  static Mapping Make(MappingKind kind, int dim, std::string label, Evaluator f,
                      JacobianEvaluator jac = nullptr);

  int dim() const { return dim_; }
  MappingKind kind() const { return kind_; }
  const std::string& label() const { return label_; }

  // Throws EvaluationError on non-finite output.
  Vector operator()(const Vector& x) const;

  bool has_analytic_jacobian() const { return static_cast<bool>(jacobian_); }
  Matrix analytic_jacobian(const Vector& x) const;

  // Non-null only for affine mappings.
  const Matrix* affine_matrix() const { return affine_a_ ? &*affine_a_ : nullptr; }
  const Vector* affine_offset() const { return affine_b_ ? &*affine_b_ : nullptr; }

 private:
  Mapping() = default;

  MappingKind kind_ = MappingKind::kBuiltin;
  int dim_ = 0;
  std::string label_;
  Evaluator eval_;
  JacobianEvaluator jacobian_;
  std::optional<Matrix> affine_a_;
  std::optional<Vector> affine_b_;
};

// VI(K, F): find x* in K with <F(x*), x - x*> >= 0 for all x in K.
class VIProblem {
 public:
  VIProblem(Mapping mapping, BoxSet set, std::string provenance);

  int dim() const { return set_.dim(); }
  const Mapping& mapping() const { return mapping_; }
  const BoxSet& set() const { return set_; }
  const std::string& provenance() const { return provenance_; }

  Vector operator()(const Vector& x) const { return mapping_(x); }

 private:
  Mapping mapping_;
  BoxSet set_;
  std::string provenance_;
};

// N players; player i controls block x_i of size n_i and minimizes
//   f_i(x) = 1/2 x_i' Q_ii x_i + x_i' sum_{j != i} Q_ij x_j + c_i' x_i
// over its action box K_i.
class QuadraticGame {
 public:
  // `q[i][j]` is n_i x n_j; missing (empty) off-diagonal blocks mean zero.
  QuadraticGame(std::vector<int> block_sizes, std::vector<std::vector<Matrix>> q,
                std::vector<Vector> c, std::vector<BoxSet> action_sets);

  // All action sets R^{n_i}.
  static QuadraticGame Unconstrained(std::vector<int> block_sizes,
                                     std::vector<std::vector<Matrix>> q,
                                     std::vector<Vector> c);

  int players() const { return static_cast<int>(block_sizes_.size()); }
  int dim() const { return dim_; }
  int block_size(int i) const { return block_sizes_[i]; }
  int offset(int i) const { return offsets_[i]; }
  const std::vector<int>& block_sizes() const { return block_sizes_; }
  const Matrix& q(int i, int j) const { return q_[i][j]; }
  const Vector& c(int i) const { return c_[i]; }
  const BoxSet& action_set(int i) const { return action_sets_[i]; }

  // Product of the action sets with block partition attached.
  BoxSet joint_set() const;

  double cost(int i, const Vector& x) const;
  // Per-block gradients stacked: F(x).
  Vector gradient_map(const Vector& x) const;
  // Block matrix [Q_ij]; constant in x.
  Matrix jacobian() const;

 private:
  std::vector<int> block_sizes_;
  std::vector<int> offsets_;
  int dim_ = 0;
  std::vector<std::vector<Matrix>> q_;
  std::vector<Vector> c_;
  std::vector<BoxSet> action_sets_;
};

VIProblem game_to_vi(const QuadraticGame& game, std::string provenance = "game");

// Analytic Jacobian when the mapping has one, otherwise central differences.
Matrix jacobian(const VIProblem& problem, const Vector& x);

// Central differences with step h_i = 1e-6 (1 + |x_i|).
Matrix finite_difference_jacobian(const Mapping& mapping, const Vector& x);

// Compiled-in mappings addressable by id from problem files:
//   identity      F(x) = x
//   cubic         F_i(x) = x_i^3
//   cubic-nojac   same as cubic, Jacobian left to finite differences
//   constant-one  F(x) = (1, ..., 1)
//   coupled-cubic F_i(x) = x_i^3 + x_i - x_{i+1 mod m}/2
Mapping builtin_mapping(std::string_view id, int m);
std::vector<std::string> builtin_mapping_ids();

}  // namespace vicert
