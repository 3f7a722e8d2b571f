#pragma once

// Euclidean projection onto boxes, elements of its generalized Jacobian, and
// the convex hull Conv(G) of G = {I - e_i e_i'} u {I}.

#include "vicert/core_model.hpp"

#include <cstdint>
#include <vector>

namespace vicert {

enum class BoundaryRule { kOne, kZero };

std::string_view to_string(BoundaryRule rule);

enum class Activity {
  kInterior,
  kAtLower,
  kAtUpper,
  kOutsideBelow,
  kOutsideAbove,
  kFree,
};

std::string_view to_string(Activity activity);

// Componentwise median(lo_i, x_i, hi_i).
Vector project(const BoxSet& k, const Vector& x);

// Diagonal element D of the generalized Jacobian of the box projection at x.
struct ProjectionJacobianElement {
  Vector diagonal;                // entries in {0, 1}
  std::vector<Activity> activity;
  BoundaryRule rule = BoundaryRule::kOne;

  Matrix matrix() const { return diagonal.asDiagonal(); }
};

ProjectionJacobianElement projection_jacobian_element(
    const BoxSet& k, const Vector& x, BoundaryRule rule = BoundaryRule::kOne);

// A vertex of G: either I or I - e_i e_i'.
class ConvGVertex {
 public:
  static ConvGVertex Identity() { return ConvGVertex(-1); }
  static ConvGVertex DropCoordinate(int i) { return ConvGVertex(i); }

  bool is_identity() const { return dropped_ < 0; }
  int dropped() const { return dropped_; }
  Vector diagonal(int m) const;

 private:
  explicit ConvGVertex(int dropped) : dropped_(dropped) {}
  int dropped_;
};

std::vector<ConvGVertex> convg_vertices(int m);

// I - beta * sum_i alpha_i e_i e_i' with alpha on the unit simplex.
struct ConvGMember {
  double beta = 0.0;
  Vector alpha;
  Vector diagonal;  // 1 - beta * alpha_i

  Matrix matrix() const { return diagonal.asDiagonal(); }
  // sum_i beta alpha_i e_i e_i' = I - matrix()
  Vector complement() const;
};

// Deterministic sample of Conv(G). For every beta in the grid the alpha set
// is: the m simplex vertices, the barycenter, then seeded Dirichlet(1,...,1)
// draws until `alpha_samples` alphas are present. beta = 0 yields only the
// identity.
std::vector<ConvGMember> convg_hull_sample(int m, const std::vector<double>& beta_grid,
                                           int alpha_samples, std::uint64_t seed);

// {0, 1/4, 1/2, 3/4, 1}
std::vector<double> default_beta_grid();

}  // namespace vicert
