#pragma once

// Damped semismooth Newton on the normal map. A zero v of F_K^nor gives the
// VI solution x* = P_K(v).

#include "vicert/core_model.hpp"
#include "vicert/normal_map.hpp"
#include "vicert/projection.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace vicert {

struct SolveConfig {
  int max_iterations = 200;
  double tolerance = 1e-10;
  double armijo_slope = 1e-4;
  double backtrack = 0.5;
  int max_halvings = 40;
  double regularization = 1e-8;
  BoundaryRule boundary_rule = BoundaryRule::kOne;
  std::optional<Vector> start;  // default: BoxSet::reference_point()

  void validate() const;
};

enum class SolveStatus {
  kSolved,
  kMaxIterations,
  kLineSearchStall,
  kSingularJacobianFallbackExhausted,
  kEvaluationFailure,
};

// kFixedPoint is the last resort v <- P_K(v) - F(P_K(v)), tried when no
// Jacobian-based direction decreases the residual.
enum class StepKind { kNewton, kGradient, kRegularized, kFixedPoint };

enum class Classification { kNotApplicable, kViSolution, kQuasiNash, kNash };

std::string_view to_string(SolveStatus status);
std::string_view to_string(StepKind kind);
std::string_view to_string(Classification c);

struct SolveResult {
  SolveStatus status = SolveStatus::kMaxIterations;
  Vector v;
  Vector x;                        // P_K(v)
  double residual = 0.0;           // |F_K^nor(v)|
  std::vector<double> trace;       // residual norm at start and after each accepted step
  std::vector<StepKind> steps;
  int iterations = 0;
  Classification classification = Classification::kNotApplicable;
  std::string message;             // set on evaluation failure

  bool solved() const { return status == SolveStatus::kSolved; }
};

SolveResult solve(const VIProblem& p, const SolveConfig& cfg = {});

// vi-solution for plain VIs; for games quasi-nash, upgraded to nash when the
// own-block convexity gate or the PL check at x* passes.
Classification classify(const VIProblem& p, const QuadraticGame* game, const SolveResult& res);

// The default start plus starts - 1 seeded points of K (radius 10 for
// unbounded coordinates). Results within 1e-6 of a better one are dropped;
// the rest are sorted by residual, then lexicographically by x*.
std::vector<SolveResult> multistart(const VIProblem& p, const SolveConfig& cfg, int starts,
                                    std::uint64_t seed, double radius = 10.0);

}  // namespace vicert
