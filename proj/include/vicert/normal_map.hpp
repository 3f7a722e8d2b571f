#pragma once

// The normal map F_K^nor(v) = v - P_K(v) + F(P_K(v)), elements of its
// generalized Jacobian, and a ray probe for norm coercivity.

#include "vicert/core_model.hpp"
#include "vicert/projection.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace vicert {

struct NormalMapEval {
  Vector v;
  Vector z;  // P_K(v)
  Vector r;  // v - z + F(z)
  double norm = 0.0;
};

NormalMapEval normal_map(const VIProblem& p, const Vector& v);

// I - D + grad F(P_K(v)) D, with D the projection Jacobian element at v.
Matrix normal_map_jacobian_element(const VIProblem& p, const Vector& v,
                                   BoundaryRule rule = BoundaryRule::kOne);

enum class CoercivityVerdict { kCoerciveEvidence, kViolationWitness, kInconclusive };

std::string_view to_string(CoercivityVerdict verdict);

struct RayProbe {
  Vector direction;               // unit
  std::vector<double> radii;
  std::vector<double> residual_norms;
  double slope = 0.0;             // log-log fit past burn-in
  CoercivityVerdict verdict = CoercivityVerdict::kInconclusive;
};

struct CoercivityOptions {
  int rays = 0;        // 0 selects 2m (the +/- e_i rays)
  double r0 = 1.0;
  double growth = 2.0;
  int steps = 12;
  int burn_in = 4;
  std::uint64_t seed = 42;
};

// Sampled evidence only: coercivity on all of R^m is never certified.
struct CoercivityProbe {
  std::vector<RayProbe> rays;
  CoercivityVerdict verdict = CoercivityVerdict::kInconclusive;
  int witness_ray = -1;  // first violating ray
  double min_slope = 0.0;
  CoercivityOptions options;
};

// Rays: +e_1, -e_1, ..., +e_m, -e_m, then seeded uniform unit directions.
// A ray is a violation when its norm at the final radius is below twice its
// norm at r0; the probe is coercive-evidence when every slope is >= 0.5.
CoercivityProbe coercivity_probe(const VIProblem& p, const CoercivityOptions& options = {});

}  // namespace vicert
