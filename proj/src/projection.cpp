#include "vicert/projection.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace vicert {

std::string_view to_string(BoundaryRule rule) {
  return rule == BoundaryRule::kOne ? "one" : "zero";
}

std::string_view to_string(Activity activity) {
  switch (activity) {
    case Activity::kInterior: return "interior";
    case Activity::kAtLower: return "at-lower";
    case Activity::kAtUpper: return "at-upper";
    case Activity::kOutsideBelow: return "outside-below";
    case Activity::kOutsideAbove: return "outside-above";
    case Activity::kFree: return "free";
  }
  return "unknown";
}

Vector project(const BoxSet& k, const Vector& x) {
  if (x.size() != k.dim()) throw ConfigurationError("projection: dimension mismatch");
  Vector z(x.size());
  for (int i = 0; i < x.size(); ++i) {
    // Written so that x is returned untouched when lo <= x <= hi.
    double v = x[i];
    if (v < k.lo()[i]) v = k.lo()[i];
    if (v > k.hi()[i]) v = k.hi()[i];
    z[i] = v;
  }
  return z;
}

ProjectionJacobianElement projection_jacobian_element(const BoxSet& k, const Vector& x,
                                                      BoundaryRule rule) {
  if (x.size() != k.dim()) throw ConfigurationError("projection: dimension mismatch");
  const int m = k.dim();
  ProjectionJacobianElement e;
  e.rule = rule;
  e.diagonal.resize(m);
  e.activity.resize(m);
  const double boundary_value = rule == BoundaryRule::kOne ? 1.0 : 0.0;
  for (int i = 0; i < m; ++i) {
    const double lo = k.lo()[i], hi = k.hi()[i];
    Activity a;
    double d;
    if (std::isinf(lo) && std::isinf(hi)) {
      a = Activity::kFree;
      d = 1.0;
    } else if (x[i] < lo) {
      a = Activity::kOutsideBelow;
      d = 0.0;
    } else if (x[i] > hi) {
      a = Activity::kOutsideAbove;
      d = 0.0;
    } else if (x[i] == lo) {
      a = Activity::kAtLower;
      d = boundary_value;
    } else if (x[i] == hi) {
      a = Activity::kAtUpper;
      d = boundary_value;
    } else {
      a = Activity::kInterior;
      d = 1.0;
    }
    e.activity[i] = a;
    e.diagonal[i] = d;
  }
  return e;
}

Vector ConvGVertex::diagonal(int m) const {
  Vector d = Vector::Ones(m);
  if (!is_identity()) d[dropped_] = 0.0;
  return d;
}

std::vector<ConvGVertex> convg_vertices(int m) {
  std::vector<ConvGVertex> g{ConvGVertex::Identity()};
  for (int i = 0; i < m; ++i) g.push_back(ConvGVertex::DropCoordinate(i));
  return g;
}

Vector ConvGMember::complement() const {
  return Vector::Ones(diagonal.size()) - diagonal;
}

std::vector<double> default_beta_grid() { return {0.0, 0.25, 0.5, 0.75, 1.0}; }

std::vector<ConvGMember> convg_hull_sample(int m, const std::vector<double>& beta_grid,
                                           int alpha_samples, std::uint64_t seed) {
  if (m <= 0) throw ConfigurationError("Conv(G) sample: dimension must be positive");
  if (alpha_samples < m) {
    throw ConfigurationError("Conv(G) sample: need at least m alpha samples");
  }
  for (double b : beta_grid) {
    if (!(b >= 0.0 && b <= 1.0)) throw ConfigurationError("beta must lie in [0, 1]");
  }

  std::vector<Vector> alphas;
  for (int i = 0; i < m; ++i) alphas.push_back(Vector::Unit(m, i));
  if (m > 1) alphas.push_back(Vector::Constant(m, 1.0 / m));
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> expo(1.0);
  while (static_cast<int>(alphas.size()) < alpha_samples) {
    Vector a(m);
    for (int i = 0; i < m; ++i) a[i] = expo(rng);
    a /= a.sum();
    alphas.push_back(a);
  }

  std::vector<ConvGMember> out;
  for (double beta : beta_grid) {
    if (beta == 0.0) {
      out.push_back({0.0, alphas.back(), Vector::Ones(m)});
      continue;
    }
    for (const Vector& a : alphas) {
      out.push_back({beta, a, (Vector::Ones(m) - beta * a)});
    }
  }
  return out;
}

}  // namespace vicert
