#include "vicert/normal_map.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace vicert {

NormalMapEval normal_map(const VIProblem& p, const Vector& v) {
  if (v.size() != p.dim()) throw ConfigurationError("normal map: dimension mismatch");
  for (int i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw EvaluationError("normal map at a non-finite point", i);
  }
  NormalMapEval e;
  e.v = v;
  e.z = project(p.set(), v);
  const Vector fz = p(e.z);
  e.r.resize(v.size());
  for (int i = 0; i < v.size(); ++i) {
    // Coordinates left in place by the projection contribute exactly F_i.
    e.r[i] = v[i] == e.z[i] ? fz[i] : (v[i] - e.z[i]) + fz[i];
  }
  e.norm = e.r.norm();
  return e;
}

Matrix normal_map_jacobian_element(const VIProblem& p, const Vector& v, BoundaryRule rule) {
  const ProjectionJacobianElement d = projection_jacobian_element(p.set(), v, rule);
  const Vector z = project(p.set(), v);
  const int m = p.dim();
  // Columns with d_j = 0 are e_j; columns with d_j = 1 are those of grad F(z).
  Matrix j = Matrix::Identity(m, m);
  bool any_active = false;
  for (int col = 0; col < m; ++col) any_active |= d.diagonal[col] != 0.0;
  if (!any_active) return j;
  const Matrix grad = jacobian(p, z);
  for (int col = 0; col < m; ++col) {
    if (d.diagonal[col] != 0.0) j.col(col) = grad.col(col);
  }
  return j;
}

std::string_view to_string(CoercivityVerdict verdict) {
  switch (verdict) {
    case CoercivityVerdict::kCoerciveEvidence: return "coercive-evidence";
    case CoercivityVerdict::kViolationWitness: return "violation-witness";
    case CoercivityVerdict::kInconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

double loglog_slope(const std::vector<double>& radii, const std::vector<double>& norms,
                    int burn_in) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (size_t k = static_cast<size_t>(burn_in); k < radii.size(); ++k) {
    if (!(norms[k] > 0.0)) return -std::numeric_limits<double>::infinity();
    const double x = std::log(radii[k]);
    const double y = std::log(norms[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double denom = n * sxx - sx * sx;
  return (n * sxy - sx * sy) / denom;
}

}  // namespace

CoercivityProbe coercivity_probe(const VIProblem& p, const CoercivityOptions& options) {
  const int m = p.dim();
  CoercivityOptions opt = options;
  if (opt.rays == 0) opt.rays = 2 * m;
  if (opt.rays < 2 * m) throw ConfigurationError("coercivity probe needs at least 2m rays");
  if (!(opt.growth > 1.0)) throw ConfigurationError("coercivity probe growth must exceed 1");
  if (opt.steps < 8) throw ConfigurationError("coercivity probe needs at least 8 radii");
  if (!(opt.r0 > 0.0)) throw ConfigurationError("coercivity probe r0 must be positive");
  if (opt.burn_in < 0 || opt.steps - opt.burn_in < 2) {
    throw ConfigurationError("coercivity probe burn-in leaves fewer than two radii");
  }

  std::vector<Vector> directions;
  for (int i = 0; i < m; ++i) {
    directions.push_back(Vector::Unit(m, i));
    directions.push_back(-Vector::Unit(m, i));
  }
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  while (static_cast<int>(directions.size()) < opt.rays) {
    Vector d(m);
    for (int i = 0; i < m; ++i) d[i] = normal(rng);
    const double n = d.norm();
    if (n < 1e-12) continue;
    directions.push_back(d / n);
  }

  std::vector<double> radii(opt.steps);
  for (int k = 0; k < opt.steps; ++k) radii[k] = opt.r0 * std::pow(opt.growth, k);

  CoercivityProbe probe;
  probe.options = opt;
  probe.min_slope = std::numeric_limits<double>::infinity();
  bool all_evidence = true;
  for (const Vector& dir : directions) {
    RayProbe ray;
    ray.direction = dir;
    ray.radii = radii;
    bool finite = true;
    for (double r : radii) {
      double norm;
      try {
        norm = normal_map(p, r * dir).norm;
      } catch (const EvaluationError&) {
        finite = false;
        break;
      }
      if (!std::isfinite(norm)) {
        finite = false;
        break;
      }
      ray.residual_norms.push_back(norm);
    }
    if (!finite) {
      ray.verdict = CoercivityVerdict::kInconclusive;
      all_evidence = false;
    } else {
      ray.slope = loglog_slope(ray.radii, ray.residual_norms, opt.burn_in);
      probe.min_slope = std::min(probe.min_slope, ray.slope);
      if (!(ray.residual_norms.back() >= 2.0 * ray.residual_norms.front())) {
        ray.verdict = CoercivityVerdict::kViolationWitness;
        if (probe.witness_ray < 0) probe.witness_ray = static_cast<int>(probe.rays.size());
      } else if (ray.slope >= 0.5) {
        ray.verdict = CoercivityVerdict::kCoerciveEvidence;
      } else {
        ray.verdict = CoercivityVerdict::kInconclusive;
      }
      if (ray.verdict != CoercivityVerdict::kCoerciveEvidence) all_evidence = false;
    }
    probe.rays.push_back(std::move(ray));
  }
  if (probe.witness_ray >= 0) {
    probe.verdict = CoercivityVerdict::kViolationWitness;
  } else if (all_evidence) {
    probe.verdict = CoercivityVerdict::kCoerciveEvidence;
  } else {
    probe.verdict = CoercivityVerdict::kInconclusive;
  }
  return probe;
}

}  // namespace vicert
