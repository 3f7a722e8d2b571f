#include "vicert/solver.hpp"

#include "vicert/certificates.hpp"
#include "vicert/sampling.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>

namespace vicert {

void SolveConfig::validate() const {
  if (max_iterations < 1) throw ConfigurationError("max iterations must be at least 1");
  if (!(tolerance > 0.0)) throw ConfigurationError("residual tolerance must be positive");
  if (!(armijo_slope > 0.0 && armijo_slope < 1.0)) {
    throw ConfigurationError("Armijo slope must lie in (0, 1)");
  }
  if (!(backtrack > 0.0 && backtrack < 1.0)) {
    throw ConfigurationError("backtracking factor must lie in (0, 1)");
  }
  if (max_halvings < 0) throw ConfigurationError("max halvings must be non-negative");
  if (!(regularization > 0.0)) throw ConfigurationError("regularization must be positive");
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kSolved: return "solved";
    case SolveStatus::kMaxIterations: return "max-iters";
    case SolveStatus::kLineSearchStall: return "line-search-stall";
    case SolveStatus::kSingularJacobianFallbackExhausted:
      return "singular-jacobian-fallback-exhausted";
    case SolveStatus::kEvaluationFailure: return "evaluation-failure";
  }
  return "unknown";
}

std::string_view to_string(StepKind kind) {
  switch (kind) {
    case StepKind::kNewton: return "newton";
    case StepKind::kGradient: return "gradient";
    case StepKind::kRegularized: return "regularized";
    case StepKind::kFixedPoint: return "fixed-point";
  }
  return "unknown";
}

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::kNotApplicable: return "n/a";
    case Classification::kViSolution: return "vi-solution";
    case Classification::kQuasiNash: return "quasi-nash";
    case Classification::kNash: return "nash";
  }
  return "unknown";
}

namespace {

// Armijo backtracking on theta(v) = 1/2 |r(v)|^2. Accepted points strictly
// decrease the residual norm.
std::optional<NormalMapEval> armijo(const VIProblem& p, const NormalMapEval& current,
                                    const Vector& d, double slope, const SolveConfig& cfg) {
  const double theta0 = 0.5 * current.norm * current.norm;
  double t = 1.0;
  for (int h = 0; h <= cfg.max_halvings; ++h, t *= cfg.backtrack) {
    const Vector trial = current.v + t * d;
    if (!trial.allFinite()) continue;
    NormalMapEval e;
    try {
      e = normal_map(p, trial);
    } catch (const EvaluationError&) {
      continue;
    }
    const double theta = 0.5 * e.norm * e.norm;
    if (theta <= theta0 + cfg.armijo_slope * t * slope && e.norm < current.norm) return e;
  }
  return std::nullopt;
}

}  // namespace

SolveResult solve(const VIProblem& p, const SolveConfig& cfg) {
  cfg.validate();
  const int m = p.dim();
  Vector v = cfg.start ? *cfg.start : p.set().reference_point();
  if (v.size() != m) throw ConfigurationError("start point has the wrong dimension");

  SolveResult res;
  NormalMapEval e;
  try {
    e = normal_map(p, v);
  } catch (const EvaluationError& err) {
    res.status = SolveStatus::kEvaluationFailure;
    res.message = err.what();
    res.v = v;
    res.x = project(p.set(), v);
    res.residual = std::numeric_limits<double>::quiet_NaN();
    return res;
  }
  res.trace.push_back(e.norm);

  for (int iter = 0;; ++iter) {
    if (e.norm <= cfg.tolerance) {
      res.status = SolveStatus::kSolved;
      break;
    }
    if (iter >= cfg.max_iterations) {
      res.status = SolveStatus::kMaxIterations;
      break;
    }
    Matrix j;
    try {
      j = normal_map_jacobian_element(p, e.v, cfg.boundary_rule);
    } catch (const EvaluationError& err) {
      res.status = SolveStatus::kEvaluationFailure;
      res.message = err.what();
      break;
    }
    const Vector grad = j.transpose() * e.r;

    Eigen::JacobiSVD<Matrix> svd(j);
    const auto& sv = svd.singularValues();
    const bool singular = !(sv(m - 1) >= cfg.regularization * sv(0)) || sv(0) == 0.0;

    StepKind kind;
    Vector d;
    if (singular) {
      kind = StepKind::kRegularized;
      const Matrix normal = j.transpose() * j + cfg.regularization * Matrix::Identity(m, m);
      d = normal.ldlt().solve(-grad);
    } else {
      kind = StepKind::kNewton;
      d = j.partialPivLu().solve(-e.r);
    }
    double slope = grad.dot(d);
    if (!d.allFinite() || !(slope < 0.0)) {
      kind = StepKind::kGradient;
      d = -grad;
      slope = -grad.squaredNorm();
    }

    std::optional<NormalMapEval> next;
    if (slope < 0.0) next = armijo(p, e, d, slope, cfg);
    if (!next && kind != StepKind::kGradient && grad.squaredNorm() > 0.0) {
      next = armijo(p, e, -grad, -grad.squaredNorm(), cfg);
      if (next) kind = StepKind::kGradient;
    }
    // Where the element is flat (e.g. grad F = 0 inside K), step to P_K(v) - F(P_K(v)).
    if (!next) {
      next = armijo(p, e, -e.r, -e.r.squaredNorm(), cfg);
      if (next) kind = StepKind::kFixedPoint;
    }
    if (!next) {
      res.status = singular ? SolveStatus::kSingularJacobianFallbackExhausted
                            : SolveStatus::kLineSearchStall;
      break;
    }
    e = std::move(*next);
    res.trace.push_back(e.norm);
    res.steps.push_back(kind);
  }

  res.v = e.v;
  res.x = e.z;
  res.residual = e.norm;
  res.iterations = static_cast<int>(res.steps.size());
  res.classification = res.solved() ? Classification::kViSolution : Classification::kNotApplicable;
  return res;
}

Classification classify(const VIProblem& /*p*/, const QuadraticGame* game,
                        const SolveResult& res) {
  if (!res.solved()) return Classification::kNotApplicable;
  if (game == nullptr) return Classification::kViSolution;
  if (hessian_block_convexity(*game).verdict == Verdict::kPass) return Classification::kNash;
  try {
    if (pl_condition_check(*game, res.x, 200, 42).verdict == Verdict::kPass) {
      return Classification::kNash;
    }
  } catch (const PreconditionError&) {
    // Not stationary for the unconstrained costs; the PL route does not apply.
  }
  return Classification::kQuasiNash;
}

std::vector<SolveResult> multistart(const VIProblem& p, const SolveConfig& cfg, int starts,
                                    std::uint64_t seed, double radius) {
  if (starts < 1) throw ConfigurationError("multistart needs at least one start");
  const SampleSet points = sample_box(p.set(), starts, seed, radius);
  std::vector<SolveResult> all;
  for (int s = 0; s < starts; ++s) {
    SolveConfig c = cfg;
    if (s > 0 || !c.start) c.start = points.points[s];
    all.push_back(solve(p, c));
  }
  auto lex_less = [](const Vector& a, const Vector& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(),
                                        b.data() + b.size());
  };
  auto nan_last = [](double r) { return std::isnan(r) ? std::numeric_limits<double>::infinity() : r; };
  std::stable_sort(all.begin(), all.end(), [&](const SolveResult& a, const SolveResult& b) {
    const double ra = nan_last(a.residual), rb = nan_last(b.residual);
    if (ra != rb) return ra < rb;
    return lex_less(a.x, b.x);
  });
  std::vector<SolveResult> distinct;
  for (SolveResult& r : all) {
    const bool duplicate = std::any_of(distinct.begin(), distinct.end(), [&](const SolveResult& d) {
      return (d.x - r.x).norm() <= 1e-6;
    });
    if (!duplicate) distinct.push_back(std::move(r));
  }
  return distinct;
}

}  // namespace vicert
