#include "vicert/sampling.hpp"

#include "vicert/projection.hpp"

#include <cmath>
#include <random>

namespace vicert {

std::pair<double, double> sampling_interval(const BoxSet& k, int i, double radius) {
  const double lo = k.lo()[i], hi = k.hi()[i];
  const bool lo_finite = std::isfinite(lo), hi_finite = std::isfinite(hi);
  if (lo_finite && hi_finite) return {lo, hi};
  if (lo_finite) return {lo, lo + 2.0 * radius};
  if (hi_finite) return {hi - 2.0 * radius, hi};
  return {-radius, radius};
}

namespace {

Vector draw_in_box(const BoxSet& k, double radius, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Vector x(k.dim());
  for (int i = 0; i < k.dim(); ++i) {
    const auto [a, b] = sampling_interval(k, i, radius);
    x[i] = a + (b - a) * unit(rng);
  }
  // Clamp guards against a + (b - a) u rounding past b.
  return project(k, x);
}

}  // namespace

SampleSet sample_box(const BoxSet& k, int count, std::uint64_t seed, double radius) {
  if (count < 1) throw ConfigurationError("sample count must be positive");
  if (!(radius > 0.0)) throw ConfigurationError("sampling radius must be positive");
  SampleSet s;
  s.seed = seed;
  s.radius = radius;
  std::mt19937_64 rng(seed);
  s.points.push_back(k.reference_point());
  while (s.count() < count) s.points.push_back(draw_in_box(k, radius, rng));
  return s;
}

SampleSet sample_boundary(const BoxSet& k, int count, std::uint64_t seed, double radius) {
  if (count < 1) throw ConfigurationError("sample count must be positive");
  if (!(radius > 0.0)) throw ConfigurationError("sampling radius must be positive");
  const int m = k.dim();
  SampleSet s;
  s.seed = seed;
  s.radius = radius;
  std::mt19937_64 rng(seed);

  std::vector<int> bounded;
  for (int i = 0; i < m; ++i) {
    if (std::isfinite(k.lo()[i]) || std::isfinite(k.hi()[i])) bounded.push_back(i);
  }

  auto pin = [&](Vector& x, int i, bool upper) {
    const double lo = k.lo()[i], hi = k.hi()[i];
    if (upper && std::isfinite(hi)) {
      x[i] = hi;
    } else if (!upper && std::isfinite(lo)) {
      x[i] = lo;
    } else {
      x[i] = std::isfinite(lo) ? lo : hi;
    }
  };

  if (!bounded.empty()) {
    const int boundary_target = std::max(1, (3 * count) / 4);
    // Lower and upper corners of the bounded coordinates.
    for (bool upper : {false, true}) {
      if (s.count() >= boundary_target) break;
      Vector x = k.reference_point();
      for (int i : bounded) pin(x, i, upper);
      s.points.push_back(x);
    }
    std::uniform_int_distribution<int> pick(0, static_cast<int>(bounded.size()) - 1);
    std::bernoulli_distribution coin(0.5);
    int next_face = 0;
    while (s.count() < boundary_target) {
      Vector x = draw_in_box(k, radius, rng);
      // Cycle through faces first so each bounded coordinate gets pinned.
      const int first = next_face < static_cast<int>(bounded.size())
                            ? bounded[next_face++]
                            : bounded[pick(rng)];
      pin(x, first, coin(rng));
      if (coin(rng)) pin(x, bounded[pick(rng)], coin(rng));
      s.points.push_back(x);
    }
  }
  while (s.count() < count) s.points.push_back(draw_in_box(k, radius, rng));
  return s;
}

}  // namespace vicert
