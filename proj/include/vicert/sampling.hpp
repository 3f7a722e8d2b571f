#pragma once

// Seeded finite point sets standing in for "for all x in K".

#include "vicert/core_model.hpp"

#include <cstdint>
#include <vector>

namespace vicert {

// Every point lies in K exactly. Unbounded coordinates are drawn within
// `radius` of the origin (or of the finite bound on half-lines).
struct SampleSet {
  std::vector<Vector> points;
  std::uint64_t seed = 0;
  double radius = 10.0;

  int count() const { return static_cast<int>(points.size()); }
  bool empty() const { return points.empty(); }
};

// The sampling interval used for coordinate i.
std::pair<double, double> sampling_interval(const BoxSet& k, int i, double radius);

// Uniform draws over the (radius-truncated) box. The reference point of K is
// always the first sample.
SampleSet sample_box(const BoxSet& k, int count, std::uint64_t seed, double radius = 10.0);

// Points of bd K (at least one coordinate pinned to a finite bound, corners
// included when they exist) followed by interior points. For K = R^m only
// interior points are produced.
SampleSet sample_boundary(const BoxSet& k, int count, std::uint64_t seed,
                          double radius = 10.0);

}  // namespace vicert
