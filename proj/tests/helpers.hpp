#pragma once

#include "vicert/core_model.hpp"

#include <initializer_list>
#include <random>

namespace vicert::test {

inline Matrix mat(int rows, int cols, std::initializer_list<double> values) {
  Matrix a(rows, cols);
  auto it = values.begin();
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = *it++;
  return a;
}

inline Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

inline Matrix example_a() { return mat(2, 2, {1, 2, 3, 1}); }

inline VIProblem affine_problem(const Matrix& a, BoxSet k, Vector b = {}) {
  if (b.size() == 0) b = Vector::Zero(a.rows());
  return VIProblem(Mapping::Affine(a, b), std::move(k), "test");
}

inline VIProblem builtin_problem(const char* id, BoxSet k) {
  const int m = k.dim();
  return VIProblem(builtin_mapping(id, m), std::move(k), id);
}

inline Vector uniform_vector(std::mt19937_64& rng, int m, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(m);
  for (int i = 0; i < m; ++i) v[i] = u(rng);
  return v;
}

// Central differences of g at v, step h.
template <typename G>
Matrix numeric_jacobian(G g, const Vector& v, double h = 1e-6) {
  const int m = static_cast<int>(v.size());
  Matrix j(m, m);
  for (int c = 0; c < m; ++c) {
    Vector vp = v, vm = v;
    vp[c] += h;
    vm[c] -= h;
    j.col(c) = (g(vp) - g(vm)) / (vp[c] - vm[c]);
  }
  return j;
}

}  // namespace vicert::test
