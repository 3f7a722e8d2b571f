#include "vicert/registry.hpp"

#include <limits>

namespace vicert {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Matrix mat(int rows, int cols, std::initializer_list<double> values) {
  Matrix a(rows, cols);
  auto it = values.begin();
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = *it++;
  }
  return a;
}

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

ProblemSpec game_spec(std::string name, QuadraticGame game) {
  BoxSet set = game.joint_set();
  return {std::move(name), std::move(set), std::move(game)};
}

ProblemSpec builtin_spec(std::string name, std::string id, BoxSet set) {
  return {std::move(name), std::move(set), BuiltinSpec{std::move(id)}};
}

QuadraticGame upsilon_game() {
  const Matrix two = 2.0 * Matrix::Identity(2, 2);
  const Matrix nil = mat(2, 2, {0, 1, 0, 0});
  return QuadraticGame({2, 2}, {{two, nil}, {nil, two}}, {vec({1, -1}), vec({0.5, 0})},
                       {BoxSet::Uniform(2, -1, 1), BoxSet::Uniform(2, -1, 1)});
}

QuadraticGame degenerate_game() {
  return QuadraticGame::Unconstrained({1, 1}, {{mat(1, 1, {0}), mat(1, 1, {1})},
                                               {mat(1, 1, {1}), mat(1, 1, {1})}},
                                      {vec({0}), vec({0})});
}

std::vector<ProblemRegistryEntry> build_registry() {
  using V = Verdict;
  std::vector<ProblemRegistryEntry> r;
  r.push_back({"example-vi",
               "non-monotone affine VI on R^2, F(x) = (x1 + 2 x2, 3 x1 + x2)",
               example_vi_spec(),
               vec({0, 0}),
               {{"pmatrix", V::kFail},
                {"uniform-pmatrix", V::kFail},
                {"sigma-sweep", V::kPass},
                {"pfunction", V::kFail},
                {"growth", V::kPass},
                {"maximal-rank", V::kPass},
                {"coercivity", V::kPass}}});
  r.push_back({"example-game",
               "two-player quadratic game whose gradient map is the example-vi mapping",
               game_spec("example-game", example_game()),
               vec({0, 0}),
               {{"pmatrix", V::kFail},
                {"pfunction", V::kFail},
                {"block-pfunction", V::kFail},
                {"upsilon", V::kFail},
                {"coercivity", V::kPass},
                {"pl", V::kPass},
                {"block-convexity", V::kPass}}});
  r.push_back({"identity-box", "F(x) = x on [1, 2]^3; solution at the lower corner",
               builtin_spec("identity-box", "identity", BoxSet::Uniform(3, 1, 2)),
               vec({1, 1, 1}),
               {{"pmatrix", V::kPass},
                {"uniform-pmatrix", V::kPass},
                {"sigma-sweep", V::kPass},
                {"pfunction", V::kPass},
                {"maximal-rank", V::kPass},
                {"coercivity", V::kPass}}});
  r.push_back({"constant-box", "F(x) = (1, 1, 1) on [0, 1]^3; solution at the origin",
               builtin_spec("constant-box", "constant-one", BoxSet::Uniform(3, 0, 1)),
               vec({0, 0, 0}),
               {{"sigma-sweep", V::kFail},
                {"pfunction", V::kFail},
                {"maximal-rank", V::kFail},
                {"coercivity", V::kPass}}});
  r.push_back({"cubic-box", "F_i(x) = x_i^3 on [0.5, 2]^2",
               builtin_spec("cubic-box", "cubic", BoxSet::Uniform(2, 0.5, 2)),
               vec({0.5, 0.5}),
               {{"pmatrix", V::kPass}, {"coercivity", V::kPass}}});
  r.push_back({"coupled-cubic-box", "F_i(x) = x_i^3 + x_i - x_{i+1}/2 on [-1, 2]^3",
               builtin_spec("coupled-cubic-box", "coupled-cubic", BoxSet::Uniform(3, -1, 2)),
               vec({0, 0, 0}),
               {{"pmatrix", V::kPass}, {"coercivity", V::kPass}}});
  {
    ProblemSpec spec{"spd-affine-box",
                     BoxSet(vec({0, -1, 0}), vec({1, 1, kInf})),
                     AffineSpec{mat(3, 3, {4, 1, 0, 1, 3, 1, 0, 1, 2}), vec({-1, 2, -3})}};
    r.push_back({"spd-affine-box",
                 "strongly monotone affine VI on [0,1] x [-1,1] x [0,inf)",
                 std::move(spec),
                 vec({0.5, -1, 2}),
                 {{"pmatrix", V::kPass},
                  {"uniform-pmatrix", V::kPass},
                  {"pfunction", V::kPass},
                  {"coercivity", V::kPass}}});
  }
  r.push_back({"upsilon-game",
               "two players in [-1,1]^2 each; own blocks 2I, nilpotent coupling",
               game_spec("upsilon-game", upsilon_game()),
               vec({-0.5, 0.5, -0.5, 0}),
               {{"upsilon", V::kPass}, {"block-convexity", V::kPass}}});
  r.push_back({"degenerate-game", "player 1 has a zero own-cost Hessian",
               game_spec("degenerate-game", degenerate_game()),
               vec({0, 0}),
               {{"block-convexity", V::kFail}, {"pl", V::kInconclusive}}});
  return r;
}

}  // namespace

ProblemSpec example_vi_spec() {
  return {"example-vi", BoxSet::FullSpace(2), AffineSpec{mat(2, 2, {1, 2, 3, 1}), vec({0, 0})}};
}

QuadraticGame example_game() {
  return QuadraticGame::Unconstrained({1, 1}, {{mat(1, 1, {1}), mat(1, 1, {2})},
                                               {mat(1, 1, {3}), mat(1, 1, {1})}},
                                      {vec({0}), vec({0})});
}

const std::vector<ProblemRegistryEntry>& problem_registry() {
  static const std::vector<ProblemRegistryEntry> registry = build_registry();
  return registry;
}

const ProblemRegistryEntry* find_problem(const std::string& id) {
  for (const auto& e : problem_registry()) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

}  // namespace vicert
