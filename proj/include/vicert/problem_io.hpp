#pragma once

// Problem files: line-oriented `key = value` text.
//
//   # comment
//   name = example-vi
//   m = 2
//   set.lo = [-inf, -inf]        # optional, default -inf
//   set.hi = [inf, inf]          # optional, default +inf
//   mapping.kind = affine        # affine | game | builtin
//   affine.A = [1, 2, 3, 1]      # row-major m*m
//   affine.b = [0, 0]            # optional, default 0
//   builtin.id = cubic           # see builtin_mapping_ids()
//   game.players = 2
//   game.blocks = [1, 1]         # player block sizes, sum m
//   game.Q.1.1 = [1]             # row-major n_i*n_j; missing blocks are 0
//   game.c.1 = [0]               # optional, default 0
//
// For games the player action boxes are the matching slices of set.lo and
// set.hi. Numbers are written in shortest round-trip form, so writing and
// re-reading a problem is bit-exact.

#include "vicert/core_model.hpp"

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace vicert {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// One `key = value` line, with the enclosing `[section]` if any.
struct KeyValue {
  int line = 0;
  std::string section;
  std::string key;
  std::string value;
};

// Blank lines and `#` comments are skipped.
std::vector<KeyValue> read_key_values(std::istream& in, const std::string& source);

double parse_number(const std::string& text, const std::string& source, int line);
std::vector<double> parse_number_list(const std::string& text, const std::string& source,
                                      int line);

struct AffineSpec {
  Matrix a;
  Vector b;
};

struct BuiltinSpec {
  std::string id;
};

struct ProblemSpec {
  std::string name;
  BoxSet set;
  std::variant<AffineSpec, QuadraticGame, BuiltinSpec> mapping;

  VIProblem build(std::string provenance) const;
  const QuadraticGame* game() const { return std::get_if<QuadraticGame>(&mapping); }
};

ProblemSpec parse_problem(std::istream& in, const std::string& source);
ProblemSpec load_problem_file(const std::string& path);
void write_problem(std::ostream& out, const ProblemSpec& spec);

}  // namespace vicert
