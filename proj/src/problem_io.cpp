#include "vicert/problem_io.hpp"

#include "vicert/numfmt.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

namespace vicert {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

ParseError::ParseError(const std::string& source, int line, const std::string& message)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

std::vector<KeyValue> read_key_values(std::istream& in, const std::string& source) {
  std::vector<KeyValue> out;
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string text = raw;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    text = trim(text);
    if (text.empty()) continue;
    if (text.front() == '[' && text.back() == ']' && text.find('=') == std::string::npos) {
      section = trim(text.substr(1, text.size() - 2));
      if (section.empty()) throw ParseError(source, line, "empty section name");
      continue;
    }
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError(source, line, "expected 'key = value', got '" + text + "'");
    }
    KeyValue kv{line, section, trim(text.substr(0, eq)), trim(text.substr(eq + 1))};
    if (kv.key.empty()) throw ParseError(source, line, "missing key before '='");
    out.push_back(std::move(kv));
  }
  return out;
}

double parse_number(const std::string& text, const std::string& source, int line) {
  const std::string t = trim(text);
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  // from_chars does not accept a leading '+'.
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || t.empty()) {
    throw ParseError(source, line, "'" + t + "' is not a number");
  }
  return value;
}

std::vector<double> parse_number_list(const std::string& text, const std::string& source,
                                      int line) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']') {
    throw ParseError(source, line, "expected a bracketed list like [1, 2]");
  }
  std::vector<double> out;
  const std::string body = trim(t.substr(1, t.size() - 2));
  if (body.empty()) return out;
  size_t start = 0;
  while (true) {
    const auto comma = body.find(',', start);
    out.push_back(parse_number(body.substr(start, comma - start), source, line));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

VIProblem ProblemSpec::build(std::string provenance) const {
  if (const auto* affine = std::get_if<AffineSpec>(&mapping)) {
    return VIProblem(Mapping::Affine(affine->a, affine->b), set, std::move(provenance));
  }
  if (const auto* game = std::get_if<QuadraticGame>(&mapping)) {
    return game_to_vi(*game, std::move(provenance));
  }
  const auto& builtin = std::get<BuiltinSpec>(mapping);
  return VIProblem(builtin_mapping(builtin.id, set.dim()), set, std::move(provenance));
}

namespace {

class Fields {
 public:
  Fields(std::vector<KeyValue> kvs, std::string source) : source_(std::move(source)) {
    for (auto& kv : kvs) {
      if (!kv.section.empty()) {
        throw ParseError(source_, kv.line, "sections are not allowed in problem files");
      }
      if (by_key_.count(kv.key)) {
        throw ParseError(source_, kv.line, "duplicate key '" + kv.key + "'");
      }
      by_key_.emplace(kv.key, kv);
    }
  }

  const KeyValue* find(const std::string& key) {
    auto it = by_key_.find(key);
    if (it == by_key_.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  const KeyValue& require(const std::string& key) {
    if (const KeyValue* kv = find(key)) return *kv;
    throw ParseError(source_, last_line(), "missing required key '" + key + "'");
  }

  int integer(const KeyValue& kv) {
    const double v = parse_number(kv.value, source_, kv.line);
    if (v != static_cast<int>(v)) {
      throw ParseError(source_, kv.line, "'" + kv.key + "' must be an integer");
    }
    return static_cast<int>(v);
  }

  std::vector<double> list(const KeyValue& kv, size_t expected) {
    auto v = parse_number_list(kv.value, source_, kv.line);
    if (v.size() != expected) {
      throw ParseError(source_, kv.line,
                       "'" + kv.key + "' needs " + std::to_string(expected) + " entries, got " +
                           std::to_string(v.size()));
    }
    return v;
  }

  void reject_unused() const {
    for (const auto& [key, kv] : by_key_) {
      if (!used_.count(key)) throw ParseError(source_, kv.line, "unknown key '" + key + "'");
    }
  }

  int last_line() const {
    int line = 0;
    for (const auto& [key, kv] : by_key_) line = std::max(line, kv.line);
    return std::max(line, 1);
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, KeyValue> by_key_;
  std::set<std::string> used_;
};

Vector to_vector(const std::vector<double>& v) {
  return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Matrix to_matrix(const std::vector<double>& v, int rows, int cols) {
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) a(i, j) = v[i * cols + j];
  }
  return a;
}

}  // namespace

ProblemSpec parse_problem(std::istream& in, const std::string& source) {
  Fields f(read_key_values(in, source), source);
  const KeyValue& name_kv = f.require("name");
  const KeyValue& m_kv = f.require("m");
  const int m = f.integer(m_kv);
  if (m <= 0) throw ParseError(source, m_kv.line, "m must be positive");

  Vector lo = Vector::Constant(m, -std::numeric_limits<double>::infinity());
  Vector hi = Vector::Constant(m, std::numeric_limits<double>::infinity());
  int set_line = m_kv.line;
  if (const KeyValue* kv = f.find("set.lo")) {
    lo = to_vector(f.list(*kv, m));
    set_line = kv->line;
  }
  if (const KeyValue* kv = f.find("set.hi")) {
    hi = to_vector(f.list(*kv, m));
    set_line = std::max(set_line, kv->line);
  }

  const KeyValue& kind_kv = f.require("mapping.kind");
  try {
    BoxSet set(lo, hi);
    if (kind_kv.value == "affine") {
      const KeyValue& a_kv = f.require("affine.A");
      AffineSpec spec{to_matrix(f.list(a_kv, static_cast<size_t>(m) * m), m, m),
                      Vector::Zero(m)};
      if (const KeyValue* kv = f.find("affine.b")) spec.b = to_vector(f.list(*kv, m));
      f.reject_unused();
      return {name_kv.value, set, spec};
    }
    if (kind_kv.value == "builtin") {
      const KeyValue& id_kv = f.require("builtin.id");
      f.reject_unused();
      try {
        builtin_mapping(id_kv.value, m);
      } catch (const ConfigurationError& e) {
        throw ParseError(source, id_kv.line, e.what());
      }
      return {name_kv.value, set, BuiltinSpec{id_kv.value}};
    }
    if (kind_kv.value == "game") {
      const KeyValue& n_kv = f.require("game.players");
      const int players = f.integer(n_kv);
      if (players <= 0) throw ParseError(source, n_kv.line, "game.players must be positive");
      const KeyValue& b_kv = f.require("game.blocks");
      std::vector<int> blocks;
      for (double b : f.list(b_kv, players)) {
        if (b != static_cast<int>(b) || b <= 0) {
          throw ParseError(source, b_kv.line, "block sizes must be positive integers");
        }
        blocks.push_back(static_cast<int>(b));
      }
      int total = 0;
      for (int b : blocks) total += b;
      if (total != m) throw ParseError(source, b_kv.line, "game.blocks must sum to m");

      std::vector<std::vector<Matrix>> q(players, std::vector<Matrix>(players));
      std::vector<Vector> c(players);
      std::vector<BoxSet> sets;
      int offset = 0;
      for (int i = 0; i < players; ++i) {
        for (int j = 0; j < players; ++j) {
          const std::string key =
              "game.Q." + std::to_string(i + 1) + "." + std::to_string(j + 1);
          if (const KeyValue* kv = f.find(key)) {
            q[i][j] = to_matrix(f.list(*kv, static_cast<size_t>(blocks[i]) * blocks[j]),
                                blocks[i], blocks[j]);
          } else {
            q[i][j] = Matrix::Zero(blocks[i], blocks[j]);
          }
        }
        c[i] = Vector::Zero(blocks[i]);
        if (const KeyValue* kv = f.find("game.c." + std::to_string(i + 1))) {
          c[i] = to_vector(f.list(*kv, blocks[i]));
        }
        sets.emplace_back(lo.segment(offset, blocks[i]), hi.segment(offset, blocks[i]));
        offset += blocks[i];
      }
      f.reject_unused();
      try {
        return {name_kv.value, set.with_blocks(blocks),
                QuadraticGame(blocks, std::move(q), std::move(c), std::move(sets))};
      } catch (const ConfigurationError& e) {
        throw ParseError(source, n_kv.line, e.what());
      }
    }
  } catch (const ConfigurationError& e) {
    throw ParseError(source, set_line, e.what());
  }
  throw ParseError(source, kind_kv.line,
                   "mapping.kind must be affine, game or builtin, got '" + kind_kv.value + "'");
}

ProblemSpec load_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open problem file");
  return parse_problem(in, path);
}

void write_problem(std::ostream& out, const ProblemSpec& spec) {
  const int m = spec.set.dim();
  out << "name = " << spec.name << "\n";
  out << "m = " << m << "\n";
  out << "set.lo = " << format_vector(spec.set.lo()) << "\n";
  out << "set.hi = " << format_vector(spec.set.hi()) << "\n";
  auto row_major = [](const Matrix& a) {
    std::vector<double> v;
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) v.push_back(a(i, j));
    }
    return format_list(v);
  };
  if (const auto* affine = std::get_if<AffineSpec>(&spec.mapping)) {
    out << "mapping.kind = affine\n";
    out << "affine.A = " << row_major(affine->a) << "\n";
    out << "affine.b = " << format_vector(affine->b) << "\n";
  } else if (const auto* game = spec.game()) {
    out << "mapping.kind = game\n";
    out << "game.players = " << game->players() << "\n";
    std::vector<double> blocks(game->block_sizes().begin(), game->block_sizes().end());
    out << "game.blocks = " << format_list(blocks) << "\n";
    for (int i = 0; i < game->players(); ++i) {
      for (int j = 0; j < game->players(); ++j) {
        out << "game.Q." << i + 1 << "." << j + 1 << " = " << row_major(game->q(i, j)) << "\n";
      }
      out << "game.c." << i + 1 << " = " << format_vector(game->c(i)) << "\n";
    }
  } else {
    out << "mapping.kind = builtin\n";
    out << "builtin.id = " << std::get<BuiltinSpec>(spec.mapping).id << "\n";
  }
}

}  // namespace vicert
