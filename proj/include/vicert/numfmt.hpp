#pragma once

// Shortest round-trip text for doubles; used by every text format so that
// written values parse back bit-exactly.

#include <Eigen/Dense>

#include <charconv>
#include <cmath>
#include <string>
#include <vector>

namespace vicert {

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, end);
}

template <typename Range>
std::string format_list(const Range& values) {
  std::string s = "[";
  bool first = true;
  for (double v : values) {
    if (!first) s += ", ";
    s += format_number(v);
    first = false;
  }
  return s + "]";
}

inline std::string format_vector(const Eigen::VectorXd& v) {
  return format_list(std::vector<double>(v.data(), v.data() + v.size()));
}

inline std::string format_matrix(const Eigen::MatrixXd& a) {
  std::string s = "[";
  for (int i = 0; i < a.rows(); ++i) {
    if (i) s += ", ";
    Eigen::VectorXd row = a.row(i).transpose();
    s += format_vector(row);
  }
  return s + "]";
}

}  // namespace vicert
