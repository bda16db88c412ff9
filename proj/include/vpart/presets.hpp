#pragma once

#include <string>
#include <vector>

#include "vpart/matrix_core.hpp"

namespace vpart {

/// Node-edge incidence of K_{m,n}. Cell (i, j) is column j*m + i; rows 0..m-1
/// hold row sums and rows m..m+n-1 hold column sums.
inline IntMatrix contingency_matrix(std::size_t m, std::size_t n) {
  if (m < 2 || n < 2) fail(ErrorCode::InvalidInput, "contingency tables need m, n >= 2");
  IntMatrix a(m + n, m * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < m; ++i) {
      a(i, j * m + i) = 1;
      a(m + j, j * m + i) = 1;
    }
  return a;
}

/// Columns e_i - e_j for i < j in lexicographic order.
inline IntMatrix kostant_matrix(std::size_t n) {
  if (n < 2) fail(ErrorCode::InvalidInput, "kostant matrices need n >= 2");
  IntMatrix a(n, n * (n - 1) / 2);
  std::size_t c = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j, ++c) {
      a(i, c) = 1;
      a(j, c) = -1;
    }
  return a;
}

inline IntMatrix example_3x5() {
  return make_int_matrix({{1, 0, 0, 1, 1}, {0, 1, 0, 1, 0}, {0, 0, 1, 0, 1}});
}

inline IntMatrix example_3x6() {
  return make_int_matrix({{1, 1, 1, 0, 0, 0}, {-1, 0, 0, 1, 1, 0}, {0, -1, 0, -1, 0, 1}});
}

inline IntMatrix identity_matrix(std::size_t n) {
  if (n < 1) fail(ErrorCode::InvalidInput, "identity needs n >= 1");
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = 1;
  return a;
}

/// Right-hand side (r, c) for contingency tables with the given margins.
inline std::vector<BigInt> margins_to_rhs(const std::vector<BigInt>& rows, const std::vector<BigInt>& cols) {
  BigInt sr = 0, sc = 0;
  for (const auto& x : rows) {
    if (x < 0) fail(ErrorCode::InvalidInput, "margins must be nonnegative");
    sr += x;
  }
  for (const auto& x : cols) {
    if (x < 0) fail(ErrorCode::InvalidInput, "margins must be nonnegative");
    sc += x;
  }
  if (sr != sc)
    fail(ErrorCode::MarginMismatch, "row sums total " + sr.get_str() + " but column sums total " + sc.get_str());
  std::vector<BigInt> b = rows;
  b.insert(b.end(), cols.begin(), cols.end());
  return b;
}

/// Checks that b is a nonnegative combination of positive roots: total zero and
/// every partial sum b_1 + ... + b_i nonnegative.
inline void check_kostant_weight(const std::vector<BigInt>& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    s += b[i];
    if (s < 0 && i + 1 < b.size())
      fail(ErrorCode::NotInCone, "partial sum b1+...+b" + std::to_string(i + 1) + " = " + s.get_str() + " is negative");
  }
  if (s != 0) fail(ErrorCode::NotInCone, "entries must sum to zero, got " + s.get_str());
}

struct PresetSpec {
  std::string name;
  IntMatrix matrix;
};

/// Parses names such as "contingency:4x5", "kostant:5", "example:3x5", "identity:3".
inline PresetSpec make_preset(const std::string& name) {
  const auto colon = name.find(':');
  if (colon == std::string::npos) fail(ErrorCode::InvalidInput, "preset must look like family:args, got '" + name + "'");
  const std::string family = name.substr(0, colon), arg = name.substr(colon + 1);
  auto parse_size = [&](const std::string& s) -> std::size_t {
    if (s.empty() || s.size() > 4 || s.find_first_not_of("0123456789") != std::string::npos)
      fail(ErrorCode::InvalidInput, "bad preset size '" + s + "'");
    return std::stoul(s);
  };
  auto parse_dims = [&](const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) fail(ErrorCode::InvalidInput, "expected MxN in preset '" + name + "'");
    return std::pair{parse_size(s.substr(0, x)), parse_size(s.substr(x + 1))};
  };
  if (family == "contingency") {
    auto [m, n] = parse_dims(arg);
    return {name, contingency_matrix(m, n)};
  }
  if (family == "kostant") return {name, kostant_matrix(parse_size(arg))};
  if (family == "identity") return {name, identity_matrix(parse_size(arg))};
  if (family == "example") {
    if (arg == "3x5") return {name, example_3x5()};
    if (arg == "3x6") return {name, example_3x6()};
  }
  fail(ErrorCode::InvalidInput, "unknown preset '" + name + "'");
}

}  // namespace vpart
