#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vpart/chambers.hpp"
#include "vpart/presets.hpp"

namespace vpart {

using Json = nlohmann::json;

namespace detail {

inline BigInt json_to_bigint(const Json& v) {
  if (v.is_number_integer()) return BigInt(v.dump());
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  fail(ErrorCode::InvalidInput, "expected an integer, got " + v.dump());
}

/// Big integers go out as JSON numbers when they fit in 64 bits, as strings otherwise.
inline Json bigint_to_json(const BigInt& z) {
  if (fits_int64(z)) return Json(static_cast<std::int64_t>(z.get_si()));
  return Json(z.get_str());
}

}  // namespace detail

/// Parses {"rows": d, "cols": n, "data": [[...], ...]}.
inline IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("data")) fail(ErrorCode::InvalidInput, "matrix JSON needs a 'data' array");
  const Json& data = j.at("data");
  if (!data.is_array() || data.empty()) fail(ErrorCode::InvalidInput, "'data' must be a non-empty array");
  const std::size_t d = data.size();
  if (!data[0].is_array() || data[0].empty()) fail(ErrorCode::InvalidInput, "matrix rows must be non-empty arrays");
  const std::size_t n = data[0].size();
  if (j.contains("rows") && j.at("rows") != d) fail(ErrorCode::InvalidInput, "'rows' does not match data");
  if (j.contains("cols") && j.at("cols") != n) fail(ErrorCode::InvalidInput, "'cols' does not match data");
  IntMatrix m(d, n);
  for (std::size_t i = 0; i < d; ++i) {
    if (!data[i].is_array() || data[i].size() != n) fail(ErrorCode::InvalidInput, "ragged matrix rows");
    for (std::size_t c = 0; c < n; ++c) m(i, c) = detail::json_to_bigint(data[i][c]);
  }
  return m;
}

inline Json matrix_to_json(const IntMatrix& m) {
  Json data = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(detail::bigint_to_json(m(i, c)));
    data.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

inline IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open matrix file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    fail(ErrorCode::InvalidInput, std::string("malformed matrix JSON: ") + e.what());
  }
  return matrix_from_json(j);
}

/// Comma-separated integers, e.g. "1,3,-2".
inline std::vector<BigInt> parse_csv_integers(const std::string& text) {
  std::vector<BigInt> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) fail(ErrorCode::InvalidInput, "empty entry in '" + text + "'");
    std::string tok = item.substr(b, e - b + 1);
    if (!tok.empty() && tok[0] == '+') tok.erase(0, 1);
    out.push_back(parse_bigint(tok));
  }
  if (out.empty()) fail(ErrorCode::InvalidInput, "no integers in '" + text + "'");
  return out;
}

inline Json basis_to_json(const ColumnBasis& sigma) {
  Json a = Json::array();
  for (auto i : sigma) a.push_back(i + 1);
  return a;
}

inline Json vector_to_json(const std::vector<BigInt>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(detail::bigint_to_json(x));
  return a;
}

/// Chamber export: 1-based signature, representative, inequality normals.
inline Json chamber_to_json(const Chamber& c) {
  Json sig = Json::array();
  for (const auto& s : c.signature) sig.push_back(basis_to_json(s));
  Json ineq = Json::array();
  for (const auto& h : c.inequalities) ineq.push_back(vector_to_json(h));
  return Json{{"signature", sig}, {"representative", vector_to_json(c.representative)}, {"inequalities", ineq}};
}

inline Chamber chamber_from_json(const Json& j) {
  Chamber c;
  for (const auto& s : j.at("signature")) {
    ColumnBasis sigma;
    for (const auto& i : s) {
      const auto v = i.get<long>();
      if (v < 1) fail(ErrorCode::InvalidInput, "basis indices are 1-based");
      sigma.push_back(static_cast<std::size_t>(v - 1));
    }
    std::sort(sigma.begin(), sigma.end());
    c.signature.push_back(sigma);
  }
  std::sort(c.signature.begin(), c.signature.end());
  for (const auto& x : j.at("representative")) c.representative.push_back(detail::json_to_bigint(x));
  for (const auto& h : j.at("inequalities")) {
    std::vector<BigInt> v;
    for (const auto& x : h) v.push_back(detail::json_to_bigint(x));
    c.inequalities.push_back(std::move(v));
  }
  return c;
}

/// "min{b1, b2+b3, -b1-b3} >= 0" style rendering of chamber inequalities.
inline std::string inequalities_text(const Chamber& c) {
  std::vector<std::string> parts;
  for (const auto& h : c.inequalities) {
    std::vector<Rational> q(h.begin(), h.end());
    parts.push_back(MultiPoly::linear(q).to_string());
  }
  std::string out = "min{";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + "} >= 0";
}

}  // namespace vpart
