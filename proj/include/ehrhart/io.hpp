#pragma once

// Polytope documents and JSON encodings of results.
//
// Text format:
//   # comment
//   dim 4
//   name example6_P1        (optional)
//   0 0 0 0
//   1 1 1 1
//   ...
// Coordinates are arbitrary-precision integers separated by whitespace,
// commas or parentheses, so "(1,2,3,4)" is accepted too. A JSON object
// {"dim": 4, "vertices": [[0,0,0,0], ...], "name": "..."} is accepted
// interchangeably; coordinates there may be numbers or decimal strings.

#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ehrhart/ehrhart.hpp"
#include "ehrhart/equidecomposition.hpp"
#include "ehrhart/equivalence.hpp"
#include "ehrhart/errors.hpp"
#include "ehrhart/exact.hpp"
#include "ehrhart/polytope.hpp"
#include "json.hpp"

namespace ehrhart {

using json = nlohmann::json;

struct PolytopeDocument {
  std::size_t dim = 0;
  std::vector<Point> vertices;
  std::string name;
};

namespace detail {

inline bool parse_integer(const std::string& token, BigInt& out) {
  std::size_t start = (token[0] == '-' || token[0] == '+') ? 1 : 0;
  if (start == token.size()) return false;
  for (std::size_t i = start; i < token.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(token[i]))) return false;
  return out.set_str(token[0] == '+' ? token.substr(1) : token, 10) == 0;
}

inline std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (std::isspace(static_cast<unsigned char>(ch)) || ch == ',' || ch == '(' || ch == ')') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline BigInt json_integer(const json& v, std::size_t field, const char* what) {
  BigInt out;
  if (v.is_number_integer()) {
    out = v.is_number_unsigned() ? BigInt(std::to_string(v.get<unsigned long long>()))
                                 : BigInt(std::to_string(v.get<long long>()));
    return out;
  }
  if (v.is_string() && !v.get<std::string>().empty() && parse_integer(v.get<std::string>(), out)) return out;
  throw ParseError(0, field, std::string(what) + " must be an integer (or a decimal string)");
}

inline PolytopeDocument parse_json_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(0, 0, std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError(0, 0, "JSON document must be an object");
  PolytopeDocument doc;
  if (!j.contains("dim")) throw ParseError(0, 0, "missing \"dim\"");
  const BigInt dim = json_integer(j["dim"], 0, "dim");
  if (dim < 1 || dim > 64) throw ParseError(0, 0, "dim must be between 1 and 64");
  doc.dim = dim.get_ui();
  if (!j.contains("vertices") || !j["vertices"].is_array()) throw ParseError(0, 0, "missing \"vertices\" array");
  std::size_t row = 0;
  for (const auto& v : j["vertices"]) {
    ++row;
    if (!v.is_array() || v.size() != doc.dim)
      throw ParseError(row, 0, "vertex must be an array of " + std::to_string(doc.dim) + " integers");
    Point p;
    for (std::size_t i = 0; i < v.size(); ++i) p.push_back(json_integer(v[i], i + 1, "coordinate"));
    doc.vertices.push_back(std::move(p));
  }
  if (j.contains("name") && j["name"].is_string()) doc.name = j["name"].get<std::string>();
  return doc;
}

}  // namespace detail

inline PolytopeDocument parse_document(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return detail::parse_json_document(text);

  PolytopeDocument doc;
  bool have_dim = false;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    if (!have_dim) {
      BigInt dim;
      if (fields[0] != "dim") throw ParseError(lineno, 1, "expected \"dim <n>\" header");
      if (fields.size() != 2 || !detail::parse_integer(fields[1], dim) || dim < 1 || dim > 64)
        throw ParseError(lineno, 2, "dimension must be an integer between 1 and 64");
      doc.dim = dim.get_ui();
      have_dim = true;
      continue;
    }
    if (fields[0] == "name") {
      const auto pos = line.find("name") + 4;
      const auto start = line.find_first_not_of(" \t", pos);
      const auto end = line.find_last_not_of(" \t\r");
      doc.name = start == std::string::npos ? "" : line.substr(start, end - start + 1);
      continue;
    }
    if (fields.size() != doc.dim)
      throw ParseError(lineno, 0,
                       "vertex has " + std::to_string(fields.size()) + " coordinates, expected " +
                           std::to_string(doc.dim));
    Point p(doc.dim);
    for (std::size_t i = 0; i < fields.size(); ++i)
      if (!detail::parse_integer(fields[i], p[i]))
        throw ParseError(lineno, i + 1, "\"" + fields[i] + "\" is not an integer");
    doc.vertices.push_back(std::move(p));
  }
  if (!have_dim) throw ParseError(lineno, 0, "empty document (missing \"dim <n>\" header)");
  return doc;
}

inline PolytopeDocument read_document(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, 0, "cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  auto doc = parse_document(ss.str());
  if (doc.name.empty()) doc.name = path;
  return doc;
}

inline LatticePolytope to_polytope(const PolytopeDocument& doc) { return make_polytope(doc.dim, doc.vertices); }

inline PolytopeDocument to_document(const LatticePolytope& p, std::string name = {}) {
  return PolytopeDocument{p.dim(), p.vertices(), std::move(name)};
}

/// Vertices are written in sorted order.
inline std::string emit_document(const PolytopeDocument& doc) {
  std::string out = "dim " + std::to_string(doc.dim) + "\n";
  if (!doc.name.empty()) out += "name " + doc.name + "\n";
  auto sorted = doc.vertices;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& v : sorted) {
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? " " : "") + to_string(v[i]);
    out += "\n";
  }
  return out;
}

// JSON encodings. Integers and fractions are strings so precision is never lost.

inline json to_json(const Point& p) {
  json a = json::array();
  for (const auto& c : p) a.push_back(to_string(c));
  return a;
}

template <typename T>
json to_json(const Matrix<T>& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json to_json(const EhrhartPolynomial& l) {
  json coeffs = json::array();
  for (const auto& c : l.coefficients()) coeffs.push_back(to_string(c));
  return {{"coefficients", coeffs}, {"text", to_string(l)}};
}

inline json to_json(const EquivalenceWitness& w) {
  return {{"linear", to_json(w.map.linear())},
          {"translation", to_json(w.map.translation())},
          {"vertex_bijection", w.vertex_bijection},
          {"certificate", to_json(w.certificate)}};
}

inline json to_json(const LatticeSimplex& s) {
  json v = json::array();
  for (const auto& p : s.vertices()) v.push_back(to_json(p));
  return v;
}

inline json to_json(const MatchingWitness& m) {
  json pairs = json::array();
  for (std::size_t i = 0; i < m.pairing.size(); ++i)
    pairs.push_back({{"left_cell", to_json(m.left.cells[i])},
                     {"right_cell", to_json(m.right.cells[m.pairing[i]])},
                     {"witness", to_json(m.witnesses[i])}});
  return pairs;
}

namespace detail {

inline BigInt big_from_json(const json& v) {
  BigInt out;
  if (!v.is_string() || v.get<std::string>().empty() || !parse_integer(v.get<std::string>(), out))
    throw ParseError(0, 0, "expected an integer string");
  return out;
}

inline IntegerMatrix matrix_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty() || !rows[0].is_array()) throw ParseError(0, 0, "expected a matrix");
  IntegerMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols()) throw ParseError(r + 1, 0, "ragged matrix");
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = big_from_json(rows[r][c]);
  }
  return m;
}

}  // namespace detail

inline EquivalenceWitness witness_from_json(const json& j) {
  Point t;
  for (const auto& c : j.at("translation")) t.push_back(detail::big_from_json(c));
  AffineUnimodularMap map(detail::matrix_from_json(j.at("linear")), std::move(t));
  return EquivalenceWitness{std::move(map), j.at("vertex_bijection").get<std::vector<std::size_t>>(),
                            detail::matrix_from_json(j.at("certificate"))};
}

}  // namespace ehrhart
