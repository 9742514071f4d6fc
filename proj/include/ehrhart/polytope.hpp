#pragma once

// Integral V-polytopes, simplices, definition matrices and affine-unimodular
// maps, plus the dilation and pyramid constructions.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "ehrhart/errors.hpp"
#include "ehrhart/exact.hpp"
#include "ehrhart/geometry.hpp"

namespace ehrhart {

class LatticePolytope;
LatticePolytope make_polytope(std::size_t dim, std::vector<Point> points);

/// Full-dimensional integral polytope stored by its irredundant vertex list.
/// Vertex order is kept as given; equality compares vertex sets.
class LatticePolytope {
 public:
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<Point>& vertices() const noexcept { return vertices_; }
  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  bool is_simplex() const noexcept { return vertices_.size() == dim_ + 1; }

  std::vector<Point> sorted_vertices() const {
    std::vector<Point> v = vertices_;
    std::sort(v.begin(), v.end());
    return v;
  }

  friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
    return a.dim_ == b.dim_ && a.sorted_vertices() == b.sorted_vertices();
  }

 private:
  friend LatticePolytope make_polytope(std::size_t, std::vector<Point>);
  friend class LatticeSimplex;
  friend class AffineUnimodularMap;
  friend LatticePolytope dilate(const LatticePolytope&, const BigInt&);

  LatticePolytope(std::size_t dim, std::vector<Point> vertices)
      : dim_(dim), vertices_(std::move(vertices)) {}

  std::size_t dim_ = 0;
  std::vector<Point> vertices_;
};

/// Validates a point list: duplicates collapse, points that are not vertices
/// of the hull are dropped, and a lower-dimensional hull is rejected.
inline LatticePolytope make_polytope(std::size_t dim, std::vector<Point> points) {
  if (dim == 0) throw DimensionError("dimension must be at least 1");
  for (const auto& p : points)
    if (p.size() != dim)
      throw DimensionError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                           std::to_string(dim));

  std::vector<Point> unique;
  for (auto& p : points)
    if (std::find(unique.begin(), unique.end(), p) == unique.end()) unique.push_back(std::move(p));

  if (unique.size() < dim + 1 || affine_rank(unique) < dim)
    throw DegeneracyError("points do not span R^" + std::to_string(dim) +
                          " (need " + std::to_string(dim + 1) + " affinely independent points)");
  if (unique.size() == dim + 1) return LatticePolytope(dim, std::move(unique));

  // A point is a vertex iff the facets through it pin it down uniquely.
  const auto facets = enumerate_facets(unique);
  std::vector<Point> vertices;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    std::vector<Point> normals;
    for (const auto& f : facets)
      if (std::binary_search(f.incident.begin(), f.incident.end(), i))
        normals.push_back(f.halfspace.normal);
    if (normals.size() < dim) continue;
    IntegerMatrix m(normals.size(), dim);
    for (std::size_t r = 0; r < normals.size(); ++r)
      for (std::size_t c = 0; c < dim; ++c) m(r, c) = normals[r][c];
    if (rank(m) == dim) vertices.push_back(unique[i]);
  }
  return LatticePolytope(dim, std::move(vertices));
}

/// Full-dimensional n-simplex; vertex order is significant for its
/// definition matrix.
class LatticeSimplex {
 public:
  explicit LatticeSimplex(const LatticePolytope& p) : poly_(p) {
    if (!p.is_simplex())
      throw PreconditionError("polytope has " + std::to_string(p.vertex_count()) +
                              " vertices; a " + std::to_string(p.dim()) + "-simplex needs " +
                              std::to_string(p.dim() + 1));
  }

  LatticeSimplex(std::size_t dim, std::vector<Point> vertices)
      : LatticeSimplex(checked(dim, std::move(vertices))) {}

  std::size_t dim() const noexcept { return poly_.dim(); }
  const std::vector<Point>& vertices() const noexcept { return poly_.vertices(); }
  const LatticePolytope& polytope() const noexcept { return poly_; }

  /// Columns are the vertices in stored order, with a final row of ones.
  IntegerMatrix definition_matrix() const {
    const std::size_t n = dim();
    IntegerMatrix d(n + 1, n + 1);
    for (std::size_t c = 0; c <= n; ++c) {
      for (std::size_t r = 0; r < n; ++r) d(r, c) = vertices()[c][r];
      d(n, c) = 1;
    }
    return d;
  }

  friend bool operator==(const LatticeSimplex& a, const LatticeSimplex& b) { return a.poly_ == b.poly_; }

 private:
  static LatticePolytope checked(std::size_t dim, std::vector<Point> vertices) {
    if (vertices.size() != dim + 1)
      throw PreconditionError("a " + std::to_string(dim) + "-simplex needs " +
                              std::to_string(dim + 1) + " vertices");
    for (const auto& v : vertices)
      if (v.size() != dim) throw DimensionError("vertex dimension mismatch");
    LatticePolytope p(dim, std::move(vertices));
    if (det(LatticeSimplex(p).definition_matrix()) == 0)
      throw DegeneracyError("simplex vertices are affinely dependent");
    return p;
  }

  LatticePolytope poly_;
};

inline IntegerMatrix definition_matrix(const LatticeSimplex& s) { return s.definition_matrix(); }

/// |det D_S|; the Euclidean volume times n!.
inline BigInt normalized_volume(const LatticeSimplex& s) { return abs(det(s.definition_matrix())); }

/// x -> A x + b with A an integer matrix of determinant +-1.
class AffineUnimodularMap {
 public:
  AffineUnimodularMap(IntegerMatrix linear, Point translation)
      : linear_(std::move(linear)), translation_(std::move(translation)) {
    if (!linear_.square() || linear_.rows() != translation_.size())
      throw DimensionError("affine map: linear part and translation disagree in dimension");
    if (abs(det(linear_)) != 1) throw PreconditionError("affine map: |det A| != 1");
  }

  static AffineUnimodularMap identity(std::size_t n) {
    return AffineUnimodularMap(IntegerMatrix::identity(n), Point(n, BigInt(0)));
  }

  std::size_t dim() const noexcept { return translation_.size(); }
  const IntegerMatrix& linear() const noexcept { return linear_; }
  const Point& translation() const noexcept { return translation_; }

  Point operator()(const Point& v) const {
    if (v.size() != dim()) throw DimensionError("affine map: point dimension mismatch");
    return matvec(linear_, v) + translation_;
  }

  /// Vertex order is preserved.
  LatticePolytope operator()(const LatticePolytope& p) const {
    if (p.dim() != dim()) throw DimensionError("affine map: polytope dimension mismatch");
    std::vector<Point> image;
    image.reserve(p.vertex_count());
    for (const auto& v : p.vertices()) image.push_back((*this)(v));
    return LatticePolytope(p.dim(), std::move(image));
  }

  LatticeSimplex operator()(const LatticeSimplex& s) const { return LatticeSimplex((*this)(s.polytope())); }

  /// (this ∘ inner)(x) = this(inner(x)).
  AffineUnimodularMap after(const AffineUnimodularMap& inner) const {
    return AffineUnimodularMap(matmul(linear_, inner.linear_),
                               matvec(linear_, inner.translation_) + translation_);
  }

  AffineUnimodularMap inverse() const {
    IntegerMatrix inv = to_integer(invert(linear_));
    Point t = matvec(inv, translation_);
    for (auto& c : t) c = -c;
    return AffineUnimodularMap(std::move(inv), std::move(t));
  }

  friend bool operator==(const AffineUnimodularMap&, const AffineUnimodularMap&) = default;

 private:
  IntegerMatrix linear_;
  Point translation_;
};

inline LatticePolytope apply_map(const AffineUnimodularMap& u, const LatticePolytope& p) { return u(p); }
inline LatticeSimplex apply_map(const AffineUnimodularMap& u, const LatticeSimplex& s) { return u(s); }

/// Every vertex multiplied by k >= 1.
inline LatticePolytope dilate(const LatticePolytope& p, const BigInt& k) {
  if (k < 1) throw PreconditionError("dilation factor must be a positive integer");
  std::vector<Point> v;
  v.reserve(p.vertex_count());
  for (const auto& x : p.vertices()) v.push_back(scaled(x, k));
  return LatticePolytope(p.dim(), std::move(v));
}

inline LatticeSimplex dilate(const LatticeSimplex& s, const BigInt& k) {
  return LatticeSimplex(dilate(s.polytope(), k));
}

/// Pyramid over a d-simplex in R^n: the zero-padded vertices followed by
/// the apexes e_{d+1}, ..., e_n.
inline LatticeSimplex pyramid_lift(const LatticeSimplex& s, std::size_t n) {
  const std::size_t d = s.dim();
  if (n <= d)
    throw PreconditionError("target dimension " + std::to_string(n) +
                            " must exceed the simplex dimension " + std::to_string(d));
  std::vector<Point> v;
  for (const auto& x : s.vertices()) {
    Point p = x;
    p.resize(n, BigInt(0));
    v.push_back(std::move(p));
  }
  for (std::size_t j = d; j < n; ++j) {
    Point e(n, BigInt(0));
    e[j] = 1;
    v.push_back(std::move(e));
  }
  return LatticeSimplex(n, std::move(v));
}

/// Extends U(v) = M v + b on R^d to R^n so that it carries
/// pyramid_lift(S, n) onto pyramid_lift(U(S), n): the linear part is
/// [[M, -b ... -b], [0, I]] and the translation is (b, 0, ..., 0), which
/// fixes every apex e_j.
inline AffineUnimodularMap lift_map(const AffineUnimodularMap& u, std::size_t n) {
  const std::size_t d = u.dim();
  if (n <= d) throw PreconditionError("lift_map: target dimension must exceed source dimension");
  IntegerMatrix a = IntegerMatrix::identity(n);
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) a(r, c) = u.linear()(r, c);
    for (std::size_t c = d; c < n; ++c) a(r, c) = -u.translation()[r];
  }
  Point t(n, BigInt(0));
  for (std::size_t r = 0; r < d; ++r) t[r] = u.translation()[r];
  return AffineUnimodularMap(std::move(a), std::move(t));
}

}  // namespace ehrhart
