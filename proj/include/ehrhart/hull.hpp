#pragma once

// H-representation, exact membership, pulling triangulations and volume.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <vector>

#include "ehrhart/errors.hpp"
#include "ehrhart/exact.hpp"
#include "ehrhart/geometry.hpp"
#include "ehrhart/polytope.hpp"

namespace ehrhart {

enum class Membership { closed, interior };

inline std::vector<HalfSpace> facets(const LatticePolytope& p) {
  std::vector<HalfSpace> out;
  for (auto& f : enumerate_facets(p.vertices())) out.push_back(std::move(f.halfspace));
  return out;
}

inline bool contains(const std::vector<HalfSpace>& hrep, const Point& x, Membership mode) {
  for (const auto& h : hrep) {
    if (mode == Membership::closed ? !h.satisfied(x) : !h.strictly_satisfied(x)) return false;
  }
  return true;
}

inline bool contains(const LatticePolytope& p, const Point& x, Membership mode) {
  if (x.size() != p.dim()) throw DimensionError("contains: point dimension mismatch");
  return contains(facets(p), x, mode);
}

struct Triangulation {
  std::vector<LatticeSimplex> cells;

  std::size_t size() const noexcept { return cells.size(); }

  BigInt total_normalized_volume() const {
    BigInt s = 0;
    for (const auto& c : cells) s += normalized_volume(c);
    return s;
  }

  bool all_unimodular() const {
    return std::all_of(cells.begin(), cells.end(),
                       [](const LatticeSimplex& c) { return normalized_volume(c) == 1; });
  }
};

namespace detail {

using IndexSet = std::vector<std::size_t>;

// Recursive pulling triangulation of a face given by sorted vertex indices.
// `before(i, j)` is the pulling order; the first vertex of each face is
// coned over the triangulated faces of codimension one avoiding it.
class Puller {
 public:
  Puller(const std::vector<Point>& pts, const std::vector<Facet>& facets,
         std::function<bool(std::size_t, std::size_t)> before)
      : pts_(pts), facets_(facets), before_(std::move(before)) {}

  std::vector<IndexSet> run(const IndexSet& face, std::size_t dim) const {
    if (face.size() == dim + 1) return {face};
    const std::size_t apex = *std::min_element(face.begin(), face.end(), before_);
    std::vector<IndexSet> cells;
    for (const auto& sub : subfaces(face, dim)) {
      if (std::binary_search(sub.begin(), sub.end(), apex)) continue;
      for (auto cell : run(sub, dim - 1)) {
        cell.insert(std::lower_bound(cell.begin(), cell.end(), apex), apex);
        cells.push_back(std::move(cell));
      }
    }
    return cells;
  }

 private:
  // Facets of a face F are exactly the sets F ∩ G (G a facet of the whole
  // polytope) whose affine dimension is dim F - 1.
  std::set<IndexSet> subfaces(const IndexSet& face, std::size_t dim) const {
    std::set<IndexSet> out;
    for (const auto& g : facets_) {
      IndexSet meet;
      std::set_intersection(face.begin(), face.end(), g.incident.begin(), g.incident.end(),
                            std::back_inserter(meet));
      if (meet.size() < dim || meet.size() == face.size()) continue;
      if (affine_rank(pts_, meet) == dim - 1) out.insert(std::move(meet));
    }
    return out;
  }

  const std::vector<Point>& pts_;
  const std::vector<Facet>& facets_;
  std::function<bool(std::size_t, std::size_t)> before_;
};

inline std::vector<IndexSet> pulling_cells(const LatticePolytope& p,
                                           const std::vector<Facet>& facets, bool reverse) {
  const auto& pts = p.vertices();
  IndexSet all(pts.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto lex = [&pts, reverse](std::size_t a, std::size_t b) {
    return reverse ? pts[b] < pts[a] : pts[a] < pts[b];
  };
  return Puller(pts, facets, lex).run(all, p.dim());
}

// Pulls vertex order[0] first, then order[1], and so on.
inline std::vector<IndexSet> pulling_cells(const LatticePolytope& p, const std::vector<Facet>& facets,
                                           const std::vector<std::size_t>& order) {
  std::vector<std::size_t> rank(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
  IndexSet all(order.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto before = [&rank](std::size_t a, std::size_t b) { return rank[a] < rank[b]; };
  return Puller(p.vertices(), facets, before).run(all, p.dim());
}

inline LatticeSimplex cell_simplex(const LatticePolytope& p, const IndexSet& cell) {
  std::vector<Point> v;
  v.reserve(cell.size());
  for (auto i : cell) v.push_back(p.vertices()[i]);
  return LatticeSimplex(p.dim(), std::move(v));
}

}  // namespace detail

/// Pulling triangulation from the lexicographically smallest vertex, applied
/// recursively on faces. Cells use only vertices of P, listed in P's vertex
/// order. The cell volumes are checked against a second pulling
/// triangulation (reverse order) before returning.
inline Triangulation triangulate(const LatticePolytope& p) {
  if (p.is_simplex()) return Triangulation{{LatticeSimplex(p)}};
  const auto facets = enumerate_facets(p.vertices());
  Triangulation t;
  for (const auto& cell : detail::pulling_cells(p, facets, false))
    t.cells.push_back(detail::cell_simplex(p, cell));

  BigInt check = 0;
  for (const auto& cell : detail::pulling_cells(p, facets, true))
    check += normalized_volume(detail::cell_simplex(p, cell));
  if (check != t.total_normalized_volume())
    throw ConsistencyError("triangulation volume mismatch: " + to_string(t.total_normalized_volume()) +
                           " vs " + to_string(check));
  return t;
}

/// Pulling triangulation for an explicit vertex order (a permutation of
/// vertex indices), without the volume cross-check.
inline Triangulation triangulate(const LatticePolytope& p, const std::vector<std::size_t>& order) {
  if (order.size() != p.vertex_count()) throw PreconditionError("pulling order must list every vertex once");
  std::vector<bool> seen(order.size(), false);
  for (auto i : order) {
    if (i >= order.size() || seen[i]) throw PreconditionError("pulling order must list every vertex once");
    seen[i] = true;
  }
  if (p.is_simplex()) return Triangulation{{LatticeSimplex(p)}};
  const auto facets = enumerate_facets(p.vertices());
  Triangulation t;
  for (const auto& cell : detail::pulling_cells(p, facets, order)) t.cells.push_back(detail::cell_simplex(p, cell));
  return t;
}

/// n! times the Euclidean volume.
inline BigInt normalized_volume(const LatticePolytope& p) {
  return triangulate(p).total_normalized_volume();
}

inline Rational volume(const LatticePolytope& p) {
  return make_rational(normalized_volume(p), factorial(static_cast<unsigned>(p.dim())));
}

}  // namespace ehrhart
