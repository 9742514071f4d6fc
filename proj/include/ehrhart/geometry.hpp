#pragma once

// Point sets and brute-force facet enumeration. Kept independent of the
// polytope types so that polytope construction can use it to discard
// redundant points.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "ehrhart/errors.hpp"
#include "ehrhart/exact.hpp"

namespace ehrhart {

using Point = std::vector<BigInt>;

// Desk-scale guard on the number of points fed to facet enumeration.
inline constexpr std::size_t kMaxHullPoints = 12;

inline Point operator+(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Point operator-(const Point& a, const Point& b) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Point scaled(const Point& a, const BigInt& k) {
  Point r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
  return r;
}

inline BigInt dot(const Point& a, const Point& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Point make_point(std::initializer_list<long> coords) {
  Point p;
  p.reserve(coords.size());
  for (long c : coords) p.emplace_back(c);
  return p;
}

/// Dimension of the affine hull of the indexed points.
inline std::size_t affine_rank(const std::vector<Point>& pts, const std::vector<std::size_t>& idx) {
  if (idx.size() <= 1) return 0;
  const std::size_t n = pts[idx[0]].size();
  IntegerMatrix m(idx.size() - 1, n);
  for (std::size_t r = 1; r < idx.size(); ++r)
    for (std::size_t c = 0; c < n; ++c) m(r - 1, c) = pts[idx[r]][c] - pts[idx[0]][c];
  return rank(m);
}

inline std::size_t affine_rank(const std::vector<Point>& pts) {
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  return affine_rank(pts, idx);
}

/// Closed half-space normal·x <= offset with gcd(normal) = 1.
struct HalfSpace {
  Point normal;
  BigInt offset;

  bool satisfied(const Point& x) const { return dot(normal, x) <= offset; }
  bool strictly_satisfied(const Point& x) const { return dot(normal, x) < offset; }

  friend bool operator==(const HalfSpace&, const HalfSpace&) = default;
  friend bool operator<(const HalfSpace& a, const HalfSpace& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  }
};

/// A facet together with the indices of the points lying on it.
struct Facet {
  HalfSpace halfspace;
  std::vector<std::size_t> incident;
};

namespace detail {

// Normal to the hyperplane through n points of R^n (generalized cross
// product of the n-1 edge vectors). Zero when the points are dependent.
inline Point hyperplane_normal(const std::vector<Point>& pts, const std::vector<std::size_t>& idx) {
  const std::size_t n = pts[idx[0]].size();
  Point normal(n);
  if (n == 1) {
    normal[0] = 1;
    return normal;
  }
  IntegerMatrix minor(n - 1, n - 1);
  for (std::size_t skip = 0; skip < n; ++skip) {
    for (std::size_t r = 1; r < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == skip) continue;
        minor(r - 1, cc++) = pts[idx[r]][c] - pts[idx[0]][c];
      }
    }
    BigInt d = det(minor);
    normal[skip] = (skip % 2 == 0) ? d : BigInt(-d);
  }
  return normal;
}

inline void for_each_subset(std::size_t m, std::size_t k,
                            const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > m) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == m - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace detail

/// Facets of conv(pts) for a full-dimensional point set, by checking every
/// n-subset's hyperplane for one-sidedness. Sorted by halfspace.
inline std::vector<Facet> enumerate_facets(const std::vector<Point>& pts) {
  if (pts.empty()) throw DegeneracyError("empty point set");
  if (pts.size() > kMaxHullPoints)
    throw CapacityError("facet enumeration limited to " + std::to_string(kMaxHullPoints) +
                        " points, got " + std::to_string(pts.size()));
  const std::size_t n = pts[0].size();
  std::map<HalfSpace, std::vector<std::size_t>> found;
  detail::for_each_subset(pts.size(), n, [&](const std::vector<std::size_t>& idx) {
    Point normal = detail::hyperplane_normal(pts, idx);
    BigInt g = 0;
    for (const auto& c : normal) g = gcd(g, c);
    if (g == 0) return;
    for (auto& c : normal) c /= g;
    BigInt offset = dot(normal, pts[idx[0]]);
    bool below = false, above = false;
    std::vector<std::size_t> incident;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const BigInt v = dot(normal, pts[i]);
      if (v < offset) below = true;
      else if (v > offset) above = true;
      else incident.push_back(i);
      if (below && above) return;
    }
    if (above) {
      for (auto& c : normal) c = -c;
      offset = -offset;
    }
    found.emplace(HalfSpace{std::move(normal), std::move(offset)}, std::move(incident));
  });
  std::vector<Facet> out;
  out.reserve(found.size());
  for (auto& [h, inc] : found) out.push_back(Facet{h, inc});
  return out;
}

}  // namespace ehrhart
