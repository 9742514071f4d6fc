#pragma once

// Test helpers: corpus access, random generators and brute-force oracles.
// The oracles use plain int64 arithmetic and never call into the library's
// hull, counting or linear algebra code.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "ehrhart/all.hpp"

namespace testing_support {

using namespace ehrhart;

inline std::string corpus_path(const std::string& name) { return std::string(EHRHART_CORPUS_DIR) + "/" + name + ".poly"; }

inline LatticePolytope corpus(const std::string& name) { return to_polytope(read_document(corpus_path(name))); }

inline LatticeSimplex corpus_simplex(const std::string& name) { return LatticeSimplex(corpus(name)); }

inline std::vector<std::string> example_names(int example, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back("example" + std::to_string(example) + "_P" + std::to_string(i));
  return out;
}

// Polynomial coefficient vector from integers and fractions written as strings.
inline std::vector<Rational> coeffs(std::initializer_list<const char*> values) {
  std::vector<Rational> out;
  for (const char* v : values) {
    Rational r(v);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

using Vec = std::vector<std::int64_t>;

inline Vec to_vec(const Point& p) {
  Vec v;
  for (const auto& c : p) v.push_back(c.get_si());
  return v;
}

inline std::vector<Vec> to_vecs(const std::vector<Point>& pts) {
  std::vector<Vec> out;
  for (const auto& p : pts) out.push_back(to_vec(p));
  return out;
}

// Leibniz expansion; fine for the n <= 5 matrices used here.
inline std::int64_t leibniz_det(const std::vector<Vec>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::int64_t total = 0;
  do {
    std::int64_t term = 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][perm[i]];
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    total += inversions % 2 ? -term : term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Rows are coordinates plus a row of ones; columns are the given points.
inline std::vector<Vec> homogeneous(const std::vector<Vec>& pts) {
  const std::size_t n = pts[0].size();
  std::vector<Vec> m(n + 1, Vec(pts.size()));
  for (std::size_t c = 0; c < pts.size(); ++c) {
    for (std::size_t r = 0; r < n; ++r) m[r][c] = pts[c][r];
    m[n][c] = 1;
  }
  return m;
}

enum class Where { outside, boundary, interior };

// Barycentric coordinates by Cramer's rule: lambda_i = det_i / det.
inline Where barycentric(const std::vector<Vec>& simplex, const Vec& x) {
  auto m = homogeneous(simplex);
  const std::int64_t d = leibniz_det(m);
  if (d == 0) return Where::outside;
  bool on_boundary = false;
  for (std::size_t i = 0; i < simplex.size(); ++i) {
    auto mi = m;
    for (std::size_t r = 0; r < x.size(); ++r) mi[r][i] = x[r];
    mi[x.size()][i] = 1;
    const std::int64_t di = leibniz_det(mi);
    if ((di < 0 && d > 0) || (di > 0 && d < 0)) return Where::outside;
    if (di == 0) on_boundary = true;
  }
  return on_boundary ? Where::boundary : Where::interior;
}

// Caratheodory: x lies in conv(pts) iff it lies in some full simplex on pts.
inline bool in_hull(const std::vector<Vec>& pts, const Vec& x) {
  const std::size_t n = x.size();
  std::vector<bool> pick(pts.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<long>(n + 1), true);
  do {
    std::vector<Vec> s;
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pick[i]) s.push_back(pts[i]);
    if (barycentric(s, x) != Where::outside) return true;
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return false;
}

template <typename F>
void for_each_box_point(const std::vector<Vec>& pts, F&& f) {
  const std::size_t n = pts[0].size();
  Vec lo = pts[0], hi = pts[0];
  for (const auto& p : pts)
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  Vec x = lo;
  while (true) {
    f(x);
    std::size_t i = 0;
    while (i < n && x[i] == hi[i]) {
      x[i] = lo[i];
      ++i;
    }
    if (i == n) return;
    ++x[i];
  }
}

inline std::vector<Vec> dilated(const std::vector<Vec>& pts, std::int64_t k) {
  auto out = pts;
  for (auto& p : out)
    for (auto& c : p) c *= k;
  return out;
}

// |kP ∩ Z^n| by scanning the bounding box.
inline std::int64_t oracle_count(const LatticePolytope& p, std::int64_t k) {
  const auto pts = dilated(to_vecs(p.vertices()), k);
  std::int64_t count = 0;
  for_each_box_point(pts, [&](const Vec& x) { count += in_hull(pts, x); });
  return count;
}

// Interior count for simplices only.
inline std::int64_t oracle_interior_count(const LatticeSimplex& s, std::int64_t k) {
  const auto pts = dilated(to_vecs(s.vertices()), k);
  std::int64_t count = 0;
  for_each_box_point(pts, [&](const Vec& x) { count += barycentric(pts, x) == Where::interior; });
  return count;
}

// Pick's theorem for a lattice triangle: L(t) = A t^2 + (B/2) t + 1.
inline std::vector<Rational> pick_triangle(const std::vector<Vec>& tri) {
  const std::int64_t twice_area = std::abs((tri[1][0] - tri[0][0]) * (tri[2][1] - tri[0][1]) -
                                           (tri[2][0] - tri[0][0]) * (tri[1][1] - tri[0][1]));
  std::int64_t boundary = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const auto& a = tri[i];
    const auto& b = tri[(i + 1) % 3];
    boundary += std::gcd(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
  }
  return {make_rational(twice_area, 2), make_rational(boundary, 2), Rational(1)};
}

// Random element of GL_n(Z) as a product of elementary row operations.
inline IntegerMatrix random_unimodular(std::size_t n, std::mt19937_64& rng, int steps = 6) {
  IntegerMatrix m = IntegerMatrix::identity(n);
  std::uniform_int_distribution<std::size_t> row(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  for (int s = 0; s < steps; ++s) {
    const std::size_t i = row(rng);
    std::size_t j = row(rng);
    if (n > 1)
      while (j == i) j = row(rng);
    switch (n > 1 ? kind(rng) : 2) {
      case 0: {  // add +-row j to row i
        const long sign = rng() % 2 ? 1 : -1;
        for (std::size_t c = 0; c < n; ++c) m(i, c) += sign * m(j, c);
        break;
      }
      case 1:  // swap
        for (std::size_t c = 0; c < n; ++c) std::swap(m(i, c), m(j, c));
        break;
      default:  // negate
        for (std::size_t c = 0; c < n; ++c) m(i, c) = -m(i, c);
    }
  }
  return m;
}

inline Point random_point(std::size_t n, long lo, long hi, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> d(lo, hi);
  Point p(n);
  for (auto& c : p) c = d(rng);
  return p;
}

inline AffineUnimodularMap random_map(std::size_t n, std::mt19937_64& rng, int steps = 6) {
  return AffineUnimodularMap(random_unimodular(n, rng, steps), random_point(n, -3, 3, rng));
}

inline LatticeSimplex random_simplex(std::size_t n, long lo, long hi, std::mt19937_64& rng) {
  while (true) {
    std::vector<Point> v;
    for (std::size_t i = 0; i <= n; ++i) v.push_back(random_point(n, lo, hi, rng));
    try {
      return LatticeSimplex(n, v);
    } catch (const Error&) {
    }
  }
}

inline LatticePolytope random_polytope(std::size_t n, std::size_t points, long lo, long hi, std::mt19937_64& rng) {
  while (true) {
    std::vector<Point> v;
    for (std::size_t i = 0; i < points; ++i) v.push_back(random_point(n, lo, hi, rng));
    try {
      return make_polytope(n, v);
    } catch (const DegeneracyError&) {
    }
  }
}

inline LatticeSimplex shuffled(const LatticeSimplex& s, std::mt19937_64& rng) {
  auto v = s.vertices();
  std::shuffle(v.begin(), v.end(), rng);
  return LatticeSimplex(s.dim(), v);
}

}  // namespace testing_support
