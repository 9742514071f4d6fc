#pragma once

// Unimodular equivalence of integral n-simplices by searching vertex
// correspondences: for each permutation matrix P, the unique affine map
// sending S's vertices to T's permuted vertices has matrix
// N = (D_T · P) · D_S^{-1}, and S ~ T iff some N lies in GL_{n+1}(Z).

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ehrhart/errors.hpp"
#include "ehrhart/exact.hpp"
#include "ehrhart/polytope.hpp"

namespace ehrhart {

// (n+1)! permutations are tried; beyond n = 8 that is no longer desk scale.
inline constexpr std::size_t kMaxEquivalenceDim = 8;

enum class EquivalenceMode {
  full,          // N must be integral with det N = ±1
  equal_volume,  // inputs of equal volume: integrality of N suffices
};

/// B s_i + c = t_{f(i)} for every vertex index i.
struct EquivalenceWitness {
  AffineUnimodularMap map;
  std::vector<std::size_t> vertex_bijection;
  // [[B, c], [0, 1]]; carries D_S onto the column-permuted D_T.
  IntegerMatrix certificate;
};

struct EquivalenceVerdict {
  std::optional<EquivalenceWitness> witness;
  std::size_t permutations_tried = 0;

  bool equivalent() const noexcept { return witness.has_value(); }
};

inline IntegerMatrix certificate_matrix(const AffineUnimodularMap& u) {
  const std::size_t n = u.dim();
  IntegerMatrix a(n + 1, n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) a(r, c) = u.linear()(r, c);
    a(r, n) = u.translation()[r];
  }
  a(n, n) = 1;
  return a;
}

/// Checks the witness from scratch against the two vertex lists.
inline bool verify_witness(const LatticeSimplex& s, const LatticeSimplex& t, const EquivalenceWitness& w) {
  const std::size_t n = s.dim();
  if (t.dim() != n || w.map.dim() != n || w.vertex_bijection.size() != n + 1) return false;
  if (abs(det(w.map.linear())) != 1) return false;
  std::vector<bool> seen(n + 1, false);
  for (auto j : w.vertex_bijection) {
    if (j > n || seen[j]) return false;
    seen[j] = true;
  }
  for (std::size_t i = 0; i <= n; ++i)
    if (w.map(s.vertices()[i]) != t.vertices()[w.vertex_bijection[i]]) return false;
  return true;
}

inline EquivalenceVerdict check_equivalence(const LatticeSimplex& s, const LatticeSimplex& t,
                                            EquivalenceMode mode = EquivalenceMode::full) {
  const std::size_t n = s.dim();
  if (t.dim() != n)
    throw DimensionError("simplices live in R^" + std::to_string(n) + " and R^" + std::to_string(t.dim()));
  if (n > kMaxEquivalenceDim)
    throw CapacityError("equivalence search limited to n <= " + std::to_string(kMaxEquivalenceDim));

  const IntegerMatrix ds = s.definition_matrix();
  const IntegerMatrix dt = t.definition_matrix();
  if (mode == EquivalenceMode::equal_volume && abs(det(ds)) != abs(det(dt)))
    throw PreconditionError("equal-volume mode requires |det D_S| = |det D_T|");
  const RationalMatrix ds_inv = invert(ds);

  std::vector<std::size_t> perm(n + 1);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  EquivalenceVerdict verdict;
  IntegerMatrix cert(n + 1, n + 1);
  do {
    ++verdict.permutations_tried;
    bool integral = true;
    for (std::size_t i = 0; i <= n && integral; ++i)
      for (std::size_t j = 0; j <= n; ++j) {
        Rational v = 0;
        for (std::size_t k = 0; k <= n; ++k) v += Rational(dt(i, perm[k])) * ds_inv(k, j);
        if (!is_integer(v)) {
          integral = false;
          break;
        }
        cert(i, j) = v.get_num();
      }
    if (!integral) continue;
    if (mode == EquivalenceMode::full && abs(det(cert)) != 1) continue;

    // The bottom row of N times D_S is the row of ones, forcing (0, ..., 0, 1).
    for (std::size_t j = 0; j <= n; ++j)
      if (cert(n, j) != (j == n ? 1 : 0))
        throw ConsistencyError("certificate bottom row is not (0, ..., 0, 1)");

    IntegerMatrix b(n, n);
    Point c(n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t col = 0; col < n; ++col) b(r, col) = cert(r, col);
      c[r] = cert(r, n);
    }
    try {
      verdict.witness = EquivalenceWitness{AffineUnimodularMap(std::move(b), std::move(c)), perm, cert};
    } catch (const PreconditionError&) {
      throw ConsistencyError("integral certificate for equal-volume simplices is not unimodular");
    }
    return verdict;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return verdict;
}

/// Witness for T -> S given one for S -> T.
inline EquivalenceWitness inverse(const EquivalenceWitness& w) {
  std::vector<std::size_t> inv(w.vertex_bijection.size());
  for (std::size_t i = 0; i < inv.size(); ++i) inv[w.vertex_bijection[i]] = i;
  AffineUnimodularMap m = w.map.inverse();
  IntegerMatrix cert = certificate_matrix(m);
  return EquivalenceWitness{std::move(m), std::move(inv), std::move(cert)};
}

/// Witness for S -> R from S -> T (first) and T -> R (second).
inline EquivalenceWitness compose(const EquivalenceWitness& first, const EquivalenceWitness& second) {
  std::vector<std::size_t> f(first.vertex_bijection.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = second.vertex_bijection[first.vertex_bijection[i]];
  AffineUnimodularMap m = second.map.after(first.map);
  IntegerMatrix cert = certificate_matrix(m);
  return EquivalenceWitness{std::move(m), std::move(f), std::move(cert)};
}

struct EquivalenceClass {
  std::size_t representative = 0;
  // (index, witness representative -> member); the representative itself
  // is listed first with the identity witness.
  std::vector<std::pair<std::size_t, EquivalenceWitness>> members;
};

/// Partition by unimodular equivalence. Each simplex is compared only with
/// the representatives of the classes found so far.
inline std::vector<EquivalenceClass> equivalence_classes(const std::vector<LatticeSimplex>& simplices,
                                                         EquivalenceMode mode = EquivalenceMode::full) {
  std::vector<EquivalenceClass> classes;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    if (simplices[i].dim() != simplices.front().dim())
      throw DimensionError("equivalence_classes: simplices of different dimensions");
    bool placed = false;
    for (auto& cls : classes) {
      const auto& rep = simplices[cls.representative];
      if (mode == EquivalenceMode::equal_volume && normalized_volume(rep) != normalized_volume(simplices[i]))
        continue;
      auto verdict = check_equivalence(rep, simplices[i], mode);
      if (verdict.equivalent()) {
        cls.members.emplace_back(i, std::move(*verdict.witness));
        placed = true;
        break;
      }
    }
    if (!placed) {
      const std::size_t n = simplices[i].dim();
      std::vector<std::size_t> id(n + 1);
      std::iota(id.begin(), id.end(), std::size_t{0});
      auto m = AffineUnimodularMap::identity(n);
      IntegerMatrix cert = certificate_matrix(m);
      classes.push_back({i, {{i, EquivalenceWitness{std::move(m), std::move(id), std::move(cert)}}}});
    }
  }
  return classes;
}

}  // namespace ehrhart
