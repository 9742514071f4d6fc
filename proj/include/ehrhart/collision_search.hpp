#pragma once

// Randomized search for Ehrhart-equivalent polytopes: perturb vertex
// coordinates, compute Ehrhart polynomials and bucket by exact coefficient
// vector. Buckets with two or more members are the collisions.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "ehrhart/ehrhart.hpp"
#include "ehrhart/errors.hpp"
#include "ehrhart/polytope.hpp"

namespace ehrhart {

enum class VertexRule { uniform, round_robin };

struct MutationPolicy {
  long delta_min = -1;
  long delta_max = 1;
  VertexRule vertex_rule = VertexRule::uniform;
  std::size_t budget = 0;
  std::uint64_t seed = 0;
};

/// Moves one coordinate of one vertex by delta. Returns nullopt (degenerate)
/// when the move creates a duplicate vertex or flattens the polytope.
inline std::optional<LatticePolytope> perturb(const LatticePolytope& p, std::size_t vertex, std::size_t coord,
                                              long delta) {
  if (vertex >= p.vertex_count() || coord >= p.dim()) throw PreconditionError("perturb: index out of range");
  std::vector<Point> v = p.vertices();
  v[vertex][coord] += delta;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != vertex && v[i] == v[vertex] && delta != 0) return std::nullopt;
  try {
    return make_polytope(p.dim(), std::move(v));
  } catch (const DegeneracyError&) {
    return std::nullopt;
  }
}

inline std::optional<LatticePolytope> mutate(const LatticePolytope& p, const MutationPolicy& policy,
                                             std::mt19937_64& rng, std::size_t step = 0) {
  if (policy.delta_min > policy.delta_max) throw PreconditionError("mutation delta range is empty");
  std::size_t vertex;
  if (policy.vertex_rule == VertexRule::round_robin) {
    vertex = step % p.vertex_count();
  } else {
    vertex = std::uniform_int_distribution<std::size_t>(0, p.vertex_count() - 1)(rng);
  }
  const std::size_t coord = std::uniform_int_distribution<std::size_t>(0, p.dim() - 1)(rng);
  const long delta = std::uniform_int_distribution<long>(policy.delta_min, policy.delta_max)(rng);
  return perturb(p, vertex, coord, delta);
}

struct CollisionClass {
  EhrhartPolynomial key;
  std::vector<LatticePolytope> members;
};

struct SearchReport {
  std::vector<CollisionClass> classes;
  std::uint64_t seed = 0;
  std::size_t evaluated = 0;
  std::size_t degenerate = 0;
  std::size_t duplicates = 0;
  std::size_t capacity_skipped = 0;
};

/// Evaluates the seeds, then spends `policy.budget` mutation steps on
/// randomly chosen members of the growing pool. Deterministic for a fixed
/// seed. Classes are sorted by size (largest first), then by key.
inline SearchReport search(const std::vector<LatticePolytope>& seeds, const MutationPolicy& policy) {
  SearchReport report;
  report.seed = policy.seed;
  if (seeds.empty()) return report;
  for (const auto& s : seeds)
    if (s.dim() != seeds.front().dim()) throw DimensionError("search seeds have different dimensions");

  std::mt19937_64 rng(policy.seed);
  std::set<std::vector<Point>> seen;
  std::vector<LatticePolytope> pool;
  std::map<std::vector<Rational>, CollisionClass> buckets;

  auto admit = [&](const LatticePolytope& p) {
    if (!seen.insert(p.sorted_vertices()).second) {
      ++report.duplicates;
      return;
    }
    EhrhartPolynomial l;
    try {
      l = ehrhart_polynomial(p);
    } catch (const CapacityError&) {
      ++report.capacity_skipped;
      return;
    }
    ++report.evaluated;
    pool.push_back(p);
    auto [it, inserted] = buckets.try_emplace(l.coefficients(), CollisionClass{l, {}});
    it->second.members.push_back(p);
  };

  for (const auto& s : seeds) admit(s);
  for (std::size_t step = 0; step < policy.budget && !pool.empty(); ++step) {
    const std::size_t parent = std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng);
    const LatticePolytope base = pool[parent];
    auto child = mutate(base, policy, rng, step);
    if (!child) {
      ++report.degenerate;
      continue;
    }
    admit(*child);
  }

  for (auto& [key, cls] : buckets)
    if (cls.members.size() >= 2) report.classes.push_back(std::move(cls));
  std::stable_sort(report.classes.begin(), report.classes.end(),
                   [](const CollisionClass& a, const CollisionClass& b) {
                     return a.members.size() > b.members.size();
                   });
  return report;
}

}  // namespace ehrhart
