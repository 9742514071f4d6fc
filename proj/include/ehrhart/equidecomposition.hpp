#pragma once

// GL_n(Z)-equidecomposability evidence: pair up the cells of two pulling
// triangulations by unimodular equivalence. A failed search only says that
// these particular triangulations do not match.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ehrhart/ehrhart.hpp"
#include "ehrhart/equivalence.hpp"
#include "ehrhart/errors.hpp"
#include "ehrhart/hull.hpp"
#include "ehrhart/polytope.hpp"

namespace ehrhart {

inline constexpr std::uint64_t kMaxDilationBoxPoints = 10'000'000;
inline constexpr std::size_t kMaxTriangulationCells = 500;
// Vertex orders tried when re-triangulating the right-hand polytope (7!).
inline constexpr std::size_t kMaxPullingOrders = 5040;

/// Cell i of `left` is carried onto cell pairing[i] of `right` by witnesses[i].
struct MatchingWitness {
  Triangulation left;
  Triangulation right;
  std::vector<std::size_t> pairing;
  std::vector<EquivalenceWitness> witnesses;
};

struct MatchResult {
  std::optional<MatchingWitness> matching;
  std::size_t left_cells = 0;
  std::size_t right_cells = 0;

  bool matched() const noexcept { return matching.has_value(); }
};

inline bool verify_matching(const MatchingWitness& m) {
  const std::size_t r = m.left.size();
  if (m.right.size() != r || m.pairing.size() != r || m.witnesses.size() != r) return false;
  std::vector<bool> used(r, false);
  for (std::size_t i = 0; i < r; ++i) {
    const std::size_t j = m.pairing[i];
    if (j >= r || used[j]) return false;
    used[j] = true;
    if (!verify_witness(m.left.cells[i], m.right.cells[j], m.witnesses[i])) return false;
  }
  return m.left.total_normalized_volume() == m.right.total_normalized_volume();
}

namespace detail {

// Equivalence verdicts keyed by (left cell index, right cell vertex list);
// shared across the right-hand triangulations tried by match().
using WitnessCache = std::map<std::pair<std::size_t, std::vector<Point>>, std::optional<EquivalenceWitness>>;

class CellMatcher {
 public:
  CellMatcher(const Triangulation& left, const Triangulation& right, WitnessCache& cache)
      : left_(left), right_(right), cache_(cache) {
    for (const auto& c : left_.cells) left_vol_.push_back(normalized_volume(c));
    for (const auto& c : right_.cells) right_vol_.push_back(normalized_volume(c));
    order_.resize(left_.size());
    std::iota(order_.begin(), order_.end(), std::size_t{0});
    std::stable_sort(order_.begin(), order_.end(),
                     [this](std::size_t a, std::size_t b) { return left_vol_[a] > left_vol_[b]; });
  }

  std::optional<std::vector<std::size_t>> run() {
    std::vector<std::size_t> pairing(left_.size());
    std::vector<bool> used(right_.size(), false);
    if (!extend(0, pairing, used)) return std::nullopt;
    return pairing;
  }

  const EquivalenceWitness& witness(std::size_t i, std::size_t j) const {
    return *cache_.at({i, right_.cells[j].vertices()});
  }

 private:
  bool extend(std::size_t depth, std::vector<std::size_t>& pairing, std::vector<bool>& used) {
    if (depth == order_.size()) return true;
    const std::size_t i = order_[depth];
    for (std::size_t j = 0; j < right_.size(); ++j) {
      if (used[j] || right_vol_[j] != left_vol_[i] || !equivalent(i, j)) continue;
      used[j] = true;
      pairing[i] = j;
      if (extend(depth + 1, pairing, used)) return true;
      used[j] = false;
    }
    return false;
  }

  bool equivalent(std::size_t i, std::size_t j) {
    auto key = std::make_pair(i, right_.cells[j].vertices());
    auto it = cache_.find(key);
    if (it == cache_.end()) {
      auto verdict = check_equivalence(left_.cells[i], right_.cells[j], EquivalenceMode::equal_volume);
      it = cache_.emplace(std::move(key), std::move(verdict.witness)).first;
    }
    return it->second.has_value();
  }

  const Triangulation& left_;
  const Triangulation& right_;
  WitnessCache& cache_;
  std::vector<BigInt> left_vol_, right_vol_;
  std::vector<std::size_t> order_;
};

inline std::set<std::vector<Point>> cell_set(const Triangulation& t) {
  std::set<std::vector<Point>> out;
  for (const auto& c : t.cells) out.insert(c.vertices());
  return out;
}

// Matches `left` against `right` (Q's lex pulling triangulation) and, failing
// that, against Q's other pulling triangulations, one per vertex order, up to
// kMaxPullingOrders orders. Pulling U(P) in the order U(sigma) reproduces
// U of P's sigma-triangulation, so images of P are always found when the
// order search is exhaustive.
inline MatchResult match(const Triangulation& left, const LatticePolytope& q, const Triangulation& right) {
  MatchResult result;
  result.left_cells = left.size();
  result.right_cells = right.size();
  WitnessCache cache;

  auto attempt = [&](const Triangulation& r) {
    if (r.size() != left.size()) return false;
    CellMatcher matcher(left, r, cache);
    auto pairing = matcher.run();
    if (!pairing) return false;
    std::vector<EquivalenceWitness> witnesses;
    for (std::size_t i = 0; i < pairing->size(); ++i) witnesses.push_back(matcher.witness(i, (*pairing)[i]));
    MatchingWitness m{left, r, std::move(*pairing), std::move(witnesses)};
    if (!verify_matching(m)) throw ConsistencyError("cell matching failed re-verification");
    result.right_cells = r.size();
    result.matching = std::move(m);
    return true;
  };

  if (attempt(right) || q.is_simplex()) return result;
  std::set<std::set<std::vector<Point>>> tried{cell_set(right)};
  std::vector<std::size_t> order(q.vertex_count());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t orders = 0;
  do {
    Triangulation t = triangulate(q, order);
    if (tried.insert(cell_set(t)).second && attempt(t)) return result;
  } while (++orders < kMaxPullingOrders && std::next_permutation(order.begin(), order.end()));
  return result;
}

}  // namespace detail

/// Backtracking search for a perfect matching between the cells of P's
/// pulling triangulation and those of a pulling triangulation of Q; partners
/// must have equal normalized volume and be unimodularly equivalent.
inline MatchResult match_triangulations(const LatticePolytope& p, const LatticePolytope& q) {
  if (p.dim() != q.dim()) throw DimensionError("polytopes live in different dimensions");
  Triangulation tp = triangulate(p);
  Triangulation tq = triangulate(q);
  if (tp.total_normalized_volume() != tq.total_normalized_volume())
    throw PreconditionError("polytopes have different volumes (" + to_string(tp.total_normalized_volume()) +
                            " vs " + to_string(tq.total_normalized_volume()) +
                            " normalized) and cannot be equidecomposable");
  return detail::match(tp, q, tq);
}

enum class TriangulationVerdict { equidecomposable, inconclusive };

struct UnimodularTriangulationResult {
  TriangulationVerdict verdict = TriangulationVerdict::inconclusive;
  std::optional<MatchingWitness> matching;
};

/// For Ehrhart-equivalent P and Q whose triangulations are both unimodular,
/// the cell counts agree (volume / (1/n!)) and any two unimodular simplices
/// are equivalent, so the cells can be paired in order.
inline UnimodularTriangulationResult unimodular_triangulation_check(const LatticePolytope& p,
                                                                    const LatticePolytope& q) {
  if (p.dim() != q.dim()) throw DimensionError("polytopes live in different dimensions");
  if (ehrhart_polynomial(p) != ehrhart_polynomial(q))
    throw PreconditionError("polytopes are not Ehrhart-equivalent");
  Triangulation tp = triangulate(p);
  Triangulation tq = triangulate(q);
  UnimodularTriangulationResult out;
  if (!tp.all_unimodular() || !tq.all_unimodular()) return out;
  if (tp.size() != tq.size()) throw ConsistencyError("unimodular triangulations of unequal size");

  MatchingWitness m{std::move(tp), std::move(tq), {}, {}};
  for (std::size_t i = 0; i < m.left.size(); ++i) {
    auto verdict = check_equivalence(m.left.cells[i], m.right.cells[i]);
    if (!verdict.equivalent()) throw ConsistencyError("two unimodular simplices failed to match");
    m.pairing.push_back(i);
    m.witnesses.push_back(std::move(*verdict.witness));
  }
  out.verdict = TriangulationVerdict::equidecomposable;
  out.matching = std::move(m);
  return out;
}

enum class DilationOutcome { matched, not_matched, capacity_exceeded };

inline const char* to_string(DilationOutcome o) {
  switch (o) {
    case DilationOutcome::matched: return "Matched";
    case DilationOutcome::not_matched: return "NotMatched";
    case DilationOutcome::capacity_exceeded: return "CapacityExceeded";
  }
  return "?";
}

struct DilationEntry {
  std::size_t k = 0;
  DilationOutcome outcome = DilationOutcome::not_matched;
  std::size_t left_cells = 0;
  std::size_t right_cells = 0;
  std::optional<MatchingWitness> matching;
  std::string note;
};

/// NotMatched entries are one-sided: a finer decomposition may still exist.
struct DilationReport {
  std::vector<DilationEntry> tested;
  std::optional<std::size_t> first_success;
};

namespace detail {

inline BigInt bounding_box_points(const LatticePolytope& p) {
  BigInt total = 1;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    BigInt lo = p.vertices()[0][i], hi = lo;
    for (const auto& v : p.vertices()) {
      if (v[i] < lo) lo = v[i];
      if (v[i] > hi) hi = v[i];
    }
    total *= hi - lo + 1;
  }
  return total;
}

}  // namespace detail

/// Runs match_triangulations on kP and kQ for k = 1..k_max.
inline DilationReport dilation_search(const LatticePolytope& p, const LatticePolytope& q, std::size_t k_max) {
  if (p.dim() != q.dim()) throw DimensionError("polytopes live in different dimensions");
  if (k_max < 1) throw PreconditionError("k_max must be at least 1");
  if (ehrhart_polynomial(p) != ehrhart_polynomial(q))
    throw PreconditionError("polytopes are not Ehrhart-equivalent");

  DilationReport report;
  for (std::size_t k = 1; k <= k_max; ++k) {
    DilationEntry entry;
    entry.k = k;
    const BigInt factor(static_cast<unsigned long>(k));
    try {
      const LatticePolytope kp = dilate(p, factor), kq = dilate(q, factor);
      const BigInt limit(std::to_string(kMaxDilationBoxPoints));
      if (detail::bounding_box_points(kp) > limit || detail::bounding_box_points(kq) > limit)
        throw CapacityError("dilated bounding box exceeds " + std::to_string(kMaxDilationBoxPoints) + " points");
      Triangulation tp = triangulate(kp), tq = triangulate(kq);
      if (tp.size() > kMaxTriangulationCells || tq.size() > kMaxTriangulationCells)
        throw CapacityError("triangulation exceeds " + std::to_string(kMaxTriangulationCells) + " cells");
      auto result = detail::match(tp, kq, tq);
      entry.left_cells = result.left_cells;
      entry.right_cells = result.right_cells;
      if (result.matched()) {
        entry.outcome = DilationOutcome::matched;
        entry.matching = std::move(result.matching);
        if (!report.first_success) report.first_success = k;
      }
    } catch (const CapacityError& e) {
      entry.outcome = DilationOutcome::capacity_exceeded;
      entry.note = e.what();
    }
    report.tested.push_back(std::move(entry));
  }
  return report;
}

}  // namespace ehrhart
