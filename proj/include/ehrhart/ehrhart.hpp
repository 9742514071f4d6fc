#pragma once

// Lattice-point counting in dilates and exact Ehrhart polynomials.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <future>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "ehrhart/errors.hpp"
#include "ehrhart/exact.hpp"
#include "ehrhart/hull.hpp"
#include "ehrhart/polytope.hpp"

namespace ehrhart {

// Upper bound on outer box points visited by a single count.
inline constexpr std::uint64_t kMaxCountScan = 200'000'000;

/// Worker count for independent counts: $EHRHART_THREADS if set, otherwise
/// the hardware concurrency.
inline unsigned worker_threads() {
  if (const char* env = std::getenv("EHRHART_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

namespace detail {

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

inline BigInt floor_div(const BigInt& a, const BigInt& b) { return ehrhart::floor_div(a, b); }
inline BigInt ceil_div(const BigInt& a, const BigInt& b) { return ehrhart::ceil_div(a, b); }

template <typename T>
T from_big(const BigInt& v) {
  if constexpr (std::is_same_v<T, BigInt>) return v;
  else return static_cast<T>(v.get_si());
}

// Counting problem for k·P after shifting P's coordinate-wise minimum to the
// origin: x in [0, extent_i] with normal·x <= offset on every facet.
struct CountSetup {
  std::size_t dim = 0;
  std::vector<Point> normals;
  std::vector<BigInt> offsets;
  Point extents;
};

inline CountSetup prepare(const LatticePolytope& p, const BigInt& k) {
  CountSetup s;
  s.dim = p.dim();
  Point lo = p.vertices()[0], hi = p.vertices()[0];
  for (const auto& v : p.vertices())
    for (std::size_t i = 0; i < s.dim; ++i) {
      if (v[i] < lo[i]) lo[i] = v[i];
      if (v[i] > hi[i]) hi[i] = v[i];
    }
  for (auto& h : facets(p)) {
    s.offsets.push_back(k * (h.offset - dot(h.normal, lo)));
    s.normals.push_back(std::move(h.normal));
  }
  s.extents.resize(s.dim);
  for (std::size_t i = 0; i < s.dim; ++i) s.extents[i] = k * (hi[i] - lo[i]);
  return s;
}

// Scans every coordinate but the longest one and counts the admissible
// interval along it directly.
template <typename T>
BigInt scan(const CountSetup& s, bool interior) {
  const std::size_t n = s.dim;
  std::size_t axis = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (s.extents[i] > s.extents[axis]) axis = i;

  const std::size_t m = s.normals.size();
  std::vector<std::vector<T>> a(m, std::vector<T>(n));
  std::vector<T> b(m);
  for (std::size_t f = 0; f < m; ++f) {
    for (std::size_t i = 0; i < n; ++i) a[f][i] = from_big<T>(s.normals[f][i]);
    b[f] = from_big<T>(s.offsets[f]) - (interior ? T(1) : T(0));
  }
  std::vector<T> ext(n);
  for (std::size_t i = 0; i < n; ++i) ext[i] = from_big<T>(s.extents[i]);

  std::vector<T> x(n, T(0));
  BigInt total = 0;
  while (true) {
    T lo = 0, hi = ext[axis];
    bool empty = false;
    for (std::size_t f = 0; f < m && !empty; ++f) {
      T rest = b[f];
      for (std::size_t i = 0; i < n; ++i)
        if (i != axis) rest -= a[f][i] * x[i];
      const T& c = a[f][axis];
      if (c == 0) {
        if (rest < 0) empty = true;
      } else if (c > 0) {
        T bound = floor_div(rest, c);
        if (bound < hi) hi = bound;
      } else {
        T bound = ceil_div(rest, c);
        if (bound > lo) lo = bound;
      }
      if (lo > hi) empty = true;
    }
    if (!empty) {
      if constexpr (std::is_same_v<T, BigInt>) total += hi - lo + 1;
      else total += static_cast<long>(hi - lo + 1);
    }
    // Odometer over the remaining axes.
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (i == axis) continue;
      if (x[i] < ext[i]) {
        ++x[i];
        break;
      }
      x[i] = 0;
    }
    if (i == n) break;
  }
  return total;
}

inline bool fits_int64(const CountSetup& s) {
  const BigInt limit = BigInt(1) << 61;
  for (std::size_t f = 0; f < s.normals.size(); ++f) {
    BigInt bound = abs(s.offsets[f]) + 1;
    for (std::size_t i = 0; i < s.dim; ++i) bound += abs(s.normals[f][i]) * s.extents[i];
    if (bound >= limit) return false;
  }
  return true;
}

}  // namespace detail

/// Number of lattice points in k·P (closed) or in its interior.
inline BigInt count_points(const LatticePolytope& p, const BigInt& k, Membership mode) {
  if (k < 0) throw PreconditionError("dilation factor must be nonnegative");
  if (k == 0) return mode == Membership::closed ? 1 : 0;
  const auto setup = detail::prepare(p, k);

  std::size_t axis = 0;
  for (std::size_t i = 1; i < setup.dim; ++i)
    if (setup.extents[i] > setup.extents[axis]) axis = i;
  BigInt work = 1;
  for (std::size_t i = 0; i < setup.dim; ++i)
    if (i != axis) work *= setup.extents[i] + 1;
  if (work > BigInt(std::to_string(kMaxCountScan)))
    throw CapacityError("lattice count for k = " + to_string(k) + " would scan " + to_string(work) +
                        " box points");

  const bool interior = mode == Membership::interior;
  return detail::fits_int64(setup) ? detail::scan<std::int64_t>(setup, interior)
                                   : detail::scan<BigInt>(setup, interior);
}

inline BigInt count_points(const LatticePolytope& p, long k, Membership mode) {
  return count_points(p, BigInt(k), mode);
}

/// L(t) = c_n t^n + ... + c_1 t + c_0 with exact rational coefficients.
class EhrhartPolynomial {
 public:
  EhrhartPolynomial() = default;

  /// Coefficients from the leading one down to the constant term.
  explicit EhrhartPolynomial(std::vector<Rational> highest_first) : coeffs_(std::move(highest_first)) {
    if (coeffs_.empty()) throw PreconditionError("polynomial needs at least one coefficient");
  }

  std::size_t degree() const noexcept { return coeffs_.size() - 1; }
  const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }
  const Rational& leading() const { return coeffs_.front(); }
  const Rational& constant() const { return coeffs_.back(); }

  /// c_i, the coefficient of t^i.
  const Rational& coefficient(std::size_t i) const { return coeffs_[degree() - i]; }

  Rational operator()(const BigInt& t) const {
    Rational acc = 0;
    const Rational x(t);
    for (const auto& c : coeffs_) acc = acc * x + c;
    return acc;
  }

  Rational operator()(long t) const { return (*this)(BigInt(t)); }

  friend bool operator==(const EhrhartPolynomial&, const EhrhartPolynomial&) = default;

 private:
  std::vector<Rational> coeffs_;
};

inline Rational evaluate(const EhrhartPolynomial& l, const BigInt& t) { return l(t); }
inline Rational evaluate(const EhrhartPolynomial& l, long t) { return l(t); }

/// "1/6 t^4 + 2/3 t^3 + 11/6 t^2 + 7/3 t + 1"; unit coefficients are
/// elided and zero terms skipped.
inline std::string to_string(const EhrhartPolynomial& l) {
  std::string out;
  for (std::size_t i = 0; i <= l.degree(); ++i) {
    const std::size_t power = l.degree() - i;
    Rational c = l.coefficients()[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (out.empty()) out = negative ? "-" : "";
    else out += negative ? " - " : " + ";
    const bool unit = c == 1 && power > 0;
    if (!unit) out += ehrhart::to_string(c);
    if (power > 0) {
      if (!unit) out += ' ';
      out += "t";
      if (power > 1) out += "^" + std::to_string(power);
    }
  }
  return out.empty() ? "0" : out;
}

/// Coefficients (highest first) of the unique polynomial of degree
/// < xs.size() through the given points.
inline std::vector<Rational> interpolate(const std::vector<BigInt>& xs, const std::vector<BigInt>& ys) {
  const std::size_t m = xs.size();
  std::vector<Rational> lowest_first(m, Rational(0));
  for (std::size_t j = 0; j < m; ++j) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == j) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= basis[d] * Rational(xs[i]);
      }
      basis = std::move(next);
      denom *= Rational(xs[j] - xs[i]);
    }
    const Rational scale = Rational(ys[j]) / denom;
    for (std::size_t d = 0; d < basis.size(); ++d) lowest_first[d] += basis[d] * scale;
  }
  return {lowest_first.rbegin(), lowest_first.rend()};
}

/// Counts for k = 1..kmax, spread over worker threads.
inline std::vector<BigInt> dilate_counts(const LatticePolytope& p, std::size_t kmax, Membership mode) {
  std::vector<BigInt> counts(kmax);
  const unsigned workers = std::min<unsigned>(worker_threads(), static_cast<unsigned>(kmax));
  if (workers <= 1) {
    for (std::size_t k = 1; k <= kmax; ++k) counts[k - 1] = count_points(p, BigInt(k), mode);
    return counts;
  }
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t k = 1 + w; k <= kmax; k += workers) counts[k - 1] = count_points(p, BigInt(k), mode);
    }));
  for (auto& j : jobs) j.get();
  return counts;
}

/// Interpolates counts at k = 1..n+1, then checks L(0) = 1, n!·c_n against
/// the triangulated volume and L(n+2) against a fresh count.
inline EhrhartPolynomial ehrhart_polynomial(const LatticePolytope& p) {
  const std::size_t n = p.dim();
  const auto counts = dilate_counts(p, n + 2, Membership::closed);
  std::vector<BigInt> xs(n + 1), ys(n + 1);
  for (std::size_t k = 1; k <= n + 1; ++k) {
    xs[k - 1] = static_cast<unsigned long>(k);
    ys[k - 1] = counts[k - 1];
  }
  EhrhartPolynomial l(interpolate(xs, ys));

  if (l(0L) != 1) throw ConsistencyError("Ehrhart polynomial has L(0) = " + to_string(l(0L)));
  if (l.leading() * Rational(factorial(static_cast<unsigned>(n))) != Rational(normalized_volume(p)))
    throw ConsistencyError("Ehrhart leading coefficient disagrees with the triangulated volume");
  if (l(static_cast<long>(n + 2)) != Rational(counts[n + 1]))
    throw ConsistencyError("Ehrhart polynomial mispredicts the count at k = n+2");
  return l;
}

/// L(-k) = (-1)^n · #interior(kP) for k = 1..k_max.
inline bool reciprocity_check(const LatticePolytope& p, const EhrhartPolynomial& l, std::size_t k_max) {
  if (k_max < 1) throw PreconditionError("k_max must be at least 1");
  const auto interior = dilate_counts(p, k_max, Membership::interior);
  for (std::size_t k = 1; k <= k_max; ++k) {
    Rational rhs(interior[k - 1]);
    if (p.dim() % 2 == 1) rhs = -rhs;
    if (l(-static_cast<long>(k)) != rhs) return false;
  }
  return true;
}

inline bool reciprocity_check(const LatticePolytope& p, std::size_t k_max) {
  return reciprocity_check(p, ehrhart_polynomial(p), k_max);
}

}  // namespace ehrhart
