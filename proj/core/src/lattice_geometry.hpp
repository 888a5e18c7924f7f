#pragma once

// Exact predicates on lattice points of a dilated simplex. Coordinates are
// barycentric integers; every point of one configuration has the same
// coordinate sum, so affine dependence is ordinary linear dependence.

#include "stackyfan/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace stackyfan::detail {

using Coords = std::vector<std::int64_t>;

/// 128-bit arithmetic is exact when |coords| <= 2^20 and at most 5 rows:
/// Bareiss intermediates are minors bounded by 5! * 2^100 < 2^127.
inline bool fits_wide(std::int64_t max_abs_coord, std::size_t dim) {
  return max_abs_coord <= (std::int64_t{1} << 20) && dim <= 5;
}

template <class T>
T to_scalar(std::int64_t x) {
  return T(x);
}

using Wide = __int128;

template <>
inline Wide to_scalar<Wide>(std::int64_t x) {
  return static_cast<Wide>(x);
}

template <>
inline Integer to_scalar<Integer>(std::int64_t x) {
  return Integer(x);
}

template <class T>
int sign_of(const T& x) {
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

/// Fraction-free determinant.
template <class T>
T det(std::vector<std::vector<T>> m) {
  const std::size_t n = m.size();
  if (n == 0) return T(1);
  T sign = 1;
  T prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return T(0);
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

/// Indices of a maximal set of linearly independent rows (greedy, in order).
template <class T>
std::vector<std::size_t> independent_rows(const std::vector<std::vector<T>>& m) {
  std::vector<std::size_t> chosen;
  if (m.empty()) return chosen;
  const std::size_t cols = m.front().size();
  // Echelon rows kept fraction-free; a row is independent iff it does not
  // reduce to zero against the rows chosen so far.
  std::vector<std::vector<T>> echelon;
  std::vector<std::size_t> pivot_col;
  for (std::size_t r = 0; r < m.size(); ++r) {
    std::vector<T> row = m[r];
    for (std::size_t e = 0; e < echelon.size(); ++e) {
      const std::size_t c = pivot_col[e];
      if (row[c] == 0) continue;
      const T a = echelon[e][c];
      const T b = row[c];
      for (std::size_t j = 0; j < cols; ++j) row[j] = row[j] * a - echelon[e][j] * b;
      // keep entries small
      T g = 0;
      for (const auto& x : row) {
        T y = x < 0 ? T(-x) : x;
        while (y != 0) {
          T t = g % y;
          g = y;
          y = t;
        }
      }
      if (g > 1)
        for (auto& x : row) x /= g;
    }
    std::size_t c = 0;
    while (c < cols && row[c] == 0) ++c;
    if (c == cols) continue;
    chosen.push_back(r);
    echelon.push_back(std::move(row));
    pivot_col.push_back(c);
  }
  return chosen;
}

/// A generator of the kernel of the (rows x k) matrix whose columns are the
/// given points, provided the kernel is one-dimensional; empty otherwise.
template <class T>
std::vector<T> unique_dependence(const std::vector<const Coords*>& pts) {
  const std::size_t k = pts.size();
  const std::size_t rows = pts.front()->size();
  std::vector<std::vector<T>> m(rows, std::vector<T>(k));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < k; ++j) m[i][j] = to_scalar<T>((*pts[j])[i]);
  const auto ind = independent_rows(m);
  if (ind.size() + 1 != k) return {};
  std::vector<T> out(k);
  for (std::size_t drop = 0; drop < k; ++drop) {
    std::vector<std::vector<T>> minor;
    minor.reserve(ind.size());
    for (auto r : ind) {
      std::vector<T> row;
      row.reserve(k - 1);
      for (std::size_t j = 0; j < k; ++j)
        if (j != drop) row.push_back(m[r][j]);
      minor.push_back(std::move(row));
    }
    const T d = det(std::move(minor));
    out[drop] = (drop % 2 == 0) ? d : T(-d);
  }
  return out;
}

/// Sign of the orientation of x relative to the oriented facet
/// (f_0, ..., f_{r-1}), in coordinates with the last one dropped.
template <class T>
int orientation(const std::vector<const Coords*>& facet, const Coords& x) {
  const std::size_t r = facet.size();
  std::vector<std::vector<T>> m(r, std::vector<T>(r));
  for (std::size_t i = 0; i < r; ++i) {
    const Coords& row = (i + 1 < r) ? *facet[i + 1] : x;
    for (std::size_t j = 0; j < r; ++j) m[i][j] = to_scalar<T>(row[j]) - to_scalar<T>((*facet[0])[j]);
  }
  return sign_of(det(std::move(m)));
}

/// Sufficient condition for proper intersection: some facet hyperplane H of
/// one simplex has the other simplex weakly on its far side, and every vertex
/// of the other simplex on H is a shared vertex. Then the intersection lies
/// in the convex hull of the shared vertices, which is a common face.
template <class T>
bool separated_by_facet(const std::vector<int>& a_ids, const std::vector<const Coords*>& a,
                        const std::vector<int>& b_ids, const std::vector<const Coords*>& b) {
  const std::size_t k = a.size();
  for (std::size_t omit = 0; omit < k; ++omit) {
    std::vector<const Coords*> facet;
    for (std::size_t j = 0; j < k; ++j)
      if (j != omit) facet.push_back(a[j]);
    const int inside = orientation<T>(facet, *a[omit]);
    if (inside == 0) return false;
    bool ok = true;
    for (std::size_t v = 0; v < b.size() && ok; ++v) {
      const int s = orientation<T>(facet, *b[v]) * inside;
      if (s > 0) ok = false;
      else if (s == 0) {
        bool shared = false;
        for (std::size_t j = 0; j < k && !shared; ++j) shared = j != omit && a_ids[j] == b_ids[v];
        ok = shared;
      }
    }
    if (ok) return true;
  }
  return false;
}

/// Two lattice simplices meet properly (in a common face, possibly empty)
/// iff no circuit has its positive part among the vertices of one and its
/// negative part among the vertices of the other.
template <class T>
bool intersect_properly(const std::vector<int>& a_ids, const std::vector<const Coords*>& a,
                        const std::vector<int>& b_ids, const std::vector<const Coords*>& b) {
  const std::size_t na = a.size();
  const std::size_t nb = b.size();
  if (na == nb && na == a.front()->size() && na >= 2 &&
      (separated_by_facet<T>(a_ids, a, b_ids, b) || separated_by_facet<T>(b_ids, b, a_ids, a)))
    return true;
  const std::size_t max_circuit = a.front()->size() + 1;
  for (unsigned sa = 1; sa < (1u << na); ++sa) {
    for (unsigned sb = 1; sb < (1u << nb); ++sb) {
      const auto size = static_cast<std::size_t>(__builtin_popcount(sa) + __builtin_popcount(sb));
      if (size > max_circuit || size < 2) continue;
      bool disjoint = true;
      for (std::size_t i = 0; i < na && disjoint; ++i) {
        if (!(sa >> i & 1u)) continue;
        for (std::size_t j = 0; j < nb; ++j)
          if ((sb >> j & 1u) && a_ids[i] == b_ids[j]) {
            disjoint = false;
            break;
          }
      }
      if (!disjoint) continue;
      std::vector<const Coords*> z;
      for (std::size_t i = 0; i < na; ++i)
        if (sa >> i & 1u) z.push_back(a[i]);
      const std::size_t split = z.size();
      for (std::size_t j = 0; j < nb; ++j)
        if (sb >> j & 1u) z.push_back(b[j]);
      const auto dep = unique_dependence<T>(z);
      if (dep.empty()) continue;
      int pos_sign = 0;
      bool circuit = true;
      for (std::size_t i = 0; i < z.size() && circuit; ++i) {
        const int s = sign_of(dep[i]);
        if (s == 0) {
          circuit = false;
          break;
        }
        const int want = i < split ? s : -s;
        if (pos_sign == 0) pos_sign = want;
        if (want != pos_sign) circuit = false;
      }
      if (circuit) return false;
    }
  }
  return true;
}

/// Normalized volume of a lattice simplex given by r + 1 points with r + 1
/// barycentric coordinates (last coordinate dropped).
template <class T>
T simplex_volume(const std::vector<const Coords*>& pts) {
  const std::size_t r = pts.size() - 1;
  std::vector<std::vector<T>> m(r, std::vector<T>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      m[i][j] = to_scalar<T>((*pts[i + 1])[j]) - to_scalar<T>((*pts[0])[j]);
  return det(std::move(m));
}

}  // namespace stackyfan::detail
