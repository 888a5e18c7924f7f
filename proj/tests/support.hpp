#pragma once

#include "stackyfan/triangulation.hpp"

#include <cstdint>
#include <vector>

namespace stackyfan::testing {

// 2 Delta^2 with points indexed lexicographically:
// 0=(0,0,2) 1=(0,1,1) 2=(0,2,0) 3=(1,0,1) 4=(1,1,0) 5=(2,0,0).
inline Triangulation medial() { return Triangulation{2, 2, {{0, 1, 3}, {1, 2, 4}, {1, 3, 4}, {3, 4, 5}}}.normalize(); }

// The non-invariant triangulation that fans the midpoint (0,1,1) to the
// opposite vertex (2,0,0).
inline Triangulation midpoint_fan() {
  return Triangulation{2, 2, {{0, 1, 3}, {1, 2, 4}, {1, 3, 5}, {1, 4, 5}}}.normalize();
}

// Brute-force order of { a in (Z/n)^{r+1} : sum a = 0 }, the anti-diagonal
// copy of mu_n^r in the torus.
inline std::int64_t kernel_order(int r, std::int64_t n) {
  std::int64_t count = 0;
  std::vector<std::int64_t> a(static_cast<std::size_t>(r + 1), 0);
  while (true) {
    std::int64_t s = 0;
    for (auto x : a) s += x;
    if (s % n == 0) ++count;
    std::size_t i = 0;
    while (i < a.size() && ++a[i] == n) a[i++] = 0;
    if (i == a.size()) break;
  }
  return count;
}

}  // namespace stackyfan::testing
