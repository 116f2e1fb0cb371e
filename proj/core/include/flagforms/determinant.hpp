#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace flagforms {

// Determinant by Laplace expansion along rows, memoized on the set of
// consumed columns. Only +, -, * of T are used, so it works over any
// commutative ring; `is_zero` lets sparse matrices skip dead branches.
template <class T, class IsZero>
T determinant(const std::vector<std::vector<T>>& m, const T& zero, const T& one, IsZero is_zero) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  if (n > 20) throw std::invalid_argument("determinant: matrix too large");
  std::unordered_map<std::uint32_t, T> memo;
  auto rec = [&](auto&& self, std::uint32_t used) -> T {
    const auto row = static_cast<std::size_t>(std::popcount(used));
    if (row == n) return one;
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    T acc = zero;
    int free_before = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const std::uint32_t bit = 1U << c;
      if (used & bit) continue;
      if (!is_zero(m[row][c])) {
        T minor = self(self, used | bit);
        if (!is_zero(minor)) {
          T term = m[row][c] * minor;
          if (free_before % 2 == 0) {
            acc = acc + term;
          } else {
            acc = acc - term;
          }
        }
      }
      ++free_before;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return rec(rec, 0U);
}

}  // namespace flagforms
