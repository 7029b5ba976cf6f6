#pragma once

// Independent, deliberately naive reference implementations used only by tests.

#include <cstdint>
#include <span>
#include <vector>

namespace shufflelab::test {

inline std::int64_t naive_inversions(std::span<const int> x) {
  std::int64_t count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) count += x[i] > x[j];
  }
  return count;
}

/// Longest subsequence x_{i1} > x_{i2} < x_{i3} > ... by O(n^2) dynamic
/// programming over end positions and parity.
inline int brute_longest_alternating(std::span<const int> x) {
  const std::size_t n = x.size();
  std::vector<int> odd(n, 0), even(n, 0);  // best length ending at i, odd/even
  int best = n > 0 ? 1 : 0;
  for (std::size_t i = 0; i < n; ++i) {
    odd[i] = 1;
    for (std::size_t j = 0; j < i; ++j) {
      if (odd[j] && x[j] > x[i]) even[i] = std::max(even[i], odd[j] + 1);
      if (even[j] && x[j] < x[i]) odd[i] = std::max(odd[i], even[j] + 1);
    }
    best = std::max({best, odd[i], even[i]});
  }
  return best;
}

/// Longest alternating subsequence by enumerating every subsequence (n <= 12).
inline int subset_longest_alternating(std::span<const int> x) {
  const std::size_t n = x.size();
  int best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1u) sub.push_back(x[i]);
    }
    bool ok = true;
    for (std::size_t k = 0; k + 1 < sub.size() && ok; ++k) {
      ok = k % 2 == 0 ? sub[k] > sub[k + 1] : sub[k] < sub[k + 1];
    }
    if (ok) best = std::max(best, static_cast<int>(sub.size()));
  }
  return best;
}

/// rho(i) = #{j : w_j < w_i} + #{j <= i : w_j = w_i}, quadratic.
inline std::vector<int> naive_image(std::span<const int> w) {
  std::vector<int> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    int v = 0;
    for (std::size_t j = 0; j < w.size(); ++j) v += w[j] < w[i] || (w[j] == w[i] && j <= i);
    out[i] = v;
  }
  return out;
}

}  // namespace shufflelab::test
