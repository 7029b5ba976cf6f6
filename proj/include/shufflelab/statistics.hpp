#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shufflelab/permutation.hpp"

namespace shufflelab {

enum class StatisticKind {
  Descents,
  Inversions,
  LongestAlternating,
  LocalMaxCount,
  LocalMinCount,
};

inline constexpr StatisticKind kAllStatistics[] = {
    StatisticKind::Descents, StatisticKind::Inversions,
    StatisticKind::LongestAlternating, StatisticKind::LocalMaxCount,
    StatisticKind::LocalMinCount};

/// Short names used on the command line and in JSON: des, inv, la, lmax, lmin.
std::string_view to_string(StatisticKind kind);
std::optional<StatisticKind> parse_statistic(std::string_view name);

/// #{i : seq[i] > seq[i+1]}. Ties are not descents.
std::int64_t descents(std::span<const int> seq);

/// #{(i,j) : i < j, seq[i] > seq[j]} by merge counting, O(n log n).
std::int64_t inversions(std::span<const int> seq);

/// Length of the longest alternating subsequence x_{i1} > x_{i2} < x_{i3} > ...
/// for sequences of distinct values: 1 + [x1 > x2] + #interior strict extrema.
std::int64_t la_distinct(std::span<const int> seq);

struct Extrema {
  std::vector<int> maxima;  // 1-based positions
  std::vector<int> minima;
};

/// Interior (2..n-1) strict local extrema of a sequence of distinct values.
Extrema local_extrema_distinct(std::span<const int> seq);

/// Local extrema under the tie-aware definitions for words. Position k is a
/// minimum when (x_k < x_{k+1} or k = n) and the last value change before k was
/// a drop. It is a maximum when (x_k > x_{k+1} or k = n) and either the last
/// change before k was a rise or every earlier entry equals x_k. Positions
/// are 1-based and include both ends.
Extrema local_extrema_word(std::span<const int> seq);

/// #local maxima + #local minima under the tie-aware definitions. Agrees with
/// la_distinct when entries are distinct.
std::int64_t la_word(std::span<const int> seq);

/// Evaluates a statistic. LA uses the tie-aware definition, which coincides
/// with la_distinct on permutations; LocalMax/MinCount count the tie-aware
/// extrema (boundaries included), so they always sum to LA.
std::int64_t statistic(StatisticKind kind, std::span<const int> seq);

}  // namespace shufflelab
