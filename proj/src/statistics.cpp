#include "shufflelab/statistics.hpp"

#include <unordered_set>

#include "shufflelab/errors.hpp"

namespace shufflelab {

namespace {

void require_nonempty(std::span<const int> seq) {
  if (seq.empty()) throw InvalidArgument("empty sequence");
}

void require_distinct(std::span<const int> seq) {
  std::unordered_set<int> seen;
  seen.reserve(seq.size() * 2);
  for (int v : seq) {
    if (!seen.insert(v).second) throw InvalidArgument("requires distinct entries");
  }
}

// Counts pairs i < j with v[i] > v[j] while merge-sorting v[lo, hi) using scratch.
std::int64_t merge_count(std::vector<int>& v, std::vector<int>& scratch, std::size_t lo,
                         std::size_t hi) {
  if (hi - lo < 2) return 0;
  if (hi - lo <= 16) {
    std::int64_t count = 0;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const int x = v[i];
      std::size_t j = i;
      while (j > lo && v[j - 1] > x) {
        v[j] = v[j - 1];
        --j;
        ++count;
      }
      v[j] = x;
    }
    return count;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  std::int64_t count = merge_count(v, scratch, lo, mid) + merge_count(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += static_cast<std::int64_t>(mid - i);
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

std::string_view to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::Descents: return "des";
    case StatisticKind::Inversions: return "inv";
    case StatisticKind::LongestAlternating: return "la";
    case StatisticKind::LocalMaxCount: return "lmax";
    case StatisticKind::LocalMinCount: return "lmin";
  }
  return "?";
}

std::optional<StatisticKind> parse_statistic(std::string_view name) {
  for (auto kind : kAllStatistics) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

std::int64_t descents(std::span<const int> seq) {
  require_nonempty(seq);
  std::int64_t count = 0;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) count += seq[i] > seq[i + 1];
  return count;
}

std::int64_t inversions(std::span<const int> seq) {
  require_nonempty(seq);
  std::vector<int> v(seq.begin(), seq.end());
  std::vector<int> scratch(v.size());
  return merge_count(v, scratch, 0, v.size());
}

Extrema local_extrema_distinct(std::span<const int> seq) {
  require_nonempty(seq);
  require_distinct(seq);
  Extrema out;
  for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
    if (seq[k - 1] < seq[k] && seq[k] > seq[k + 1]) out.maxima.push_back(static_cast<int>(k + 1));
    if (seq[k - 1] > seq[k] && seq[k] < seq[k + 1]) out.minima.push_back(static_cast<int>(k + 1));
  }
  return out;
}

std::int64_t la_distinct(std::span<const int> seq) {
  require_nonempty(seq);
  require_distinct(seq);
  if (seq.size() == 1) return 1;
  std::int64_t length = 1 + (seq[0] > seq[1]);
  for (std::size_t k = 1; k + 1 < seq.size(); ++k) {
    const bool peak = seq[k - 1] < seq[k] && seq[k] > seq[k + 1];
    const bool valley = seq[k - 1] > seq[k] && seq[k] < seq[k + 1];
    length += peak || valley;
  }
  return length;
}

Extrema local_extrema_word(std::span<const int> seq) {
  require_nonempty(seq);
  Extrema out;
  const std::size_t n = seq.size();
  // last_change: direction of the most recent value change before the current
  // plateau (+1 rise, -1 drop, 0 none yet).
  int last_change = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0 && seq[k] != seq[k - 1]) last_change = seq[k] > seq[k - 1] ? 1 : -1;
    const bool last = k + 1 == n;
    if ((last || seq[k] < seq[k + 1]) && last_change < 0) {
      out.minima.push_back(static_cast<int>(k + 1));
    }
    if ((last || seq[k] > seq[k + 1]) && last_change >= 0) {
      out.maxima.push_back(static_cast<int>(k + 1));
    }
  }
  return out;
}

std::int64_t la_word(std::span<const int> seq) {
  const auto ext = local_extrema_word(seq);
  return static_cast<std::int64_t>(ext.maxima.size() + ext.minima.size());
}

std::int64_t statistic(StatisticKind kind, std::span<const int> seq) {
  switch (kind) {
    case StatisticKind::Descents: return descents(seq);
    case StatisticKind::Inversions: return inversions(seq);
    case StatisticKind::LongestAlternating: return la_word(seq);
    case StatisticKind::LocalMaxCount:
      return static_cast<std::int64_t>(local_extrema_word(seq).maxima.size());
    case StatisticKind::LocalMinCount:
      return static_cast<std::int64_t>(local_extrema_word(seq).minima.size());
  }
  throw InvalidArgument("unknown statistic");
}

}  // namespace shufflelab
