#include "shufflelab/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "shufflelab/errors.hpp"

namespace shufflelab {

namespace {

void check_bijection(std::span<const int> values) {
  const auto n = values.size();
  if (n == 0) throw InvalidArgument("permutation must have n >= 1");
  std::vector<bool> seen(n + 1, false);
  for (std::size_t i = 0; i < n; ++i) {
    const int v = values[i];
    if (v < 1 || static_cast<std::size_t>(v) > n) {
      throw InvalidArgument("permutation value " + std::to_string(v) + " at position " +
                            std::to_string(i + 1) + " is outside 1.." + std::to_string(n));
    }
    if (seen[v]) {
      throw InvalidArgument("permutation value " + std::to_string(v) + " repeated at position " +
                            std::to_string(i + 1));
    }
    seen[v] = true;
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> one_line) : values_(std::move(one_line)) {
  check_bijection(values_);
}

Permutation::Permutation(std::initializer_list<int> one_line)
    : Permutation(std::vector<int>(one_line)) {}

Permutation Permutation::identity(std::size_t n) {
  if (n == 0) throw InvalidArgument("permutation must have n >= 1");
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v), Trusted{});
}

Permutation Permutation::from_trusted(std::vector<int> one_line) {
#ifndef NDEBUG
  check_bijection(one_line);
#endif
  return Permutation(std::move(one_line), Trusted{});
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] != static_cast<int>(i + 1)) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ' ';
    os << values_[i];
  }
  return os.str();
}

Word::Word(std::vector<int> digits, int alphabet_size)
    : digits_(std::move(digits)), alphabet_size_(alphabet_size) {
  if (alphabet_size_ < 1) throw InvalidArgument("alphabet size must be >= 1");
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (digits_[i] < 1 || digits_[i] > alphabet_size_) {
      throw InvalidArgument("digit " + std::to_string(digits_[i]) + " at position " +
                            std::to_string(i + 1) + " is outside 1.." +
                            std::to_string(alphabet_size_));
    }
  }
}

Permutation invert(const Permutation& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i] - 1] = static_cast<int>(i + 1);
  return Permutation::from_trusted(std::move(inv));
}

Permutation then(const Permutation& first, const Permutation& second) {
  if (first.size() != second.size()) {
    throw InvalidArgument("cannot compose permutations of different sizes");
  }
  std::vector<int> out(first.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = first[second[i] - 1];
  return Permutation::from_trusted(std::move(out));
}

Permutation rank_sequence(std::span<const double> reals) {
  const auto n = reals.size();
  if (n == 0) throw InvalidArgument("empty sequence");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t l, std::size_t r) { return reals[l] < reals[r]; });
  std::vector<int> ranks(n);
  for (std::size_t r = 0; r < n; ++r) {
    if (r > 0 && !(reals[order[r - 1]] < reals[order[r]])) {
      throw InvalidArgument("ranks undefined under ties");
    }
    ranks[order[r]] = static_cast<int>(r + 1);
  }
  return Permutation::from_trusted(std::move(ranks));
}

Permutation inverse_shuffle_image(const Word& word) {
  const auto a = static_cast<std::size_t>(word.alphabet_size());
  // next[d] = next free sorted position for digit d (counting sort offsets)
  std::vector<int> next(a + 2, 0);
  for (int d : word.digits()) ++next[d + 1];
  next[1] = 1;
  for (std::size_t d = 2; d <= a + 1; ++d) next[d] += next[d - 1];
  std::vector<int> out(word.size());
  for (std::size_t i = 0; i < word.size(); ++i) out[i] = next[word[i]]++;
  return Permutation::from_trusted(std::move(out));
}

}  // namespace shufflelab
