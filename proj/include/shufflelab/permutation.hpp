#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace shufflelab {

/// A permutation of {1..n} in one-line notation: values()[i] is the image of
/// position i+1. Construction validates the bijection.
class Permutation {
 public:
  explicit Permutation(std::vector<int> one_line);
  Permutation(std::initializer_list<int> one_line);

  static Permutation identity(std::size_t n);

  /// Skips validation; for hot paths whose output is a bijection by construction.
  static Permutation from_trusted(std::vector<int> one_line);

  std::size_t size() const noexcept { return values_.size(); }
  int operator[](std::size_t i) const noexcept { return values_[i]; }
  std::span<const int> values() const noexcept { return values_; }

  bool is_identity() const noexcept;
  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Trusted {};
  Permutation(std::vector<int> one_line, Trusted) : values_(std::move(one_line)) {}

  std::vector<int> values_;
};

/// A word over the alphabet {1..alphabet_size}.
class Word {
 public:
  Word(std::vector<int> digits, int alphabet_size);

  std::size_t size() const noexcept { return digits_.size(); }
  int alphabet_size() const noexcept { return alphabet_size_; }
  int operator[](std::size_t i) const noexcept { return digits_[i]; }
  std::span<const int> digits() const noexcept { return digits_; }

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<int> digits_;
  int alphabet_size_;
};

/// result[perm[i]] = i (1-based values).
Permutation invert(const Permutation& perm);

/// `first` is applied to the deck, then `second`. With one-line notation read
/// as "card at position i", the composite puts card first[second[i]] at i.
Permutation then(const Permutation& first, const Permutation& second);

/// Ranks of distinct reals, 1 = smallest. Ties throw InvalidArgument.
Permutation rank_sequence(std::span<const double> reals);

/// Position (1-based) of each card after stably sorting the deck by digit:
/// result[i] = #{j : w[j] < w[i]} + #{j <= i : w[j] = w[i]}.
Permutation inverse_shuffle_image(const Word& word);

}  // namespace shufflelab
