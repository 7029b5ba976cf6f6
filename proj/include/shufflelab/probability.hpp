#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "shufflelab/rational.hpp"
#include "shufflelab/rng.hpp"

namespace shufflelab {

/// Pile-size / digit law p = (p_1, ..., p_a). Held exactly; normalized on
/// construction. A double copy of the cumulative sums drives sampling.
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<Rational> weights);

  /// Doubles are converted through their exact binary value.
  static ProbabilityVector from_doubles(std::span<const double> weights);
  static ProbabilityVector uniform(int a);
  /// Comma-separated list such as "1/3,2/3" or "0.2,0.8".
  static ProbabilityVector parse(const std::string& text);

  int size() const noexcept { return static_cast<int>(exact_.size()); }
  const Rational& operator[](std::size_t i) const { return exact_[i]; }
  std::span<const Rational> exact() const noexcept { return exact_; }
  double probability(std::size_t i) const { return exact_[i].get_d(); }
  bool is_uniform() const;

  /// Digit in {1..a} drawn with law p.
  int draw(RngStream& rng) const;

  std::string to_string() const;

  friend bool operator==(const ProbabilityVector& l, const ProbabilityVector& r) {
    return l.exact_ == r.exact_;
  }

 private:
  std::vector<Rational> exact_;
  std::vector<double> cumulative_;
};

/// (i, j) -> p_i q_j in lexicographic order; length a*b.
ProbabilityVector tensor_product(const ProbabilityVector& p, const ProbabilityVector& q);

}  // namespace shufflelab
