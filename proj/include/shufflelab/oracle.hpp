#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "shufflelab/permutation.hpp"
#include "shufflelab/probability.hpp"
#include "shufflelab/rational.hpp"
#include "shufflelab/shufflers.hpp"
#include "shufflelab/statistics.hpp"

/// Exact laws by enumeration and polynomial dynamic programming. All
/// arithmetic is exact; every enumeration checks an explicit budget and
/// throws BudgetExceeded instead of falling back to anything approximate.
namespace shufflelab::oracle {

/// 10^8 unless the environment variable SHUFFLELAB_BUDGET overrides it.
std::uint64_t default_budget();

struct ExactDistribution {
  std::map<std::int64_t, Rational> support;
  std::string model;
  StatisticKind statistic = StatisticKind::Descents;

  Rational total() const;
  Rational mean() const;
  Rational variance() const;
  /// P(X <= v).
  Rational cdf(std::int64_t v) const;

  friend bool operator==(const ExactDistribution&, const ExactDistribution&) = default;
};

/// Law of a random permutation.
using PermLaw = std::map<Permutation, Rational>;

/// Integer polynomial; coefficients[k] multiplies q^k. No trailing zeros.
struct IntPolynomial {
  std::vector<BigInt> coefficients;

  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  BigInt coefficient_sum() const;
  void trim();

  friend IntPolynomial operator*(const IntPolynomial& l, const IntPolynomial& r);
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;
};

/// Law of stat(X) for a word X of n i.i.d. digits with law p.
ExactDistribution exact_dist_words(int n, const ProbabilityVector& p, StatisticKind stat,
                                   std::uint64_t budget = default_budget());

/// Law of stat(pi) for pi uniform on S_n.
ExactDistribution exact_dist_uniform(int n, StatisticKind stat,
                                     std::uint64_t budget = default_budget());

/// P_{n,a,p} as the pushforward of the word law through inverse_shuffle_image.
PermLaw exact_perm_law_riffle(int n, const ProbabilityVector& p,
                              std::uint64_t budget = default_budget());

/// P_{n,a,p} from the forward description: multinomial cut, then every
/// interleaving of the piles with equal weight.
PermLaw exact_perm_law_riffle_forward(int n, const ProbabilityVector& p,
                                      std::uint64_t budget = default_budget());

PermLaw exact_perm_law_uniform(int n, std::uint64_t budget = default_budget());

/// Ordered top-m shuffle, forward: every choice of the m positions that
/// receive the top packet, equally likely.
PermLaw exact_perm_law_topm(int n, int m, std::uint64_t budget = default_budget());

/// Ordered top-m shuffle, inverse: every word with m digits 1 and n - m
/// digits 2, equally likely, through the inverse shuffle.
PermLaw exact_perm_law_topm_inverse(int n, int m, std::uint64_t budget = default_budget());

PermLaw point_mass(const Permutation& perm);

/// Law of stat(rho) for rho distributed as `law`.
ExactDistribution pushforward(const PermLaw& law, StatisticKind stat, std::string model);

/// Gaussian binomial [n choose k]_q.
IntPolynomial gaussian_binomial(int n, int k);

/// Inversion generating polynomial of the arrangements of {1^b1, ..., a^ba}.
IntPolynomial q_multinomial(std::span<const int> composition);

/// inv law under P_{n,a,p} as a mixture over pile-size compositions of
/// normalized q-multinomials.
ExactDistribution exact_inv_dist_via_galois(int n, const ProbabilityVector& p,
                                            std::uint64_t budget = default_budget());

/// des law under P_{n,a,p} by a transfer DP over (last digit, descent count).
ExactDistribution exact_des_dist_dp(int n, const ProbabilityVector& p,
                                    std::uint64_t budget = default_budget());

/// stat law under the ordered top-m shuffle, via the inverse description.
ExactDistribution exact_dist_topm(int n, int m, StatisticKind stat,
                                  std::uint64_t budget = default_budget());

/// Law of the composition: a draw from `first` acts on the deck, then an
/// independent draw from `second` (see shufflelab::then).
PermLaw convolve_laws(const PermLaw& first, const PermLaw& second,
                      std::uint64_t budget = default_budget());

/// Exact permutation law of any shuffle model (RandomWord excluded). The
/// alpha-constrained model is the uniform mixture of top-m laws over its
/// admissible pile sizes.
PermLaw exact_perm_law(const ShuffleModel& model, std::uint64_t budget = default_budget());

}  // namespace shufflelab::oracle
