#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "shufflelab/permutation.hpp"
#include "shufflelab/probability.hpp"
#include "shufflelab/rng.hpp"

namespace shufflelab {

/// Word and the permutation it induces: permutation = inverse_shuffle_image(word).
struct CoupledSample {
  Word word;
  Permutation permutation;
};

// --- primitive samplers ----------------------------------------------------

/// Pile sizes b_1..b_a ~ multinomial(n; p), tallied from n categorical draws.
std::vector<int> multinomial_cut(int n, const ProbabilityVector& p, RngStream& rng);

/// Uniform interleaving of piles that keeps each pile in order. Pile i holds
/// cards b_1+..+b_{i-1}+1 .. b_1+..+b_i; the result lists the card at each
/// position.
Permutation uniform_interleave(const std::vector<int>& pile_sizes, RngStream& rng);

/// a-shuffle, biased by p: multinomial cut followed by a uniform interleave.
Permutation sample_riffle_forward(int n, const ProbabilityVector& p, RngStream& rng);

/// Inverse a-shuffle: i.i.d. digits with law p, stable sort by digit; the
/// returned permutation (inverse of the sorting permutation) has law P_{n,a,p}.
CoupledSample sample_riffle_inverse(int n, const ProbabilityVector& p, RngStream& rng);

/// Uniform on S_n by Fisher-Yates.
Permutation sample_uniform(int n, RngStream& rng);

/// Uniform on S_n as the ranks of n i.i.d. uniforms; independent cross-check
/// of sample_uniform.
Permutation sample_uniform_by_ranks(int n, RngStream& rng);

/// Ordered top-m-to-random: the top m cards are interleaved uniformly into the
/// remaining n - m, both packets keeping their order.
Permutation sample_top_m(int n, int m, RngStream& rng);

/// Inverse description of the ordered top-m shuffle: a uniformly arranged
/// word with m digits 1 and n - m digits 2, pushed through the inverse shuffle.
CoupledSample sample_top_m_inverse(int n, int m, RngStream& rng);

/// The pile-size set {(n0, n1) : n0 + n1 = n, min(n0, n1) >= alpha n}, with
/// n0 ranging over 0..n. Empty set throws InvalidArgument("alpha too large for n").
std::vector<int> alpha_pile_sizes(int n, double alpha);

/// Two piles with sizes uniform over alpha_pile_sizes, then a uniform interleave.
Permutation sample_alpha_constrained(int n, double alpha, RngStream& rng);

// --- models ----------------------------------------------------------------

struct RiffleForward {
  int n;
  ProbabilityVector p;
};
struct RiffleInverse {
  int n;
  ProbabilityVector p;
};
struct UniformPermutation {
  int n;
};
struct OrderedTopM {
  int n;
  int m;
};
struct AlphaConstrained {
  int n;
  double alpha;
};
/// An i.i.d. word with law p; statistics are taken on the word itself.
struct RandomWord {
  int n;
  ProbabilityVector p;
};
struct Convolution;

using ShuffleModel = std::variant<RiffleForward, RiffleInverse, UniformPermutation, OrderedTopM,
                                  AlphaConstrained, RandomWord, Convolution>;

/// Independent draws composed in list order: the first listed shuffle acts
/// first on the deck.
struct Convolution {
  std::vector<ShuffleModel> parts;
};

/// Throws InvalidArgument naming the offending parameter.
void validate(const ShuffleModel& model);

int deck_size(const ShuffleModel& model);

/// Compact descriptor, e.g. "riffle(n=7,a=2,p=1/2,1/2)".
std::string describe(const ShuffleModel& model);

/// Values the statistics are evaluated on: the permutation for shuffle models,
/// the digits for RandomWord.
std::vector<int> sample_values(const ShuffleModel& model, RngStream& rng);

/// Composition of independent draws, first listed acting first.
Permutation sample_convolution(const std::vector<ShuffleModel>& models, RngStream& rng);

/// Draws a permutation from any model other than RandomWord.
Permutation sample_permutation(const ShuffleModel& model, RngStream& rng);

}  // namespace shufflelab
