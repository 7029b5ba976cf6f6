#pragma once

#include <optional>
#include <string>

#include "shufflelab/probability.hpp"
#include "shufflelab/rational.hpp"
#include "shufflelab/statistics.hpp"

namespace shufflelab::moments {

struct MomentReport {
  StatisticKind statistic;
  std::string model;
  double mean = 0.0;
  double variance = 0.0;
  /// Closed form exact for every n (false only for the asymptotic word-LA law).
  bool exact = true;
  std::optional<Rational> exact_mean;
  std::optional<Rational> exact_variance;

  double sd() const;
};

/// inv under P_{n,a}: mean n(n-1)(a-1)/(4a), variance n(n-1)(2n+5)(a^2-1)/(72a^2).
MomentReport inv_moments_riffle(int n, int a);

/// des under P_{n,a}: mean (n-1)(a-1)/(2a), variance (a^2-1)(n+1)/(12a^2) for n >= 2.
/// The adjacent indicators [X_i > X_{i+1}] are 1-dependent with n-2
/// neighbouring covariances of -(a^2-1)/(12a^2) each.
MomentReport des_moments_riffle(int n, int a);

/// (a^2-1)(n-1)/(12a^2): the descent variance as commonly printed, which
/// miscounts the neighbouring covariances. Kept for comparison only.
Rational des_variance_as_printed(int n, int a);

/// a -> infinity limits of the riffle moments (uniform permutations).
MomentReport inv_moments_uniform(int n);
MomentReport des_moments_uniform(int n);

/// LA of a uniform permutation: mean 2n/3 + 1/6, variance 8n/45 - 13/180.
/// The variance expression holds for n >= 4; n = 1, 2, 3 use the exact
/// values 0, 1/4 and 17/36.
MomentReport la_moments_uniform(int n);

/// Limiting variance constant of word LA over a uniform alphabet of size a:
/// (8/45) (1+1/a)(1-3/(4a))(1-1/(2a)) / (1-2/(a+1)).
double la_word_gamma_squared(int a);

/// Asymptotic word-LA moments: mean n(2/3 - 1/(3a)), variance n * gamma^2.
MomentReport la_moments_words(int n, int a);

/// Exact moments of LA(rho) for rho ~ P_{n,2,p}, from the pathwise identity
/// LA(rho) = 2 des(X) + [X_{n-1} <= X_n] on the coupled word. With
/// q = p_2 p_1 = P(X_i > X_{i+1}): E = 2(n-1)q + 1 - q and
/// Var = 4 Var(des) + q(1-q) - 4 Cov(des, [X_{n-1} > X_n]).
MomentReport la_moments_riffle2(int n, const ProbabilityVector& p);

/// (value - mean) / sd; zero variance throws InvalidArgument("degenerate statistic").
double standardize(double value, const MomentReport& report);
double unstandardize(double z, const MomentReport& report);

/// sqrt(n) (n-1) sqrt((a^2-1)/(36a^2)), the U-statistic projection scale of inv.
double inv_std_scale_theorem(int n, int a);

}  // namespace shufflelab::moments
