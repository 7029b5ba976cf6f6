#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "shufflelab/moments.hpp"
#include "shufflelab/oracle.hpp"
#include "shufflelab/shufflers.hpp"
#include "shufflelab/statistics.hpp"

namespace shufflelab::analysis {

inline constexpr std::uint64_t kDefaultChunk = 1ULL << 16;

struct EmpiricalDistribution {
  std::map<std::int64_t, std::uint64_t> counts;
  std::uint64_t n_samples = 0;
  std::string model;
  StatisticKind statistic = StatisticKind::Descents;
  std::uint64_t master_seed = 0;
  unsigned worker_count = 1;

  double mean() const;
  double variance() const;
  /// counts / n_samples.
  std::map<std::int64_t, double> frequencies() const;
};

/// n_samples i.i.d. draws of every statistic in `stats` (all evaluated on the
/// same draw). Chunk i of `chunk` samples uses stream (master_seed, i), so the
/// counts do not depend on `workers`.
std::vector<EmpiricalDistribution> run_monte_carlo(const ShuffleModel& model,
                                                   const std::vector<StatisticKind>& stats,
                                                   std::uint64_t n_samples,
                                                   std::uint64_t master_seed, unsigned workers,
                                                   std::uint64_t chunk = kDefaultChunk);

EmpiricalDistribution run_monte_carlo(const ShuffleModel& model, StatisticKind stat,
                                      std::uint64_t n_samples, std::uint64_t master_seed,
                                      unsigned workers, std::uint64_t chunk = kDefaultChunk);

// --- distances -------------------------------------------------------------

/// Standard normal CDF, 0.5 erfc(-z / sqrt 2).
double normal_cdf(double z);

enum class Standardization { ExactVariance, TheoremDenominator, Empirical };
std::string_view to_string(Standardization s);

struct NormalityReport {
  double d_k = 0.0;
  Standardization standardization = Standardization::ExactVariance;
  std::string moments_source;
  double mean = 0.0;
  double sd = 0.0;
  int n = 0;
  std::uint64_t n_samples = 0;
};

/// sup_z |F_emp(z) - Phi((z - mean)/sd)|, attained at a jump of F_emp, so both
/// one-sided limits are compared at every support point.
NormalityReport kolmogorov_to_normal(const std::map<std::int64_t, double>& pmf, double mean,
                                     double sd);
NormalityReport kolmogorov_to_normal(const EmpiricalDistribution& emp, double mean, double sd);

/// Half the L1 distance. Exact laws must sum to exactly 1; floating ones
/// within 1e-9. Otherwise InvalidArgument.
Rational tv_distance(const oracle::ExactDistribution& d1, const oracle::ExactDistribution& d2);
Rational tv_distance(const oracle::PermLaw& d1, const oracle::PermLaw& d2);
double tv_distance(const std::map<std::int64_t, double>& d1,
                   const std::map<std::int64_t, double>& d2);
double tv_distance(const std::map<Permutation, double>& d1, const std::map<Permutation, double>& d2);

/// 1 - prod_{i<n} (a - i)/a, the TV bound between P_{n,a} statistics of
/// descents/inversions and their uniform laws. Requires a >= n.
Rational tv_bound_exact(int n, int a);
double tv_bound(int n, int a);

// --- verdicts ---------------------------------------------------------------

struct CouplingFailure {
  std::uint64_t sample_index;
  std::uint64_t stream_index;
  std::string check;
  std::string detail;
};

struct CouplingReport {
  int n = 0;
  int a = 0;
  std::string p;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t failures = 0;
  std::map<std::string, std::uint64_t> failures_by_check;
  std::vector<CouplingFailure> first_failures;  // at most 10
  /// a == 2 only: samples where LA(rho) != 2 des(X) + [X_{n-1} < X_n] (strict).
  std::uint64_t eq45_literal_mismatches = 0;
  /// Samples where LA(rho) == la_word(X); recorded, never asserted.
  std::uint64_t la_pathwise_matches = 0;
};

/// Checks on every coupled sample from the inverse shuffle: inversion/descent
/// identities between rho and the word, the pairwise order coupling, and for
/// a == 2 the LA identity LA(rho) = 2 des(X) + [X_{n-1} <= X_n] and the
/// extremum/descent characterization at every interior position.
CouplingReport verify_couplings(int n, const ProbabilityVector& p, std::uint64_t n_samples,
                                std::uint64_t seed, unsigned workers = 1);

struct RatePoint {
  int n = 0;
  double d_k = 0.0;
  double scaled = 0.0;  // d_k * sqrt(n)
};

struct RateReport {
  std::string statistic;
  std::string family;
  std::vector<RatePoint> points;
  double c_hat = 0.0;
  double threshold = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  bool pass = false;
};

/// Monte Carlo standard error of a KS statistic from `samples` draws.
double ks_standard_error(std::uint64_t samples);

/// d_K(n) over the grid with the supplied moments; passes when
/// d_K * sqrt(n) at the largest n is at most 1.25 times its value at the
/// smallest n plus three Monte Carlo standard errors of the scaled statistic.
RateReport rate_check(const std::function<ShuffleModel(int)>& family, const std::string& family_name,
                      StatisticKind stat,
                      const std::function<moments::MomentReport(int)>& moments_for,
                      const std::vector<int>& grid, std::uint64_t n_samples, std::uint64_t seed,
                      unsigned workers);

struct DominanceViolation {
  int a_lower = 0;  // F_{a_lower} should dominate F_{a_upper}
  std::string upper;
  std::int64_t witness = 0;
  std::string lower_cdf;
  std::string upper_cdf;
};

struct DominanceReport {
  int n = 0;
  std::vector<int> a_list;
  bool pass = true;
  std::vector<DominanceViolation> violations;
};

/// Pointwise CDF ordering F_2 >= F_a >= F_uniform of inv, exactly.
DominanceReport dominance_check(int n, const std::vector<int>& a_list,
                                std::uint64_t budget = oracle::default_budget());

struct TailPoint {
  int t = 0;
  double empirical = 0.0;
  double bound = 0.0;
  double allowance = 0.0;  // bound + 3 binomial standard errors
  bool pass = true;
};

struct TailReport {
  int n = 0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  double mu = 0.0;
  std::vector<TailPoint> points;
  bool pass = true;
};

/// 2 exp(-2 t^2 / (9 n)).
double mcdiarmid_bound(int n, double t);

/// Empirical P(|LA - mu| >= t) for uniform permutations, t = 1..ceil(3 sqrt n).
TailReport mcdiarmid_tail_check(int n, std::uint64_t n_samples, std::uint64_t seed,
                                unsigned workers = 1);

}  // namespace shufflelab::analysis
