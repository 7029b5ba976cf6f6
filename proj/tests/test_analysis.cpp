#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "shufflelab/analysis.hpp"
#include "shufflelab/errors.hpp"

using namespace shufflelab;
using doctest::Approx;

TEST_CASE("run_monte_carlo is independent of worker count") {
  const ShuffleModel model = RiffleInverse{25, ProbabilityVector::parse("1/3,2/3")};
  const auto one = analysis::run_monte_carlo(model, StatisticKind::Inversions, 300'000, 11, 1);
  const auto eight = analysis::run_monte_carlo(model, StatisticKind::Inversions, 300'000, 11, 8);
  CHECK(one.counts == eight.counts);
  const auto small_chunks = analysis::run_monte_carlo(model, StatisticKind::Inversions, 5000, 11, 3, 100);
  CHECK(small_chunks.counts == analysis::run_monte_carlo(model, StatisticKind::Inversions, 5000, 11, 1, 100).counts);
  std::uint64_t total = 0;
  for (const auto& [v, c] : one.counts) total += c;
  CHECK(total == 300'000);
  CHECK(one.counts != analysis::run_monte_carlo(model, StatisticKind::Inversions, 300'000, 12, 1).counts);
  CHECK_THROWS_AS(analysis::run_monte_carlo(model, StatisticKind::Inversions, 0, 11, 1), InvalidArgument);
}

TEST_CASE("multi-statistic runs evaluate every statistic on the same draw") {
  const ShuffleModel model = UniformPermutation{6};
  const auto both = analysis::run_monte_carlo(model, {StatisticKind::Descents, StatisticKind::Inversions}, 70'000, 5, 4);
  REQUIRE(both.size() == 2);
  CHECK(both[0].counts == analysis::run_monte_carlo(model, StatisticKind::Descents, 70'000, 5, 2).counts);
  CHECK(both[1].counts == analysis::run_monte_carlo(model, StatisticKind::Inversions, 70'000, 5, 2).counts);
}

TEST_CASE("uniform S3 descent counts") {
  const auto emp = analysis::run_monte_carlo(UniformPermutation{3}, StatisticKind::Descents, 600'000, 3, 4);
  const std::map<std::int64_t, double> p{{0, 1.0 / 6}, {1, 4.0 / 6}, {2, 1.0 / 6}};
  for (const auto& [v, q] : p) {
    const double expected = 600'000 * q;
    CHECK(std::abs(static_cast<double>(emp.counts.at(v)) - expected) <= 3 * std::sqrt(600'000 * q * (1 - q)));
  }
}

TEST_CASE("normal_cdf") {
  CHECK(analysis::normal_cdf(0) == 0.5);
  CHECK(analysis::normal_cdf(1.959963984540054) == Approx(0.975).epsilon(1e-12));
  CHECK(analysis::normal_cdf(-3) == Approx(0.0013498980316301).epsilon(1e-10));
  CHECK(analysis::normal_cdf(-40) >= 0);
}

TEST_CASE("kolmogorov_to_normal") {
  const auto point = analysis::kolmogorov_to_normal(std::map<std::int64_t, double>{{0, 1.0}}, 0, 1);
  CHECK(point.d_k >= 0.5);
  CHECK(point.d_k <= 1);
  CHECK_THROWS_AS(analysis::kolmogorov_to_normal(std::map<std::int64_t, double>{{0, 1.0}}, 0, 0), InvalidArgument);

  // discretized normal on a grid of width 1/k, rescaled onto the integers
  double previous = 1;
  for (int k : {1, 4, 16, 64}) {
    std::map<std::int64_t, double> pmf;
    for (int v = -8 * k; v <= 8 * k; ++v) {
      pmf[v] = analysis::normal_cdf((v + 0.5) / k) - analysis::normal_cdf((v - 0.5) / k);
    }
    double total = 0;
    for (const auto& [v, q] : pmf) total += q;
    for (auto& [v, q] : pmf) q /= total;
    const double dk = analysis::kolmogorov_to_normal(pmf, 0, k).d_k;
    CHECK(dk < previous);
    previous = dk;
  }
  CHECK(previous < 0.01);
}

TEST_CASE("inv under a riffle of 100 cards is close to normal") {
  const auto emp = analysis::run_monte_carlo(RiffleInverse{100, ProbabilityVector::uniform(2)},
                                             StatisticKind::Inversions, 100'000, 2024, 4);
  const auto m = moments::inv_moments_riffle(100, 2);
  CHECK(analysis::kolmogorov_to_normal(emp, m.mean, m.sd()).d_k < 0.05);
}

TEST_CASE("tv_distance") {
  const auto u3 = oracle::exact_dist_uniform(3, StatisticKind::Inversions);
  CHECK(analysis::tv_distance(u3, u3) == 0);
  oracle::ExactDistribution a, b;
  a.support = {{0, Rational(1)}};
  b.support = {{1, Rational(1)}};
  CHECK(analysis::tv_distance(a, b) == 1);
  oracle::ExactDistribution bad;
  bad.support = {{0, Rational(1, 2)}};
  CHECK_THROWS_AS(analysis::tv_distance(a, bad), InvalidArgument);
  CHECK_THROWS_AS(analysis::tv_distance(std::map<std::int64_t, double>{{0, 0.5}},
                                        std::map<std::int64_t, double>{{0, 1.0}}),
                  InvalidArgument);

  const auto r33 = oracle::exact_dist_words(3, ProbabilityVector::uniform(3), StatisticKind::Inversions);
  CHECK(analysis::tv_distance(r33, u3) <= Rational(7, 9));

  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> unit(0, 1);
  auto random_law = [&] {
    std::map<std::int64_t, double> d;
    double total = 0;
    for (int v = 0; v < 6; ++v) total += d[v] = unit(gen) < 0.3 ? 0.0 : unit(gen);
    if (total == 0) d[0] = total = 1;
    for (auto& [v, q] : d) q /= total;
    return d;
  };
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = random_law(), y = random_law(), z = random_law();
    const double xy = analysis::tv_distance(x, y);
    CHECK(xy == Approx(analysis::tv_distance(y, x)).epsilon(1e-15));
    CHECK(xy <= analysis::tv_distance(x, z) + analysis::tv_distance(z, y) + 1e-12);
    CHECK(xy >= 0);
    CHECK(xy <= 1);
  }
}

TEST_CASE("tv_bound") {
  CHECK(analysis::tv_bound_exact(1, 5) == 0);
  CHECK(analysis::tv_bound_exact(3, 3) == Rational(7, 9));
  CHECK(analysis::tv_bound(3, 300) == Approx(0.00993).epsilon(1e-3));
  CHECK_THROWS_WITH_AS(analysis::tv_bound(4, 3), "bound requires a >= n", InvalidArgument);
  for (int n = 2; n <= 5; ++n) {
    for (int a = n; a <= n + 3; ++a) {
      const auto bound = analysis::tv_bound_exact(n, a);
      CHECK(analysis::tv_bound_exact(n, a + 1) < bound);
      for (auto stat : {StatisticKind::Descents, StatisticKind::Inversions}) {
        const auto riffle = oracle::exact_dist_words(n, ProbabilityVector::uniform(a), stat);
        CHECK(analysis::tv_distance(riffle, oracle::exact_dist_uniform(n, stat)) <= bound);
      }
    }
  }
}

TEST_CASE("exact convolution distances") {
  const auto p42 = oracle::exact_perm_law_riffle(4, ProbabilityVector::uniform(2));
  CHECK(analysis::tv_distance(oracle::convolve_laws(p42, p42),
                              oracle::exact_perm_law_riffle(4, ProbabilityVector::uniform(4))) == 0);
  CHECK(analysis::tv_distance(p42, oracle::exact_perm_law_uniform(4)) > 0);
}

TEST_CASE("verify_couplings") {
  for (const auto* weights : {"1,1", "1,1,1,1,1", "1/2,1/3,1/6"}) {
    const auto report = analysis::verify_couplings(60, ProbabilityVector::parse(weights), 2000, 7, 2);
    CAPTURE(weights);
    CHECK(report.failures == 0);
    CHECK(report.first_failures.empty());
  }
  const auto two = analysis::verify_couplings(2, ProbabilityVector::uniform(2), 5000, 1);
  CHECK(two.failures == 0);
  // the strict-inequality form of the LA identity misses every sample ending in equal digits
  CHECK(two.eq45_literal_mismatches > 0);
  const auto constant = analysis::verify_couplings(10, ProbabilityVector::parse("0,1"), 100, 1);
  CHECK(constant.failures == 0);
  CHECK(constant.la_pathwise_matches == 100);
  CHECK(constant.eq45_literal_mismatches == 100);
}

TEST_CASE("rate_check") {
  const auto family = [](int n) -> ShuffleModel { return RiffleInverse{n, ProbabilityVector::uniform(2)}; };
  const auto report = analysis::rate_check(
      family, "riffle", StatisticKind::Inversions, [](int n) { return moments::inv_moments_riffle(n, 2); },
      {20, 40, 80}, 20'000, 5, 4);
  CHECK(report.points.size() == 3);
  double max_scaled = 0;
  for (const auto& pt : report.points) {
    CHECK(pt.scaled == Approx(pt.d_k * std::sqrt(pt.n)));
    max_scaled = std::max(max_scaled, pt.scaled);
  }
  CHECK(report.c_hat == max_scaled);
  CHECK(analysis::ks_standard_error(10'000) == Approx(0.0087));
  CHECK_THROWS_WITH_AS(
      analysis::rate_check([](int n) -> ShuffleModel { return RiffleInverse{n, ProbabilityVector::uniform(1)}; },
                           "identity", StatisticKind::Inversions,
                           [](int n) { return moments::inv_moments_riffle(n, 1); }, {20, 40, 80}, 1000, 5, 1),
      "degenerate statistic at n=20", InvalidArgument);
}

TEST_CASE("dominance_check") {
  const auto n2 = analysis::dominance_check(2, {2, 4});
  CHECK(n2.pass);
  CHECK(oracle::exact_dist_words(2, ProbabilityVector::uniform(4), StatisticKind::Inversions).cdf(0) ==
        Rational(5, 8));
  CHECK(analysis::dominance_check(5, {2, 3, 4}).pass);
  CHECK(analysis::dominance_check(4, {2}).pass);
}

TEST_CASE("McDiarmid tail") {
  CHECK(analysis::mcdiarmid_bound(100, 0) == 2);
  CHECK(analysis::mcdiarmid_bound(100, 30) == Approx(0.2707).epsilon(1e-3));
  const auto report = analysis::mcdiarmid_tail_check(100, 20'000, 3, 4);
  CHECK(report.pass);
  CHECK(report.points.size() == 30);
  CHECK(report.points.back().empirical < report.points.back().bound);
}
