#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "shufflelab/errors.hpp"
#include "shufflelab/moments.hpp"
#include "shufflelab/oracle.hpp"

using namespace shufflelab;
using doctest::Approx;

TEST_CASE("inv moments under riffles") {
  const auto r = moments::inv_moments_riffle(7, 2);
  CHECK(r.mean == 5.25);
  CHECK(r.variance == 8.3125);
  CHECK(r.exact);
  const auto trivial = moments::inv_moments_riffle(9, 1);
  CHECK(trivial.mean == 0);
  CHECK(trivial.variance == 0);
  CHECK(moments::inv_moments_riffle(2, 2).mean == 0.25);
}

TEST_CASE("des moments under riffles") {
  const auto r = moments::des_moments_riffle(7, 2);
  CHECK(r.mean == 1.5);
  CHECK(r.variance == 0.5);
  CHECK(moments::des_variance_as_printed(7, 2) == Rational(3, 8));
  const auto n3 = moments::des_moments_riffle(3, 2);
  CHECK(n3.mean == 0.5);
  CHECK(n3.variance == 0.25);
  CHECK(moments::des_variance_as_printed(3, 2) == Rational(1, 8));
  const auto trivial = moments::des_moments_riffle(7, 1);
  CHECK(trivial.mean == 0);
  CHECK(trivial.variance == 0);
  CHECK(moments::des_moments_riffle(1, 5).variance == 0);
}

TEST_CASE("LA moments of uniform permutations") {
  const auto r7 = moments::la_moments_uniform(7);
  CHECK(*r7.exact_mean == Rational(29, 6));
  CHECK(*r7.exact_variance == Rational(211, 180));
  CHECK(r7.mean == Approx(4.8333333333).epsilon(1e-10));
  CHECK(moments::la_moments_uniform(2).mean == 1.5);
  CHECK(moments::la_moments_uniform(2).variance == 0.25);
  CHECK(moments::la_moments_uniform(4).mean == Approx(17.0 / 6.0));
  CHECK(moments::la_moments_uniform(1).mean == 1);
  CHECK(moments::la_moments_uniform(1).variance == 0);
}

TEST_CASE("word LA asymptotics") {
  CHECK(moments::la_word_gamma_squared(2) == Approx(0.375).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(moments::la_moments_words(10, 1), "degenerate alphabet", InvalidArgument);
  const auto r = moments::la_moments_words(10'000, 3);
  CHECK_FALSE(r.exact);
  CHECK(r.mean == Approx(10'000.0 * (2.0 / 3.0 - 1.0 / 9.0)));
  CHECK(moments::la_moments_words(1'000'000, 1'000'000).mean / 1e6 == Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("closed forms equal exact laws for n <= 7, a <= 4") {
  for (int a = 1; a <= 4; ++a) {
    const auto p = ProbabilityVector::uniform(a);
    for (int n = 1; n <= 7; ++n) {
      CAPTURE(n);
      CAPTURE(a);
      const auto inv = oracle::exact_dist_words(n, p, StatisticKind::Inversions);
      const auto inv_r = moments::inv_moments_riffle(n, a);
      CHECK(inv.mean() == *inv_r.exact_mean);
      CHECK(inv.variance() == *inv_r.exact_variance);
      const auto des = oracle::exact_dist_words(n, p, StatisticKind::Descents);
      const auto des_r = moments::des_moments_riffle(n, a);
      CHECK(des.mean() == *des_r.exact_mean);
      CHECK(des.variance() == *des_r.exact_variance);
    }
  }
  for (int n = 1; n <= 7; ++n) {
    CAPTURE(n);
    const auto la = oracle::exact_dist_uniform(n, StatisticKind::LongestAlternating);
    const auto r = moments::la_moments_uniform(n);
    CHECK(la.mean() == *r.exact_mean);
    CHECK(la.variance() == *r.exact_variance);
    const auto des = oracle::exact_dist_uniform(n, StatisticKind::Descents);
    CHECK(des.mean() == *moments::des_moments_uniform(n).exact_mean);
    CHECK(des.variance() == *moments::des_moments_uniform(n).exact_variance);
    const auto inv = oracle::exact_dist_uniform(n, StatisticKind::Inversions);
    CHECK(inv.mean() == *moments::inv_moments_uniform(n).exact_mean);
    CHECK(inv.variance() == *moments::inv_moments_uniform(n).exact_variance);
  }
}

TEST_CASE("LA moments of two-pile riffles match the permutation law") {
  for (const auto* weights : {"1,1", "1/3,2/3", "1/5,4/5"}) {
    const auto p = ProbabilityVector::parse(weights);
    for (int n = 1; n <= 9; ++n) {
      CAPTURE(n);
      CAPTURE(weights);
      const auto law = oracle::exact_perm_law_riffle(n, p);
      const auto la = oracle::pushforward(law, StatisticKind::LongestAlternating, "riffle");
      const auto r = moments::la_moments_riffle2(n, p);
      CHECK(la.mean() == *r.exact_mean);
      CHECK(la.variance() == *r.exact_variance);
    }
  }
  CHECK_THROWS_AS(moments::la_moments_riffle2(5, ProbabilityVector::uniform(3)), InvalidArgument);
}

TEST_CASE("standardize") {
  const auto des = moments::des_moments_riffle(7, 2);
  CHECK(moments::standardize(des.mean, des) == 0);
  CHECK(moments::standardize(3, des) == Approx(1.5 / std::sqrt(0.5)));
  const auto inv = moments::inv_moments_riffle(7, 2);
  CHECK(moments::standardize(5.25, inv) == 0);
  CHECK_THROWS_WITH_AS(moments::standardize(0, moments::inv_moments_riffle(7, 1)), "degenerate statistic",
                       InvalidArgument);
  for (double v : {-3.0, 0.0, 0.5, 11.0, 20.0}) {
    CHECK(moments::unstandardize(moments::standardize(v, inv), inv) == Approx(v));
  }
}

TEST_CASE("inv_std_scale_theorem") {
  CHECK(moments::inv_std_scale_theorem(100, 2) == Approx(142.89).epsilon(1e-4));
  CHECK(moments::inv_std_scale_theorem(2, 2) == Approx(0.2041).epsilon(1e-3));
  for (int n : {10, 100, 1000}) {
    const double ratio2 = std::pow(moments::inv_std_scale_theorem(n, 3), 2) / moments::inv_moments_riffle(n, 3).variance;
    CHECK(ratio2 == Approx(2.0 * (n - 1) / (2.0 * n + 5)));
  }
  CHECK_THROWS_AS(moments::inv_std_scale_theorem(1, 2), InvalidArgument);
  CHECK_THROWS_AS(moments::inv_std_scale_theorem(5, 1), InvalidArgument);
}

TEST_CASE("variances are nonnegative") {
  for (int n = 1; n <= 60; ++n) {
    for (int a = 1; a <= 8; ++a) {
      CHECK(moments::inv_moments_riffle(n, a).variance >= 0);
      CHECK(moments::des_moments_riffle(n, a).variance >= 0);
    }
    CHECK(moments::la_moments_uniform(n).variance >= 0);
  }
}
