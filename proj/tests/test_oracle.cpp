#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "shufflelab/errors.hpp"
#include "shufflelab/oracle.hpp"

using namespace shufflelab;
using oracle::ExactDistribution;

namespace {

std::map<std::int64_t, Rational> law(std::initializer_list<std::pair<const std::int64_t, Rational>> l) {
  return std::map<std::int64_t, Rational>(l);
}

oracle::IntPolynomial poly(std::initializer_list<int> c) {
  oracle::IntPolynomial p;
  for (int v : c) p.coefficients.emplace_back(v);
  return p;
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("exact_dist_words") {
  const auto half = ProbabilityVector::uniform(2);
  CHECK(oracle::exact_dist_words(2, half, StatisticKind::Inversions).support ==
        law({{0, Rational(3, 4)}, {1, Rational(1, 4)}}));
  CHECK(oracle::exact_dist_words(1, half, StatisticKind::Inversions).support == law({{0, 1}}));
  CHECK(oracle::exact_dist_words(1, half, StatisticKind::Descents).support == law({{0, 1}}));
  CHECK(oracle::exact_dist_words(3, half, StatisticKind::Descents).support ==
        law({{0, Rational(1, 2)}, {1, Rational(1, 2)}}));
  // constant words have LA 1
  CHECK(oracle::exact_dist_words(4, ProbabilityVector::parse("0,1"), StatisticKind::LongestAlternating).support ==
        law({{1, 1}}));
  for (int a = 1; a <= 3; ++a) {
    for (auto stat : kAllStatistics) {
      const auto d = oracle::exact_dist_words(5, ProbabilityVector::uniform(a), stat);
      CHECK(d.total() == 1);
      for (const auto& [v, q] : d.support) CHECK(q > 0);
    }
  }
}

TEST_CASE("exact_dist_uniform") {
  CHECK(oracle::exact_dist_uniform(3, StatisticKind::Descents).support ==
        law({{0, Rational(1, 6)}, {1, Rational(2, 3)}, {2, Rational(1, 6)}}));
  CHECK(oracle::exact_dist_uniform(2, StatisticKind::Inversions).support ==
        law({{0, Rational(1, 2)}, {1, Rational(1, 2)}}));
  CHECK(oracle::exact_dist_uniform(7, StatisticKind::LongestAlternating).mean() == Rational(29, 6));
}

TEST_CASE("riffle permutation laws") {
  const auto half = ProbabilityVector::uniform(2);
  CHECK(oracle::exact_perm_law_riffle(4, half).at(Permutation::identity(4)) == Rational(5, 16));
  CHECK(oracle::exact_perm_law_riffle(3, ProbabilityVector::uniform(3)).at(Permutation::identity(3)) ==
        Rational(10, 27));
  CHECK(oracle::exact_perm_law_riffle(6, ProbabilityVector::uniform(1)) ==
        oracle::point_mass(Permutation::identity(6)));
  CHECK(oracle::exact_perm_law_riffle(7, half).at(Permutation{1, 2, 5, 3, 6, 7, 4}) == Rational(1, 128));
}

TEST_CASE("forward and inverse riffle descriptions agree") {
  for (const auto* weights : {"1", "1,1", "1,1,1", "1/3,2/3", "1/2,1/3,1/6", "0,1,1"}) {
    const auto p = ProbabilityVector::parse(weights);
    for (int n = 1; n <= 5; ++n) {
      CAPTURE(weights);
      CAPTURE(n);
      CHECK(oracle::exact_perm_law_riffle_forward(n, p) == oracle::exact_perm_law_riffle(n, p));
    }
  }
}

TEST_CASE("top-m forward and inverse descriptions agree") {
  for (int n = 1; n <= 6; ++n) {
    for (int m = 0; m <= n; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(oracle::exact_perm_law_topm(n, m) == oracle::exact_perm_law_topm_inverse(n, m));
    }
  }
}

TEST_CASE("exact_dist_topm") {
  CHECK(oracle::exact_dist_topm(5, 0, StatisticKind::Inversions).support == law({{0, 1}}));
  CHECK(oracle::exact_dist_topm(5, 0, StatisticKind::LongestAlternating).support == law({{1, 1}}));
  CHECK(oracle::exact_dist_topm(2, 1, StatisticKind::Inversions).support ==
        law({{0, Rational(1, 2)}, {1, Rational(1, 2)}}));
  const auto d = oracle::exact_dist_topm(6, 2, StatisticKind::Descents);
  for (const auto& [v, q] : d.support) CHECK((v >= 0 && v <= 2));
  CHECK(d.support.at(2) > 0);
  CHECK(d.total() == 1);
  // two ordered piles leave at most two rising sequences
  for (const auto& [perm, w] : oracle::exact_perm_law_topm(6, 2)) {
    CHECK(descents(std::span<const int>(invert(perm).values())) <= 1);
  }
}

TEST_CASE("q-multinomials") {
  CHECK(oracle::q_multinomial(std::array{2, 1}) == poly({1, 1, 1}));
  CHECK(oracle::q_multinomial(std::array{5}) == poly({1}));
  CHECK(oracle::q_multinomial(std::array{1, 1, 1}) == poly({1, 2, 2, 1}));
  CHECK(oracle::gaussian_binomial(4, 2) == poly({1, 1, 2, 1, 1}));
  CHECK(oracle::gaussian_binomial(3, 0) == poly({1}));
  const std::vector<std::vector<int>> compositions{{3, 2}, {2, 2, 2}, {0, 4, 1}, {1, 1, 1, 1, 1}, {4, 0, 3, 2}};
  for (const auto& b : compositions) {
    const auto q = oracle::q_multinomial(b);
    int n = 0, degree = 0;
    BigInt denom = 1;
    for (std::size_t i = 0; i < b.size(); ++i) {
      n += b[i];
      denom *= factorial(b[i]);
      for (std::size_t j = i + 1; j < b.size(); ++j) degree += b[i] * b[j];
    }
    CHECK(q.coefficient_sum() == factorial(n) / denom);
    CHECK(q.degree() == degree);
  }
}

TEST_CASE("galois and DP routes equal word enumeration") {
  for (const auto* weights : {"1,1", "1,1,1", "1/3,2/3", "1/3,1/3,1/3", "1/6,1/3,1/2"}) {
    const auto p = ProbabilityVector::parse(weights);
    for (int n = 1; n <= 8; ++n) {
      CAPTURE(weights);
      CAPTURE(n);
      const auto inv = oracle::exact_dist_words(n, p, StatisticKind::Inversions);
      CHECK(oracle::exact_inv_dist_via_galois(n, p).support == inv.support);
      const auto des = oracle::exact_dist_words(n, p, StatisticKind::Descents);
      CHECK(oracle::exact_des_dist_dp(n, p).support == des.support);
    }
  }
  const auto single = ProbabilityVector::uniform(1);
  CHECK(oracle::exact_inv_dist_via_galois(6, single).support == law({{0, 1}}));
  CHECK(oracle::exact_des_dist_dp(6, single).support == law({{0, 1}}));
  CHECK(oracle::exact_des_dist_dp(2, ProbabilityVector::uniform(3)).support.at(1) == Rational(1, 3));
  CHECK(oracle::exact_inv_dist_via_galois(2, ProbabilityVector::uniform(2)).support ==
        law({{0, Rational(3, 4)}, {1, Rational(1, 4)}}));
}

TEST_CASE("word law equals permutation law for des and inv") {
  for (const auto* weights : {"1,1", "1,1,1", "1/3,2/3", "1/4,1/4,1/2"}) {
    const auto p = ProbabilityVector::parse(weights);
    for (int n = 1; n <= 5; ++n) {
      const auto law = oracle::exact_perm_law_riffle(n, p);
      for (auto stat : {StatisticKind::Descents, StatisticKind::Inversions}) {
        CAPTURE(weights);
        CAPTURE(n);
        CHECK(oracle::pushforward(law, stat, "").support == oracle::exact_dist_words(n, p, stat).support);
      }
    }
  }
}

TEST_CASE("convolution") {
  const auto half = ProbabilityVector::uniform(2);
  const auto p42 = oracle::exact_perm_law_riffle(4, half);
  CHECK(oracle::convolve_laws(p42, oracle::point_mass(Permutation::identity(4))) == p42);
  CHECK(oracle::convolve_laws(oracle::point_mass(Permutation::identity(4)), p42) == p42);
  CHECK(oracle::convolve_laws(p42, p42) == oracle::exact_perm_law_riffle(4, ProbabilityVector::uniform(4)));

  // the first listed shuffle contributes the leading digit of the product alphabet
  const auto p = ProbabilityVector::parse("1/3,2/3");
  const auto q = ProbabilityVector::parse("1/4,3/4");
  for (int n = 2; n <= 5; ++n) {
    const auto c = oracle::convolve_laws(oracle::exact_perm_law_riffle(n, p), oracle::exact_perm_law_riffle(n, q));
    CHECK(c == oracle::exact_perm_law_riffle(n, tensor_product(p, q)));
    CHECK(c.size() <= oracle::exact_perm_law_riffle(n, p).size() * oracle::exact_perm_law_riffle(n, q).size());
    Rational total = 0;
    for (const auto& [perm, w] : c) total += w;
    CHECK(total == 1);
  }
  const auto c3 = oracle::convolve_laws(oracle::exact_perm_law_riffle(3, p), oracle::exact_perm_law_riffle(3, q));
  CHECK(c3 != oracle::exact_perm_law_riffle(3, tensor_product(q, p)));

  const auto topm = oracle::exact_perm_law(Convolution{{OrderedTopM{4, 2}, OrderedTopM{4, 1}}});
  CHECK(topm == oracle::convolve_laws(oracle::exact_perm_law_topm(4, 2), oracle::exact_perm_law_topm(4, 1)));
}

TEST_CASE("alpha-constrained law mixes top-m laws") {
  const auto law = oracle::exact_perm_law(AlphaConstrained{2, 0.0});
  CHECK(law.at(Permutation::identity(2)) == Rational(5, 6));
  CHECK(oracle::exact_perm_law_riffle(2, ProbabilityVector::uniform(2)).at(Permutation::identity(2)) ==
        Rational(3, 4));
  const auto mixed = oracle::exact_perm_law(AlphaConstrained{10, 0.4});
  Rational expected = 0;
  for (int m : {4, 5, 6}) expected += oracle::exact_perm_law_topm(10, m).at(Permutation::identity(10)) / 3;
  CHECK(mixed.at(Permutation::identity(10)) == expected);
}

TEST_CASE("budgets") {
  CHECK_THROWS_AS(oracle::exact_dist_words(20, ProbabilityVector::uniform(4), StatisticKind::Descents, 1'000'000),
                  BudgetExceeded);
  CHECK_THROWS_AS(oracle::exact_dist_uniform(12, StatisticKind::Descents), BudgetExceeded);
  CHECK_THROWS_AS(oracle::exact_perm_law_riffle(10, ProbabilityVector::uniform(2), 100), BudgetExceeded);
  // the DP routes handle sizes far beyond enumeration
  const auto des = oracle::exact_des_dist_dp(60, ProbabilityVector::uniform(4));
  CHECK(des.total() == 1);
  const auto inv = oracle::exact_inv_dist_via_galois(40, ProbabilityVector::uniform(2));
  CHECK(inv.total() == 1);
  CHECK(inv.mean() == Rational(195));
  try {
    oracle::exact_dist_words(30, ProbabilityVector::uniform(3), StatisticKind::Inversions, 1000);
    FAIL("expected budget error");
  } catch (const BudgetExceeded& e) {
    CHECK(std::string(e.what()).find("Monte Carlo") != std::string::npos);
  }
}

TEST_CASE("ExactDistribution accessors") {
  ExactDistribution d;
  d.support = law({{0, Rational(1, 4)}, {2, Rational(3, 4)}});
  CHECK(d.mean() == Rational(3, 2));
  CHECK(d.variance() == Rational(3, 4));
  CHECK(d.cdf(-1) == 0);
  CHECK(d.cdf(1) == Rational(1, 4));
  CHECK(d.cdf(5) == 1);
}

TEST_CASE("LA of the shuffle and LA of its word differ in law") {
  // ties in the word become ascents in rho: (2,1,1) has word LA 2 but rho = (3,1,2) has LA 3
  const auto half = ProbabilityVector::uniform(2);
  const auto rho = oracle::pushforward(oracle::exact_perm_law_riffle(3, half), StatisticKind::LongestAlternating, "");
  const auto word = oracle::exact_dist_words(3, half, StatisticKind::LongestAlternating);
  CHECK(rho.support == law({{1, Rational(1, 2)}, {2, Rational(1, 4)}, {3, Rational(1, 4)}}));
  CHECK(word.support == law({{1, Rational(1, 2)}, {2, Rational(3, 8)}, {3, Rational(1, 8)}}));
  CHECK(oracle::pushforward(oracle::exact_perm_law_riffle(2, half), StatisticKind::LongestAlternating, "").support ==
        oracle::exact_dist_words(2, half, StatisticKind::LongestAlternating).support);
}
