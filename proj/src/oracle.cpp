#include "shufflelab/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <sstream>

#include "shufflelab/errors.hpp"

namespace shufflelab::oracle {

namespace {

void require_n(int n) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
}

void charge(double cost, std::uint64_t budget, const std::string& what) {
  if (cost > static_cast<double>(budget)) {
    std::ostringstream os;
    os << what << " needs about " << cost << " steps, over the enumeration budget of " << budget
       << "; use exact_inv_dist_via_galois / exact_des_dist_dp, Monte Carlo, or raise "
          "SHUFFLELAB_BUDGET";
    throw BudgetExceeded(os.str());
  }
}

double factorial_d(int n) { return std::tgamma(n + 1.0); }

double binomial_d(int n, int k) {
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                             std::lgamma(n - k + 1.0)));
}

std::string words_name(int n, const ProbabilityVector& p) {
  return "word(n=" + std::to_string(n) + ",a=" + std::to_string(p.size()) +
         ",p=" + p.to_string() + ")";
}

// Weight of a word with the given digit counts: prod p_i^{c_i}.
Rational count_weight(const ProbabilityVector& p, const std::vector<int>& counts) {
  Rational w = 1;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (counts[i] > 0) w *= pow(p[i], static_cast<unsigned long>(counts[i]));
  }
  return w;
}

// Calls visit(word, counts) for every word in {1..a}^n, in lexicographic order.
void for_each_word(int n, int a,
                   const std::function<void(const std::vector<int>&, const std::vector<int>&)>& visit) {
  std::vector<int> word(static_cast<std::size_t>(n), 1);
  std::vector<int> counts(static_cast<std::size_t>(a), 0);
  counts[0] = n;
  for (;;) {
    visit(word, counts);
    int i = n - 1;
    while (i >= 0 && word[static_cast<std::size_t>(i)] == a) {
      --counts[static_cast<std::size_t>(a - 1)];
      ++counts[0];
      word[static_cast<std::size_t>(i)] = 1;
      --i;
    }
    if (i < 0) return;
    auto& d = word[static_cast<std::size_t>(i)];
    --counts[static_cast<std::size_t>(d - 1)];
    ++d;
    ++counts[static_cast<std::size_t>(d - 1)];
  }
}

// Calls visit(b) for every weak composition of n into `parts` parts.
void for_each_composition(int n, int parts, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> b(static_cast<std::size_t>(parts), 0);
  std::function<void(int, int)> rec = [&](int index, int remaining) {
    if (index == parts - 1) {
      b[static_cast<std::size_t>(index)] = remaining;
      visit(b);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      b[static_cast<std::size_t>(index)] = k;
      rec(index + 1, remaining - k);
    }
  };
  rec(0, n);
}

template <class Key>
void add_mass(std::map<Key, Rational>& law, const Key& key, const Rational& mass) {
  if (mass == 0) return;
  auto [it, inserted] = law.try_emplace(key, mass);
  if (!inserted) it->second += mass;
}

}  // namespace

std::uint64_t default_budget() {
  if (const char* env = std::getenv("SHUFFLELAB_BUDGET")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v >= 1) return static_cast<std::uint64_t>(v);
  }
  return 100'000'000ULL;
}

Rational ExactDistribution::total() const {
  Rational t = 0;
  for (const auto& [v, p] : support) t += p;
  return t;
}

Rational ExactDistribution::mean() const {
  Rational m = 0;
  for (const auto& [v, p] : support) m += p * Rational(static_cast<long>(v));
  return m;
}

Rational ExactDistribution::variance() const {
  const Rational m = mean();
  Rational s = 0;
  for (const auto& [v, p] : support) {
    const Rational d = Rational(static_cast<long>(v)) - m;
    s += p * d * d;
  }
  return s;
}

Rational ExactDistribution::cdf(std::int64_t v) const {
  Rational c = 0;
  for (auto it = support.begin(); it != support.end() && it->first <= v; ++it) c += it->second;
  return c;
}

BigInt IntPolynomial::coefficient_sum() const {
  BigInt s = 0;
  for (const auto& c : coefficients) s += c;
  return s;
}

void IntPolynomial::trim() {
  while (!coefficients.empty() && coefficients.back() == 0) coefficients.pop_back();
}

IntPolynomial operator*(const IntPolynomial& l, const IntPolynomial& r) {
  IntPolynomial out;
  if (l.coefficients.empty() || r.coefficients.empty()) return out;
  out.coefficients.assign(l.coefficients.size() + r.coefficients.size() - 1, 0);
  for (std::size_t i = 0; i < l.coefficients.size(); ++i) {
    for (std::size_t j = 0; j < r.coefficients.size(); ++j) {
      out.coefficients[i + j] += l.coefficients[i] * r.coefficients[j];
    }
  }
  out.trim();
  return out;
}

ExactDistribution exact_dist_words(int n, const ProbabilityVector& p, StatisticKind stat,
                                   std::uint64_t budget) {
  require_n(n);
  const int a = p.size();
  charge(std::pow(static_cast<double>(a), n) * n, budget, "word enumeration");
  std::map<std::pair<std::int64_t, std::vector<int>>, std::uint64_t> tally;
  for_each_word(n, a, [&](const std::vector<int>& word, const std::vector<int>& counts) {
    ++tally[{statistic(stat, word), counts}];
  });
  ExactDistribution out{{}, words_name(n, p), stat};
  for (const auto& [key, count] : tally) {
    add_mass(out.support, key.first, Rational(count) * count_weight(p, key.second));
  }
  return out;
}

ExactDistribution exact_dist_uniform(int n, StatisticKind stat, std::uint64_t budget) {
  require_n(n);
  charge(factorial_d(n) * n, budget, "enumeration of S_n");
  std::map<std::int64_t, std::uint64_t> tally;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  std::uint64_t total = 0;
  do {
    ++tally[statistic(stat, perm)];
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  ExactDistribution out{{}, "uniform(n=" + std::to_string(n) + ")", stat};
  for (const auto& [v, c] : tally) out.support[v] = Rational(c) / total;
  for (auto& [v, q] : out.support) q.canonicalize();
  return out;
}

PermLaw exact_perm_law_riffle(int n, const ProbabilityVector& p, std::uint64_t budget) {
  require_n(n);
  const int a = p.size();
  charge(std::pow(static_cast<double>(a), n) * n, budget, "word enumeration");
  std::map<std::pair<Permutation, std::vector<int>>, std::uint64_t> tally;
  for_each_word(n, a, [&](const std::vector<int>& word, const std::vector<int>& counts) {
    ++tally[{inverse_shuffle_image(Word(word, a)), counts}];
  });
  PermLaw law;
  for (const auto& [key, count] : tally) {
    add_mass(law, key.first, Rational(count) * count_weight(p, key.second));
  }
  return law;
}

PermLaw exact_perm_law_riffle_forward(int n, const ProbabilityVector& p, std::uint64_t budget) {
  require_n(n);
  const int a = p.size();
  // sum over compositions of the number of interleavings is a^n
  charge(std::pow(static_cast<double>(a), n) * n, budget, "cut/interleave enumeration");
  PermLaw law;
  for_each_composition(n, a, [&](const std::vector<int>& b) {
    const Rational cut_weight = count_weight(p, b);  // multinomial(n;b) prod p^b / multinomial(n;b)
    if (cut_weight == 0) return;
    std::vector<int> labels;
    for (int i = 0; i < a; ++i) {
      labels.insert(labels.end(), static_cast<std::size_t>(b[static_cast<std::size_t>(i)]), i + 1);
    }
    do {
      // the k-th position labelled i receives the next card of pile i
      std::vector<int> deck(static_cast<std::size_t>(n));
      std::vector<int> next(static_cast<std::size_t>(a), 0);
      int offset = 0;
      for (int i = 0; i < a; ++i) {
        next[static_cast<std::size_t>(i)] = offset + 1;
        offset += b[static_cast<std::size_t>(i)];
      }
      for (int k = 0; k < n; ++k) {
        deck[static_cast<std::size_t>(k)] = next[static_cast<std::size_t>(labels[static_cast<std::size_t>(k)] - 1)]++;
      }
      add_mass(law, Permutation(std::move(deck)), cut_weight);
    } while (std::next_permutation(labels.begin(), labels.end()));
  });
  return law;
}

PermLaw exact_perm_law_uniform(int n, std::uint64_t budget) {
  require_n(n);
  charge(factorial_d(n) * n, budget, "enumeration of S_n");
  PermLaw law;
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  BigInt count;
  mpz_fac_ui(count.get_mpz_t(), static_cast<unsigned long>(n));
  const Rational mass(BigInt(1), count);
  do {
    law.emplace(Permutation(perm), mass);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return law;
}

PermLaw exact_perm_law_topm(int n, int m, std::uint64_t budget) {
  require_n(n);
  if (m < 0 || m > n) throw InvalidArgument("m must satisfy 0 <= m <= n");
  if (n > 62) throw BudgetExceeded("top-m position enumeration limited to n <= 62");
  charge(binomial_d(n, m) * n, budget, "top-m enumeration");
  PermLaw law;
  const Rational mass(1, static_cast<unsigned long>(binomial_d(n, m)));
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    if (std::popcount(mask) != m) continue;
    std::vector<int> deck(static_cast<std::size_t>(n));
    int top = 1, rest = m + 1;
    for (int k = 0; k < n; ++k) {
      deck[static_cast<std::size_t>(k)] = (mask >> k) & 1ULL ? top++ : rest++;
    }
    add_mass(law, Permutation(std::move(deck)), mass);
  }
  return law;
}

PermLaw exact_perm_law_topm_inverse(int n, int m, std::uint64_t budget) {
  require_n(n);
  if (m < 0 || m > n) throw InvalidArgument("m must satisfy 0 <= m <= n");
  charge(binomial_d(n, m) * n, budget, "top-m word enumeration");
  std::vector<int> word(static_cast<std::size_t>(n), 2);
  std::fill_n(word.begin(), m, 1);
  std::vector<Permutation> images;
  do {
    images.push_back(inverse_shuffle_image(Word(word, 2)));
  } while (std::next_permutation(word.begin(), word.end()));
  PermLaw law;
  const Rational mass(1, static_cast<unsigned long>(images.size()));
  for (const auto& perm : images) add_mass(law, perm, mass);
  return law;
}

PermLaw point_mass(const Permutation& perm) { return {{perm, Rational(1)}}; }

ExactDistribution pushforward(const PermLaw& law, StatisticKind stat, std::string model) {
  ExactDistribution out{{}, std::move(model), stat};
  for (const auto& [perm, mass] : law) add_mass(out.support, statistic(stat, perm.values()), mass);
  return out;
}

IntPolynomial gaussian_binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw InvalidArgument("gaussian_binomial needs 0 <= k <= n");
  // row[j] = [m choose j]_q, built up over m with [m,j] = [m-1,j-1] + q^j [m-1,j]
  std::vector<IntPolynomial> row(static_cast<std::size_t>(k) + 1);
  row[0].coefficients = {1};
  for (int m = 1; m <= n; ++m) {
    for (int j = std::min(m, k); j >= 1; --j) {
      IntPolynomial next = row[static_cast<std::size_t>(j - 1)];
      const auto& shifted = row[static_cast<std::size_t>(j)].coefficients;
      if (!shifted.empty()) {
        const std::size_t need = shifted.size() + static_cast<std::size_t>(j);
        if (next.coefficients.size() < need) next.coefficients.resize(need, 0);
        for (std::size_t d = 0; d < shifted.size(); ++d) {
          next.coefficients[d + static_cast<std::size_t>(j)] += shifted[d];
        }
      }
      next.trim();
      row[static_cast<std::size_t>(j)] = std::move(next);
    }
  }
  return row[static_cast<std::size_t>(k)];
}

IntPolynomial q_multinomial(std::span<const int> composition) {
  IntPolynomial out{{1}};
  int prefix = 0;
  for (int b : composition) {
    if (b < 0) throw InvalidArgument("composition parts must be nonnegative");
    prefix += b;
    out = out * gaussian_binomial(prefix, b);
  }
  return out;
}

ExactDistribution exact_inv_dist_via_galois(int n, const ProbabilityVector& p,
                                            std::uint64_t budget) {
  require_n(n);
  const int a = p.size();
  charge(binomial_d(n + a - 1, a - 1), budget, "composition enumeration");
  ExactDistribution out{{}, words_name(n, p), StatisticKind::Inversions};
  for_each_composition(n, a, [&](const std::vector<int>& b) {
    // multinomial(n;b) prod p^b times coefficient/multinomial(n;b)
    const Rational weight = count_weight(p, b);
    if (weight == 0) return;
    const auto poly = q_multinomial(b);
    for (std::size_t k = 0; k < poly.coefficients.size(); ++k) {
      add_mass(out.support, static_cast<std::int64_t>(k), weight * poly.coefficients[k]);
    }
  });
  return out;
}

ExactDistribution exact_des_dist_dp(int n, const ProbabilityVector& p, std::uint64_t budget) {
  require_n(n);
  const auto a = static_cast<std::size_t>(p.size());
  charge(static_cast<double>(n) * static_cast<double>(a) * a * n, budget, "descent DP");
  // state[d][c]: P(last digit = d+1, c descents so far)
  std::vector<std::vector<Rational>> state(a, std::vector<Rational>(static_cast<std::size_t>(n), 0));
  for (std::size_t d = 0; d < a; ++d) state[d][0] = p[d];
  for (int pos = 1; pos < n; ++pos) {
    std::vector<std::vector<Rational>> next(a, std::vector<Rational>(static_cast<std::size_t>(n), 0));
    for (std::size_t d = 0; d < a; ++d) {
      for (int c = 0; c < pos; ++c) {
        const auto& mass = state[d][static_cast<std::size_t>(c)];
        if (mass == 0) continue;
        for (std::size_t e = 0; e < a; ++e) {
          if (p[e] == 0) continue;
          next[e][static_cast<std::size_t>(c) + (d > e ? 1 : 0)] += mass * p[e];
        }
      }
    }
    state = std::move(next);
  }
  ExactDistribution out{{}, words_name(n, p), StatisticKind::Descents};
  for (std::size_t d = 0; d < a; ++d) {
    for (int c = 0; c < n; ++c) add_mass(out.support, std::int64_t{c}, state[d][static_cast<std::size_t>(c)]);
  }
  return out;
}

ExactDistribution exact_dist_topm(int n, int m, StatisticKind stat, std::uint64_t budget) {
  auto out = pushforward(exact_perm_law_topm_inverse(n, m, budget), stat,
                         "top-m(n=" + std::to_string(n) + ",m=" + std::to_string(m) + ")");
  return out;
}

PermLaw convolve_laws(const PermLaw& first, const PermLaw& second, std::uint64_t budget) {
  if (first.empty() || second.empty()) throw InvalidArgument("empty permutation law");
  const auto n = first.begin()->first.size();
  if (second.begin()->first.size() != n) {
    throw InvalidArgument("convolved laws must share n");
  }
  charge(static_cast<double>(first.size()) * static_cast<double>(second.size()) * n, budget,
         "law convolution");
  PermLaw out;
  for (const auto& [p, mp] : first) {
    for (const auto& [q, mq] : second) add_mass(out, then(p, q), mp * mq);
  }
  return out;
}

PermLaw exact_perm_law(const ShuffleModel& model, std::uint64_t budget) {
  validate(model);
  if (const auto* m = std::get_if<RiffleForward>(&model)) {
    return exact_perm_law_riffle_forward(m->n, m->p, budget);
  }
  if (const auto* m = std::get_if<RiffleInverse>(&model)) return exact_perm_law_riffle(m->n, m->p, budget);
  if (const auto* m = std::get_if<UniformPermutation>(&model)) return exact_perm_law_uniform(m->n, budget);
  if (const auto* m = std::get_if<OrderedTopM>(&model)) return exact_perm_law_topm(m->n, m->m, budget);
  if (const auto* m = std::get_if<AlphaConstrained>(&model)) {
    const auto sizes = alpha_pile_sizes(m->n, m->alpha);
    const Rational share(1, static_cast<unsigned long>(sizes.size()));
    PermLaw law;
    for (int n0 : sizes) {
      for (const auto& [perm, mass] : exact_perm_law_topm(m->n, n0, budget)) add_mass(law, perm, share * mass);
    }
    return law;
  }
  if (const auto* m = std::get_if<Convolution>(&model)) {
    PermLaw law = exact_perm_law(m->parts.front(), budget);
    for (std::size_t i = 1; i < m->parts.size(); ++i) {
      law = convolve_laws(law, exact_perm_law(m->parts[i], budget), budget);
    }
    return law;
  }
  throw InvalidArgument("word model has no permutation law");
}

}  // namespace shufflelab::oracle
