#include "shufflelab/shufflers.hpp"

#include <cassert>
#include <cmath>
#include <numeric>
#include <sstream>

#include "shufflelab/errors.hpp"

namespace shufflelab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void require_deck(int n) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
}

void shuffle_in_place(std::vector<int>& v, RngStream& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(v[i - 1], v[j]);
  }
}

// Places pile cards (in order) at the positions labelled with their pile.
Permutation place_piles(const std::vector<int>& labels, const std::vector<int>& pile_sizes) {
  std::vector<int> next(pile_sizes.size() + 1, 1);
  for (std::size_t i = 1; i < pile_sizes.size(); ++i) next[i + 1] = next[i] + pile_sizes[i - 1];
  std::vector<int> out(labels.size());
  for (std::size_t k = 0; k < labels.size(); ++k) out[k] = next[labels[k]]++;
  return Permutation::from_trusted(std::move(out));
}

#ifndef NDEBUG
bool displacement_holds(const CoupledSample& s) {
  const auto x = s.word.digits();
  for (std::size_t i = 0; i < x.size(); ++i) {
    int expected = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      expected += x[j] < x[i] || (x[j] == x[i] && j <= i);
    }
    if (s.permutation[i] != expected) return false;
  }
  return true;
}
#endif

CoupledSample coupled_from(Word word) {
  Permutation perm = inverse_shuffle_image(word);
  CoupledSample s{std::move(word), std::move(perm)};
  assert(displacement_holds(s));
  return s;
}

}  // namespace

std::vector<int> multinomial_cut(int n, const ProbabilityVector& p, RngStream& rng) {
  require_deck(n);
  std::vector<int> sizes(static_cast<std::size_t>(p.size()), 0);
  for (int i = 0; i < n; ++i) ++sizes[static_cast<std::size_t>(p.draw(rng) - 1)];
  return sizes;
}

Permutation uniform_interleave(const std::vector<int>& pile_sizes, RngStream& rng) {
  std::vector<int> labels;
  for (std::size_t i = 0; i < pile_sizes.size(); ++i) {
    if (pile_sizes[i] < 0) throw InvalidArgument("pile sizes must be nonnegative");
    labels.insert(labels.end(), static_cast<std::size_t>(pile_sizes[i]), static_cast<int>(i + 1));
  }
  require_deck(static_cast<int>(labels.size()));
  shuffle_in_place(labels, rng);
  return place_piles(labels, pile_sizes);
}

Permutation sample_riffle_forward(int n, const ProbabilityVector& p, RngStream& rng) {
  return uniform_interleave(multinomial_cut(n, p, rng), rng);
}

CoupledSample sample_riffle_inverse(int n, const ProbabilityVector& p, RngStream& rng) {
  require_deck(n);
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (auto& d : digits) d = p.draw(rng);
  return coupled_from(Word(std::move(digits), p.size()));
}

Permutation sample_uniform(int n, RngStream& rng) {
  require_deck(n);
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 1);
  shuffle_in_place(v, rng);
  return Permutation::from_trusted(std::move(v));
}

Permutation sample_uniform_by_ranks(int n, RngStream& rng) {
  require_deck(n);
  std::vector<double> u(static_cast<std::size_t>(n));
  for (;;) {
    for (auto& x : u) x = rng.uniform01();
    try {
      return rank_sequence(u);
    } catch (const InvalidArgument&) {
      // a tie among 53-bit uniforms; redraw
    }
  }
}

Permutation sample_top_m(int n, int m, RngStream& rng) {
  require_deck(n);
  if (m < 0 || m > n) throw InvalidArgument("m must satisfy 0 <= m <= n");
  return uniform_interleave({m, n - m}, rng);
}

CoupledSample sample_top_m_inverse(int n, int m, RngStream& rng) {
  require_deck(n);
  if (m < 0 || m > n) throw InvalidArgument("m must satisfy 0 <= m <= n");
  std::vector<int> digits(static_cast<std::size_t>(n), 2);
  std::fill_n(digits.begin(), m, 1);
  shuffle_in_place(digits, rng);
  return coupled_from(Word(std::move(digits), 2));
}

std::vector<int> alpha_pile_sizes(int n, double alpha) {
  require_deck(n);
  if (!(alpha >= 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must satisfy 0 <= alpha < 1");
  const double floor_size = alpha * n - 1e-9;
  std::vector<int> first_sizes;
  for (int n0 = 0; n0 <= n; ++n0) {
    if (std::min(n0, n - n0) >= floor_size) first_sizes.push_back(n0);
  }
  if (first_sizes.empty()) throw InvalidArgument("alpha too large for n");
  return first_sizes;
}

Permutation sample_alpha_constrained(int n, double alpha, RngStream& rng) {
  const auto sizes = alpha_pile_sizes(n, alpha);
  const int n0 = sizes[static_cast<std::size_t>(rng.below(sizes.size()))];
  return uniform_interleave({n0, n - n0}, rng);
}

void validate(const ShuffleModel& model) {
  std::visit(overloaded{
                 [](const RiffleForward& m) { require_deck(m.n); },
                 [](const RiffleInverse& m) { require_deck(m.n); },
                 [](const UniformPermutation& m) { require_deck(m.n); },
                 [](const OrderedTopM& m) {
                   require_deck(m.n);
                   if (m.m < 0 || m.m > m.n) throw InvalidArgument("m must satisfy 0 <= m <= n");
                 },
                 [](const AlphaConstrained& m) { alpha_pile_sizes(m.n, m.alpha); },
                 [](const RandomWord& m) { require_deck(m.n); },
                 [](const Convolution& m) {
                   if (m.parts.empty()) throw InvalidArgument("convolution needs at least one model");
                   const int n = deck_size(m.parts.front());
                   for (const auto& part : m.parts) {
                     validate(part);
                     if (std::holds_alternative<RandomWord>(part)) {
                       throw InvalidArgument("convolution parts must be shuffles, not words");
                     }
                     if (deck_size(part) != n) {
                       throw InvalidArgument("convolution parts must share n");
                     }
                   }
                 },
             },
             model);
}

int deck_size(const ShuffleModel& model) {
  return std::visit(overloaded{
                        [](const Convolution& m) {
                          return m.parts.empty() ? 0 : deck_size(m.parts.front());
                        },
                        [](const auto& m) { return m.n; },
                    },
                    model);
}

std::string describe(const ShuffleModel& model) {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const RiffleForward& m) {
                   os << "riffle(n=" << m.n << ",a=" << m.p.size() << ",p=" << m.p.to_string()
                      << ")";
                 },
                 [&](const RiffleInverse& m) {
                   os << "riffle-inverse(n=" << m.n << ",a=" << m.p.size()
                      << ",p=" << m.p.to_string() << ")";
                 },
                 [&](const UniformPermutation& m) { os << "uniform(n=" << m.n << ")"; },
                 [&](const OrderedTopM& m) { os << "top-m(n=" << m.n << ",m=" << m.m << ")"; },
                 [&](const AlphaConstrained& m) {
                   os << "alpha(n=" << m.n << ",alpha=" << m.alpha << ")";
                 },
                 [&](const RandomWord& m) {
                   os << "word(n=" << m.n << ",a=" << m.p.size() << ",p=" << m.p.to_string()
                      << ")";
                 },
                 [&](const Convolution& m) {
                   os << "convolution[";
                   for (std::size_t i = 0; i < m.parts.size(); ++i) {
                     if (i) os << ";";
                     os << describe(m.parts[i]);
                   }
                   os << "]";
                 },
             },
             model);
  return os.str();
}

Permutation sample_convolution(const std::vector<ShuffleModel>& models, RngStream& rng) {
  if (models.empty()) throw InvalidArgument("convolution needs at least one model");
  Permutation deck = sample_permutation(models.front(), rng);
  for (std::size_t i = 1; i < models.size(); ++i) {
    deck = then(deck, sample_permutation(models[i], rng));
  }
  return deck;
}

Permutation sample_permutation(const ShuffleModel& model, RngStream& rng) {
  return std::visit(overloaded{
                        [&](const RiffleForward& m) { return sample_riffle_forward(m.n, m.p, rng); },
                        [&](const RiffleInverse& m) {
                          return sample_riffle_inverse(m.n, m.p, rng).permutation;
                        },
                        [&](const UniformPermutation& m) { return sample_uniform(m.n, rng); },
                        [&](const OrderedTopM& m) { return sample_top_m(m.n, m.m, rng); },
                        [&](const AlphaConstrained& m) {
                          return sample_alpha_constrained(m.n, m.alpha, rng);
                        },
                        [&](const RandomWord&) -> Permutation {
                          throw InvalidArgument("word model does not produce a permutation");
                        },
                        [&](const Convolution& m) { return sample_convolution(m.parts, rng); },
                    },
                    model);
}

std::vector<int> sample_values(const ShuffleModel& model, RngStream& rng) {
  if (const auto* w = std::get_if<RandomWord>(&model)) {
    std::vector<int> digits(static_cast<std::size_t>(w->n));
    for (auto& d : digits) d = w->p.draw(rng);
    return digits;
  }
  const auto perm = sample_permutation(model, rng);
  return {perm.values().begin(), perm.values().end()};
}

}  // namespace shufflelab
