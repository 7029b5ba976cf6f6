#include "shufflelab/probability.hpp"

#include <algorithm>
#include <sstream>

#include "shufflelab/errors.hpp"

namespace shufflelab {

ProbabilityVector::ProbabilityVector(std::vector<Rational> weights) : exact_(std::move(weights)) {
  if (exact_.empty()) throw InvalidArgument("probability vector must be nonempty");
  Rational total = 0;
  for (const auto& w : exact_) {
    if (w < 0) throw InvalidArgument("probabilities must be nonnegative");
    total += w;
  }
  if (total == 0) throw InvalidArgument("probabilities sum to zero");
  for (auto& w : exact_) w /= total;

  cumulative_.resize(exact_.size());
  Rational running = 0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < exact_.size(); ++i) {
    running += exact_[i];
    cumulative_[i] = running.get_d();
    if (exact_[i] > 0) last_positive = i;
  }
  for (std::size_t i = last_positive; i < cumulative_.size(); ++i) cumulative_[i] = 1.0;
}

ProbabilityVector ProbabilityVector::from_doubles(std::span<const double> weights) {
  std::vector<Rational> exact;
  exact.reserve(weights.size());
  for (double w : weights) exact.push_back(rational_from_double(w));
  return ProbabilityVector(std::move(exact));
}

ProbabilityVector ProbabilityVector::uniform(int a) {
  if (a < 1) throw InvalidArgument("a must be >= 1");
  return ProbabilityVector(std::vector<Rational>(static_cast<std::size_t>(a), Rational(1)));
}

ProbabilityVector ProbabilityVector::parse(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
  return ProbabilityVector(std::move(out));
}

bool ProbabilityVector::is_uniform() const {
  return std::all_of(exact_.begin(), exact_.end(),
                     [&](const Rational& p) { return p == exact_.front(); });
}

int ProbabilityVector::draw(RngStream& rng) const {
  if (exact_.size() == 1) return 1;
  const double u = rng.uniform01();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return static_cast<int>(it - cumulative_.begin()) + 1;
}

std::string ProbabilityVector::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < exact_.size(); ++i) {
    if (i) out += ',';
    out += to_fraction_string(exact_[i]);
  }
  return out;
}

ProbabilityVector tensor_product(const ProbabilityVector& p, const ProbabilityVector& q) {
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(p.size()) * static_cast<std::size_t>(q.size()));
  for (const auto& pi : p.exact()) {
    for (const auto& qj : q.exact()) out.push_back(pi * qj);
  }
  return ProbabilityVector(std::move(out));
}

}  // namespace shufflelab
