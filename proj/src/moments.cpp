#include "shufflelab/moments.hpp"

#include <cmath>

#include "shufflelab/errors.hpp"

namespace shufflelab::moments {

namespace {

void require_n(int n) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
}

void require_a(int a) {
  if (a < 1) throw InvalidArgument("a must be >= 1");
}

MomentReport exact_report(StatisticKind stat, std::string model, Rational mean, Rational var) {
  mean.canonicalize();
  var.canonicalize();
  MomentReport r{stat, std::move(model), mean.get_d(), var.get_d(), true, mean, var};
  return r;
}

std::string riffle_name(int n, int a) {
  return "riffle(n=" + std::to_string(n) + ",a=" + std::to_string(a) + ")";
}

std::string uniform_name(int n) { return "uniform(n=" + std::to_string(n) + ")"; }

}  // namespace

double MomentReport::sd() const { return std::sqrt(variance); }

MomentReport inv_moments_riffle(int n, int a) {
  require_n(n);
  require_a(a);
  const Rational nn(n), aa(a);
  Rational mean = nn * (nn - 1) * (aa - 1) / (4 * aa);
  Rational var = nn * (nn - 1) * (2 * nn + 5) * (aa * aa - 1) / (72 * aa * aa);
  return exact_report(StatisticKind::Inversions, riffle_name(n, a), mean, var);
}

MomentReport des_moments_riffle(int n, int a) {
  require_n(n);
  require_a(a);
  const Rational nn(n), aa(a);
  Rational mean = (nn - 1) * (aa - 1) / (2 * aa);
  Rational var = n == 1 ? Rational(0) : (aa * aa - 1) * (nn + 1) / (12 * aa * aa);
  return exact_report(StatisticKind::Descents, riffle_name(n, a), mean, var);
}

Rational des_variance_as_printed(int n, int a) {
  require_n(n);
  require_a(a);
  Rational v = Rational(a * a - 1) * (n - 1) / (12 * a * a);
  v.canonicalize();
  return v;
}

MomentReport inv_moments_uniform(int n) {
  require_n(n);
  const Rational nn(n);
  return exact_report(StatisticKind::Inversions, uniform_name(n), nn * (nn - 1) / 4,
                      nn * (nn - 1) * (2 * nn + 5) / 72);
}

MomentReport des_moments_uniform(int n) {
  require_n(n);
  const Rational nn(n);
  return exact_report(StatisticKind::Descents, uniform_name(n), (nn - 1) / 2,
                      n == 1 ? Rational(0) : (nn + 1) / 12);
}

MomentReport la_moments_uniform(int n) {
  require_n(n);
  const Rational nn(n);
  if (n == 1) return exact_report(StatisticKind::LongestAlternating, uniform_name(n), 1, 0);
  Rational mean = 2 * nn / 3 + Rational(1, 6);
  Rational var;
  switch (n) {
    case 2: var = Rational(1, 4); break;
    case 3: var = Rational(17, 36); break;
    default: var = 8 * nn / 45 - Rational(13, 180); break;
  }
  return exact_report(StatisticKind::LongestAlternating, uniform_name(n), mean, var);
}

double la_word_gamma_squared(int a) {
  if (a < 2) throw InvalidArgument("degenerate alphabet");
  const double x = a;
  return 8.0 / 45.0 * ((1 + 1 / x) * (1 - 3 / (4 * x)) * (1 - 1 / (2 * x))) / (1 - 2 / (x + 1));
}

MomentReport la_moments_words(int n, int a) {
  require_n(n);
  if (a < 2) throw InvalidArgument("degenerate alphabet");
  MomentReport r;
  r.statistic = StatisticKind::LongestAlternating;
  r.model = "word(n=" + std::to_string(n) + ",a=" + std::to_string(a) + ")";
  r.mean = n * (2.0 / 3.0 - 1.0 / (3.0 * a));
  r.variance = n * la_word_gamma_squared(a);
  r.exact = false;
  return r;
}

MomentReport la_moments_riffle2(int n, const ProbabilityVector& p) {
  require_n(n);
  if (p.size() != 2) throw InvalidArgument("la_moments_riffle2 needs a two-letter law");
  const std::string name = "riffle(n=" + std::to_string(n) + ",a=2,p=" + p.to_string() + ")";
  if (n == 1) return exact_report(StatisticKind::LongestAlternating, name, 1, 0);
  const Rational q = p[1] * p[0];
  const Rational nn(n);
  const Rational var_indicator = q * (1 - q);
  // two adjacent descents are impossible over a two-letter alphabet
  const Rational neighbour_cov = -q * q;
  const Rational var_des = (nn - 1) * var_indicator + 2 * (nn - 2) * neighbour_cov;
  const Rational cov_last = var_indicator + (n >= 3 ? neighbour_cov : Rational(0));
  Rational mean = 2 * (nn - 1) * q + 1 - q;
  Rational var = 4 * var_des + var_indicator - 4 * cov_last;
  return exact_report(StatisticKind::LongestAlternating, name, mean, var);
}

double standardize(double value, const MomentReport& report) {
  if (!(report.variance > 0)) throw InvalidArgument("degenerate statistic");
  return (value - report.mean) / report.sd();
}

double unstandardize(double z, const MomentReport& report) {
  if (!(report.variance > 0)) throw InvalidArgument("degenerate statistic");
  return report.mean + z * report.sd();
}

double inv_std_scale_theorem(int n, int a) {
  if (n < 2 || a < 2) throw InvalidArgument("inv_std_scale_theorem needs n >= 2 and a >= 2");
  const double aa = a;
  return std::sqrt(static_cast<double>(n)) * (n - 1) * std::sqrt((aa * aa - 1) / (36 * aa * aa));
}

}  // namespace shufflelab::moments
