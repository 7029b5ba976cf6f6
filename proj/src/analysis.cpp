#include "shufflelab/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "shufflelab/errors.hpp"

namespace shufflelab::analysis {

namespace {

using Tally = std::map<std::int64_t, std::uint64_t>;

// Runs body(chunk_index) for every chunk on `workers` threads. Each chunk index
// is handed out exactly once; the first exception is rethrown after joining.
void for_each_chunk(std::uint64_t chunks, unsigned workers,
                    const std::function<void(std::uint64_t)>& body) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::uint64_t>(chunks, 1))));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const auto chunk = next.fetch_add(1);
      if (chunk >= chunks) return;
      try {
        body(chunk);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(chunks);
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
}

std::uint64_t chunk_count(std::uint64_t n_samples, std::uint64_t chunk) {
  return (n_samples + chunk - 1) / chunk;
}

std::uint64_t chunk_size(std::uint64_t index, std::uint64_t n_samples, std::uint64_t chunk) {
  return std::min(chunk, n_samples - index * chunk);
}

template <class Map>
Rational exact_tv(const Map& d1, const Map& d2) {
  Rational t1 = 0, t2 = 0;
  for (const auto& [k, v] : d1) t1 += v;
  for (const auto& [k, v] : d2) t2 += v;
  if (t1 != 1 || t2 != 1) throw InvalidArgument("tv_distance needs normalized distributions");
  Rational sum = 0;
  auto i = d1.begin();
  auto j = d2.begin();
  while (i != d1.end() || j != d2.end()) {
    if (j == d2.end() || (i != d1.end() && i->first < j->first)) {
      sum += abs(i->second);
      ++i;
    } else if (i == d1.end() || j->first < i->first) {
      sum += abs(j->second);
      ++j;
    } else {
      sum += abs(i->second - j->second);
      ++i;
      ++j;
    }
  }
  return sum / 2;
}

template <class Map>
double float_tv(const Map& d1, const Map& d2) {
  double t1 = 0, t2 = 0;
  for (const auto& [k, v] : d1) {
    if (v < 0) throw InvalidArgument("tv_distance needs nonnegative masses");
    t1 += v;
  }
  for (const auto& [k, v] : d2) {
    if (v < 0) throw InvalidArgument("tv_distance needs nonnegative masses");
    t2 += v;
  }
  if (std::abs(t1 - 1) > 1e-9 || std::abs(t2 - 1) > 1e-9) {
    throw InvalidArgument("tv_distance needs normalized distributions");
  }
  double sum = 0;
  for (const auto& [k, v] : d1) {
    const auto it = d2.find(k);
    sum += std::abs(v - (it == d2.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : d2) {
    if (!d1.contains(k)) sum += v;
  }
  return std::min(1.0, sum / 2);
}

}  // namespace

double EmpiricalDistribution::mean() const {
  long double s = 0;
  for (const auto& [v, c] : counts) s += static_cast<long double>(v) * c;
  return static_cast<double>(s / n_samples);
}

double EmpiricalDistribution::variance() const {
  const long double m = mean();
  long double s = 0;
  for (const auto& [v, c] : counts) s += (v - m) * (v - m) * c;
  return static_cast<double>(s / n_samples);
}

std::map<std::int64_t, double> EmpiricalDistribution::frequencies() const {
  std::map<std::int64_t, double> out;
  for (const auto& [v, c] : counts) out[v] = static_cast<double>(c) / static_cast<double>(n_samples);
  return out;
}

std::vector<EmpiricalDistribution> run_monte_carlo(const ShuffleModel& model,
                                                   const std::vector<StatisticKind>& stats,
                                                   std::uint64_t n_samples,
                                                   std::uint64_t master_seed, unsigned workers,
                                                   std::uint64_t chunk) {
  if (n_samples < 1) throw InvalidArgument("n_samples must be >= 1");
  if (workers < 1) throw InvalidArgument("workers must be >= 1");
  if (chunk < 1) throw InvalidArgument("chunk must be >= 1");
  if (stats.empty()) throw InvalidArgument("no statistic requested");
  validate(model);

  const auto chunks = chunk_count(n_samples, chunk);
  std::vector<std::vector<Tally>> per_chunk(chunks, std::vector<Tally>(stats.size()));
  for_each_chunk(chunks, workers, [&](std::uint64_t c) {
    RngStream rng(master_seed, c);
    auto& tallies = per_chunk[c];
    const auto size = chunk_size(c, n_samples, chunk);
    for (std::uint64_t s = 0; s < size; ++s) {
      const auto values = sample_values(model, rng);
      for (std::size_t k = 0; k < stats.size(); ++k) ++tallies[k][statistic(stats[k], values)];
    }
  });

  std::vector<EmpiricalDistribution> out;
  for (std::size_t k = 0; k < stats.size(); ++k) {
    EmpiricalDistribution emp;
    emp.n_samples = n_samples;
    emp.model = describe(model);
    emp.statistic = stats[k];
    emp.master_seed = master_seed;
    emp.worker_count = workers;
    for (const auto& tallies : per_chunk) {
      for (const auto& [v, cnt] : tallies[k]) emp.counts[v] += cnt;
    }
    out.push_back(std::move(emp));
  }
  return out;
}

EmpiricalDistribution run_monte_carlo(const ShuffleModel& model, StatisticKind stat,
                                      std::uint64_t n_samples, std::uint64_t master_seed,
                                      unsigned workers, std::uint64_t chunk) {
  return std::move(run_monte_carlo(model, std::vector{stat}, n_samples, master_seed, workers,
                                   chunk)
                       .front());
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

std::string_view to_string(Standardization s) {
  switch (s) {
    case Standardization::ExactVariance: return "exact-variance";
    case Standardization::TheoremDenominator: return "theorem-denominator";
    case Standardization::Empirical: return "empirical";
  }
  return "?";
}

NormalityReport kolmogorov_to_normal(const std::map<std::int64_t, double>& pmf, double mean,
                                     double sd) {
  if (!(sd > 0)) throw InvalidArgument("sd must be positive");
  double below = 0.0;
  double d = 0.0;
  for (const auto& [v, mass] : pmf) {
    const double phi = normal_cdf((static_cast<double>(v) - mean) / sd);
    const double at = below + mass;
    d = std::max({d, std::abs(below - phi), std::abs(at - phi)});
    below = at;
  }
  NormalityReport r;
  r.d_k = std::clamp(d, 0.0, 1.0);
  r.mean = mean;
  r.sd = sd;
  return r;
}

NormalityReport kolmogorov_to_normal(const EmpiricalDistribution& emp, double mean, double sd) {
  auto r = kolmogorov_to_normal(emp.frequencies(), mean, sd);
  r.n_samples = emp.n_samples;
  return r;
}

Rational tv_distance(const oracle::ExactDistribution& d1, const oracle::ExactDistribution& d2) {
  return exact_tv(d1.support, d2.support);
}

Rational tv_distance(const oracle::PermLaw& d1, const oracle::PermLaw& d2) {
  return exact_tv(d1, d2);
}

double tv_distance(const std::map<std::int64_t, double>& d1,
                   const std::map<std::int64_t, double>& d2) {
  return float_tv(d1, d2);
}

double tv_distance(const std::map<Permutation, double>& d1,
                   const std::map<Permutation, double>& d2) {
  return float_tv(d1, d2);
}

Rational tv_bound_exact(int n, int a) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (a < n) throw InvalidArgument("bound requires a >= n");
  Rational falling = 1;
  for (int i = 0; i < n; ++i) falling *= Rational(a - i, a);
  falling.canonicalize();
  return 1 - falling;
}

double tv_bound(int n, int a) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (a < n) throw InvalidArgument("bound requires a >= n");
  double falling = 1.0;
  for (int i = 0; i < n; ++i) falling *= static_cast<double>(a - i) / a;
  return 1.0 - falling;
}

CouplingReport verify_couplings(int n, const ProbabilityVector& p, std::uint64_t n_samples,
                                std::uint64_t seed, unsigned workers) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (n_samples < 1) throw InvalidArgument("n_samples must be >= 1");
  const int a = p.size();

  struct ChunkResult {
    std::map<std::string, std::uint64_t> failures;
    std::vector<CouplingFailure> first;
    std::uint64_t failed_samples = 0;
    std::uint64_t literal = 0;
    std::uint64_t pathwise = 0;
  };
  const auto chunks = chunk_count(n_samples, kDefaultChunk);
  std::vector<ChunkResult> results(chunks);

  for_each_chunk(chunks, workers, [&](std::uint64_t c) {
    RngStream rng(seed, c);
    auto& res = results[c];
    const auto size = chunk_size(c, n_samples, kDefaultChunk);
    for (std::uint64_t s = 0; s < size; ++s) {
      const auto sample = sample_riffle_inverse(n, p, rng);
      const auto x = sample.word.digits();
      const auto rho = sample.permutation.values();
      bool failed = false;
      auto fail = [&](const std::string& check, std::string detail) {
        ++res.failures[check];
        failed = true;
        if (res.first.size() < 10) {
          res.first.push_back({c * kDefaultChunk + s, c, check, std::move(detail)});
        }
      };

      // word side, computed directly from the digits
      std::int64_t word_inv = 0, word_des = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) word_inv += x[i] > x[j];
      }
      for (int i = 0; i + 1 < n; ++i) word_des += x[i] > x[i + 1];

      const auto perm_inv = inversions(rho);
      const auto perm_des = descents(rho);
      if (perm_inv != word_inv) {
        fail("inversions", std::to_string(perm_inv) + " != " + std::to_string(word_inv));
      }
      if (perm_des != word_des) {
        fail("descents", std::to_string(perm_des) + " != " + std::to_string(word_des));
      }
      for (int i = 0; i < n; ++i) {
        int expected = 0;
        for (int j = 0; j < n; ++j) expected += x[j] < x[i] || (x[j] == x[i] && j <= i);
        if (rho[i] != expected) {
          fail("displacement", "position " + std::to_string(i + 1));
          break;
        }
      }
      bool order_ok = true;
      for (int i = 0; i < n && order_ok; ++i) {
        for (int k = i + 1; k < n; ++k) {
          if ((rho[i] > rho[k]) != (x[i] > x[k])) {
            fail("pair-order", "positions " + std::to_string(i + 1) + "," + std::to_string(k + 1));
            order_ok = false;
            break;
          }
        }
      }

      const auto la_perm = la_distinct(rho);
      if (a == 2 && n >= 2) {
        const std::int64_t rhs = 2 * word_des + (x[n - 2] <= x[n - 1] ? 1 : 0);
        if (la_perm != rhs) {
          fail("la-identity", std::to_string(la_perm) + " != " + std::to_string(rhs));
        }
        if (la_perm != 2 * word_des + (x[n - 2] < x[n - 1] ? 1 : 0)) ++res.literal;
        for (int k = 1; k + 1 < n; ++k) {
          const bool peak = rho[k - 1] < rho[k] && rho[k] > rho[k + 1];
          const bool valley = rho[k - 1] > rho[k] && rho[k] < rho[k + 1];
          if (peak != (rho[k] > rho[k + 1])) {
            fail("extremum-descent", "maximum at " + std::to_string(k + 1));
          }
          if (valley != (rho[k - 1] > rho[k])) {
            fail("extremum-descent", "minimum at " + std::to_string(k + 1));
          }
        }
      }
      res.pathwise += la_perm == la_word(x);
      res.failed_samples += failed;
    }
  });

  CouplingReport report;
  report.n = n;
  report.a = a;
  report.p = p.to_string();
  report.n_samples = n_samples;
  report.seed = seed;
  for (auto& r : results) {
    report.failures += r.failed_samples;
    for (const auto& [check, count] : r.failures) report.failures_by_check[check] += count;
    for (auto& f : r.first) {
      if (report.first_failures.size() < 10) report.first_failures.push_back(std::move(f));
    }
    report.eq45_literal_mismatches += r.literal;
    report.la_pathwise_matches += r.pathwise;
  }
  return report;
}

double ks_standard_error(std::uint64_t samples) {
  return 0.87 / std::sqrt(static_cast<double>(samples));
}

RateReport rate_check(const std::function<ShuffleModel(int)>& family,
                      const std::string& family_name, StatisticKind stat,
                      const std::function<moments::MomentReport(int)>& moments_for,
                      const std::vector<int>& grid, std::uint64_t n_samples, std::uint64_t seed,
                      unsigned workers) {
  if (grid.size() < 3) throw InvalidArgument("rate grid needs at least 3 points");
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end()) {
    throw InvalidArgument("rate grid must be strictly increasing");
  }
  RateReport report;
  report.statistic = std::string(shufflelab::to_string(stat));
  report.family = family_name;
  report.n_samples = n_samples;
  report.seed = seed;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const int n = grid[i];
    const auto m = moments_for(n);
    if (!(m.variance > 0)) throw InvalidArgument("degenerate statistic at n=" + std::to_string(n));
    // each grid point gets its own master seed so points are independent
    const auto emp = run_monte_carlo(family(n), stat, n_samples, splitmix64(seed + i), workers);
    const auto nr = kolmogorov_to_normal(emp, m.mean, m.sd());
    const double scaled = nr.d_k * std::sqrt(static_cast<double>(n));
    report.points.push_back({n, nr.d_k, scaled});
    report.c_hat = std::max(report.c_hat, scaled);
  }
  const double first = report.points.front().scaled;
  const double last_n = report.points.back().n;
  report.threshold = 1.25 * first + 3 * ks_standard_error(n_samples) * std::sqrt(last_n);
  report.pass = report.points.back().scaled <= report.threshold;
  return report;
}

DominanceReport dominance_check(int n, const std::vector<int>& a_list, std::uint64_t budget) {
  if (n < 1) throw InvalidArgument("n must be >= 1");
  if (std::find(a_list.begin(), a_list.end(), 2) == a_list.end()) {
    throw InvalidArgument("a_list must contain 2");
  }
  DominanceReport report;
  report.n = n;
  report.a_list = a_list;
  const auto uniform = oracle::exact_dist_uniform(n, StatisticKind::Inversions, budget);
  const auto two = oracle::exact_inv_dist_via_galois(n, ProbabilityVector::uniform(2), budget);
  const std::int64_t max_inv = static_cast<std::int64_t>(n) * (n - 1) / 2;
  auto compare = [&](const oracle::ExactDistribution& lower, int a_lower,
                     const oracle::ExactDistribution& upper, const std::string& upper_name) {
    for (std::int64_t v = 0; v <= max_inv; ++v) {
      const auto fl = lower.cdf(v);
      const auto fu = upper.cdf(v);
      if (fl < fu) {
        report.pass = false;
        report.violations.push_back(
            {a_lower, upper_name, v, to_fraction_string(fl), to_fraction_string(fu)});
      }
    }
  };
  for (int a : a_list) {
    if (a < 2) throw InvalidArgument("a must be >= 2");
    const auto law = oracle::exact_inv_dist_via_galois(n, ProbabilityVector::uniform(a), budget);
    compare(two, 2, law, "a=" + std::to_string(a));
    compare(law, a, uniform, "uniform");
  }
  return report;
}

double mcdiarmid_bound(int n, double t) { return 2.0 * std::exp(-2.0 * t * t / (9.0 * n)); }

TailReport mcdiarmid_tail_check(int n, std::uint64_t n_samples, std::uint64_t seed,
                                unsigned workers) {
  if (n < 2) throw InvalidArgument("n must be >= 2");
  const auto emp =
      run_monte_carlo(UniformPermutation{n}, StatisticKind::LongestAlternating, n_samples, seed, workers);
  TailReport report;
  report.n = n;
  report.n_samples = n_samples;
  report.seed = seed;
  report.mu = moments::la_moments_uniform(n).mean;
  const int t_max = static_cast<int>(std::ceil(3.0 * std::sqrt(static_cast<double>(n))));
  for (int t = 1; t <= t_max; ++t) {
    std::uint64_t hits = 0;
    for (const auto& [v, c] : emp.counts) {
      if (std::abs(static_cast<double>(v) - report.mu) >= t) hits += c;
    }
    TailPoint pt;
    pt.t = t;
    pt.empirical = static_cast<double>(hits) / static_cast<double>(n_samples);
    pt.bound = mcdiarmid_bound(n, t);
    const double b = std::min(pt.bound, 1.0);
    pt.allowance = pt.bound + 3.0 * std::sqrt(b * (1 - b) / static_cast<double>(n_samples));
    pt.pass = pt.empirical <= pt.allowance;
    report.pass = report.pass && pt.pass;
    report.points.push_back(pt);
  }
  return report;
}

}  // namespace shufflelab::analysis
