#include "shufflelab/serialize.hpp"

#include "shufflelab/errors.hpp"

namespace shufflelab {

const char* version() { return SHUFFLELAB_VERSION; }

namespace {

StatisticKind statistic_from(const nlohmann::ordered_json& j) {
  const auto kind = parse_statistic(j.get<std::string>());
  if (!kind) throw InvalidArgument("unknown statistic '" + j.get<std::string>() + "'");
  return *kind;
}

}  // namespace

namespace oracle {

void to_json(nlohmann::ordered_json& j, const ExactDistribution& d) {
  nlohmann::ordered_json support = nlohmann::ordered_json::object();
  for (const auto& [v, p] : d.support) support[std::to_string(v)] = to_fraction_string(p, true);
  j = {{"model", d.model}, {"statistic", to_string(d.statistic)}, {"distribution", support}};
}

void from_json(const nlohmann::ordered_json& j, ExactDistribution& d) {
  d.model = j.at("model").get<std::string>();
  d.statistic = statistic_from(j.at("statistic"));
  d.support.clear();
  for (const auto& [k, v] : j.at("distribution").items()) {
    d.support[std::stoll(k)] = parse_rational(v.get<std::string>());
  }
}

}  // namespace oracle

namespace moments {

void to_json(nlohmann::ordered_json& j, const MomentReport& r) {
  j = {{"statistic", to_string(r.statistic)},
       {"model", r.model},
       {"mean", r.mean},
       {"variance", r.variance},
       {"exact", r.exact}};
  if (r.exact_mean) j["exact_mean"] = to_fraction_string(*r.exact_mean, true);
  if (r.exact_variance) j["exact_variance"] = to_fraction_string(*r.exact_variance, true);
}

void from_json(const nlohmann::ordered_json& j, MomentReport& r) {
  r.statistic = statistic_from(j.at("statistic"));
  r.model = j.at("model").get<std::string>();
  r.mean = j.at("mean").get<double>();
  r.variance = j.at("variance").get<double>();
  r.exact = j.at("exact").get<bool>();
  r.exact_mean.reset();
  r.exact_variance.reset();
  if (j.contains("exact_mean")) r.exact_mean = parse_rational(j["exact_mean"].get<std::string>());
  if (j.contains("exact_variance")) {
    r.exact_variance = parse_rational(j["exact_variance"].get<std::string>());
  }
}

}  // namespace moments

namespace analysis {

void to_json(nlohmann::ordered_json& j, const EmpiricalDistribution& d) {
  nlohmann::ordered_json counts = nlohmann::ordered_json::object();
  for (const auto& [v, c] : d.counts) counts[std::to_string(v)] = c;
  j = {{"model", d.model},
       {"statistic", to_string(d.statistic)},
       {"n_samples", d.n_samples},
       {"seed", d.master_seed},
       {"counts", counts}};
}

void from_json(const nlohmann::ordered_json& j, EmpiricalDistribution& d) {
  d.model = j.at("model").get<std::string>();
  d.statistic = statistic_from(j.at("statistic"));
  d.n_samples = j.at("n_samples").get<std::uint64_t>();
  d.master_seed = j.at("seed").get<std::uint64_t>();
  d.counts.clear();
  for (const auto& [k, v] : j.at("counts").items()) d.counts[std::stoll(k)] = v.get<std::uint64_t>();
}

void to_json(nlohmann::ordered_json& j, const NormalityReport& r) {
  j = {{"d_k", r.d_k},
       {"standardization", to_string(r.standardization)},
       {"moments_source", r.moments_source},
       {"mean", r.mean},
       {"sd", r.sd},
       {"n", r.n},
       {"n_samples", r.n_samples}};
}

void from_json(const nlohmann::ordered_json& j, NormalityReport& r) {
  r.d_k = j.at("d_k").get<double>();
  const auto s = j.at("standardization").get<std::string>();
  if (s == "exact-variance") {
    r.standardization = Standardization::ExactVariance;
  } else if (s == "theorem-denominator") {
    r.standardization = Standardization::TheoremDenominator;
  } else if (s == "empirical") {
    r.standardization = Standardization::Empirical;
  } else {
    throw InvalidArgument("unknown standardization '" + s + "'");
  }
  r.moments_source = j.at("moments_source").get<std::string>();
  r.mean = j.at("mean").get<double>();
  r.sd = j.at("sd").get<double>();
  r.n = j.at("n").get<int>();
  r.n_samples = j.at("n_samples").get<std::uint64_t>();
}

void to_json(nlohmann::ordered_json& j, const CouplingReport& r) {
  nlohmann::ordered_json first = nlohmann::ordered_json::array();
  for (const auto& f : r.first_failures) {
    first.push_back({{"sample_index", f.sample_index},
                     {"stream_index", f.stream_index},
                     {"check", f.check},
                     {"detail", f.detail}});
  }
  j = {{"n", r.n},
       {"a", r.a},
       {"p", r.p},
       {"n_samples", r.n_samples},
       {"seed", r.seed},
       {"failures", r.failures},
       {"failures_by_check", r.failures_by_check},
       {"first_failures", first},
       {"eq45_literal_mismatches", r.eq45_literal_mismatches},
       {"la_pathwise_matches", r.la_pathwise_matches}};
}

void from_json(const nlohmann::ordered_json& j, CouplingReport& r) {
  r.n = j.at("n").get<int>();
  r.a = j.at("a").get<int>();
  r.p = j.at("p").get<std::string>();
  r.n_samples = j.at("n_samples").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.failures = j.at("failures").get<std::uint64_t>();
  r.failures_by_check = j.at("failures_by_check").get<std::map<std::string, std::uint64_t>>();
  r.first_failures.clear();
  for (const auto& f : j.at("first_failures")) {
    r.first_failures.push_back({f.at("sample_index").get<std::uint64_t>(),
                                f.at("stream_index").get<std::uint64_t>(),
                                f.at("check").get<std::string>(), f.at("detail").get<std::string>()});
  }
  r.eq45_literal_mismatches = j.at("eq45_literal_mismatches").get<std::uint64_t>();
  r.la_pathwise_matches = j.at("la_pathwise_matches").get<std::uint64_t>();
}

void to_json(nlohmann::ordered_json& j, const RateReport& r) {
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& p : r.points) points.push_back({{"n", p.n}, {"d_k", p.d_k}, {"scaled", p.scaled}});
  j = {{"statistic", r.statistic}, {"family", r.family},       {"points", points},
       {"c_hat", r.c_hat},         {"threshold", r.threshold}, {"n_samples", r.n_samples},
       {"seed", r.seed},           {"verdict", r.pass ? "PASS" : "FAIL"}};
}

void from_json(const nlohmann::ordered_json& j, RateReport& r) {
  r.statistic = j.at("statistic").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.points.clear();
  for (const auto& p : j.at("points")) {
    r.points.push_back({p.at("n").get<int>(), p.at("d_k").get<double>(), p.at("scaled").get<double>()});
  }
  r.c_hat = j.at("c_hat").get<double>();
  r.threshold = j.at("threshold").get<double>();
  r.n_samples = j.at("n_samples").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.pass = j.at("verdict").get<std::string>() == "PASS";
}

void to_json(nlohmann::ordered_json& j, const DominanceReport& r) {
  nlohmann::ordered_json violations = nlohmann::ordered_json::array();
  for (const auto& v : r.violations) {
    violations.push_back({{"a_lower", v.a_lower},
                          {"upper", v.upper},
                          {"witness", v.witness},
                          {"lower_cdf", v.lower_cdf},
                          {"upper_cdf", v.upper_cdf}});
  }
  j = {{"n", r.n},
       {"a_list", r.a_list},
       {"verdict", r.pass ? "PASS" : "FAIL"},
       {"violations", violations}};
}

void from_json(const nlohmann::ordered_json& j, DominanceReport& r) {
  r.n = j.at("n").get<int>();
  r.a_list = j.at("a_list").get<std::vector<int>>();
  r.pass = j.at("verdict").get<std::string>() == "PASS";
  r.violations.clear();
  for (const auto& v : j.at("violations")) {
    r.violations.push_back({v.at("a_lower").get<int>(), v.at("upper").get<std::string>(),
                            v.at("witness").get<std::int64_t>(), v.at("lower_cdf").get<std::string>(),
                            v.at("upper_cdf").get<std::string>()});
  }
}

void to_json(nlohmann::ordered_json& j, const TailReport& r) {
  nlohmann::ordered_json points = nlohmann::ordered_json::array();
  for (const auto& p : r.points) {
    points.push_back({{"t", p.t},
                      {"empirical", p.empirical},
                      {"bound", p.bound},
                      {"allowance", p.allowance},
                      {"pass", p.pass}});
  }
  j = {{"n", r.n},   {"n_samples", r.n_samples}, {"seed", r.seed},
       {"mu", r.mu}, {"points", points},         {"verdict", r.pass ? "PASS" : "FAIL"}};
}

void from_json(const nlohmann::ordered_json& j, TailReport& r) {
  r.n = j.at("n").get<int>();
  r.n_samples = j.at("n_samples").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.mu = j.at("mu").get<double>();
  r.points.clear();
  for (const auto& p : j.at("points")) {
    r.points.push_back({p.at("t").get<int>(), p.at("empirical").get<double>(),
                        p.at("bound").get<double>(), p.at("allowance").get<double>(),
                        p.at("pass").get<bool>()});
  }
  r.pass = j.at("verdict").get<std::string>() == "PASS";
}

}  // namespace analysis

}  // namespace shufflelab
