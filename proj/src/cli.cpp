#include "shufflelab/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "shufflelab/analysis.hpp"
#include "shufflelab/errors.hpp"
#include "shufflelab/moments.hpp"
#include "shufflelab/oracle.hpp"
#include "shufflelab/serialize.hpp"

namespace shufflelab::cli {

namespace {

using json = nlohmann::ordered_json;

/// Thrown when a report's verdict is FAIL after it has been written.
struct VerdictFailed {};

struct RunConfig {
  std::string command;
  std::string model = "riffle";
  int n = 0;
  int a = 2;
  bool a_given = false;
  std::string p;
  int m = 0;
  double alpha = 0.0;
  std::string parts;
  std::string stat = "des";
  std::uint64_t samples = 1;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string format = "json";
  std::string output;
  std::string standardization = "exact";
  std::optional<double> max_dk;
  std::string grid = "50,100,200,400";
  std::string a_list = "2,3,4";
  bool verify = false;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& flag) {
  std::vector<int> out;
  for (const auto& item : split(text, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InvalidArgument(flag + ": cannot parse '" + item + "' as an integer");
    }
  }
  if (out.empty()) throw InvalidArgument(flag + ": empty list");
  return out;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw InvalidArgument(message);
}

StatisticKind statistic_of(const RunConfig& cfg) {
  const auto kind = parse_statistic(cfg.stat);
  require(kind.has_value(), "--stat: unknown statistic '" + cfg.stat + "' (des, inv, la, lmax, lmin)");
  return *kind;
}

ProbabilityVector law_of(const RunConfig& cfg) {
  require(cfg.a >= 1, "--a: a must be >= 1");
  if (cfg.p.empty()) return ProbabilityVector::uniform(cfg.a);
  auto p = ProbabilityVector::parse(cfg.p);
  require(!cfg.a_given || p.size() == cfg.a, "--p: length " + std::to_string(p.size()) +
                                                 " does not match --a " + std::to_string(cfg.a));
  return p;
}

// A convolution part is either an alphabet size ("2") or a law ("1/3,2/3").
ProbabilityVector part_law(const std::string& part) {
  if (part.find_first_of(",/.") == std::string::npos) {
    const int a = parse_int_list(part, "--parts").front();
    require(a >= 1, "--parts: a must be >= 1");
    return ProbabilityVector::uniform(a);
  }
  return ProbabilityVector::parse(part);
}

ShuffleModel model_of(const RunConfig& cfg) {
  require(cfg.n >= 1, "--n: n must be >= 1");
  ShuffleModel model = UniformPermutation{cfg.n};
  if (cfg.model == "riffle") {
    model = RiffleForward{cfg.n, law_of(cfg)};
  } else if (cfg.model == "riffle-inverse") {
    model = RiffleInverse{cfg.n, law_of(cfg)};
  } else if (cfg.model == "word") {
    model = RandomWord{cfg.n, law_of(cfg)};
  } else if (cfg.model == "uniform") {
    model = UniformPermutation{cfg.n};
  } else if (cfg.model == "top-m") {
    require(cfg.m >= 0 && cfg.m <= cfg.n, "--m: m must satisfy 0 <= m <= n");
    model = OrderedTopM{cfg.n, cfg.m};
  } else if (cfg.model == "alpha") {
    model = AlphaConstrained{cfg.n, cfg.alpha};
  } else if (cfg.model == "convolution") {
    Convolution conv;
    for (const auto& part : split(cfg.parts, ';')) conv.parts.push_back(RiffleForward{cfg.n, part_law(part)});
    require(!conv.parts.empty(), "--parts: convolution needs at least one part");
    model = std::move(conv);
  } else {
    throw InvalidArgument("--model: unknown model '" + cfg.model + "'");
  }
  validate(model);
  return model;
}

// Whether a model-parameter flag means anything for the selected model.
bool relevant(const RunConfig& cfg, std::string_view key) {
  const bool lettered = cfg.model == "riffle" || cfg.model == "riffle-inverse" || cfg.model == "word";
  if (key == "a" || key == "p") return lettered || cfg.command == "rate" || cfg.command == "verify-couplings";
  if (key == "m") return cfg.model == "top-m";
  if (key == "alpha") return cfg.model == "alpha";
  if (key == "parts") return cfg.model == "convolution" || cfg.command == "convolution-check";
  return true;
}

json inputs_of(const RunConfig& cfg, std::initializer_list<const char*> keys) {
  json j = json::object();
  for (std::string_view key : keys) {
    if (!relevant(cfg, key)) continue;
    if (key == "model") j["model"] = cfg.model;
    if (key == "n") j["n"] = cfg.n;
    if (key == "a") j["a"] = cfg.a;
    if (key == "p") j["p"] = cfg.p;
    if (key == "m") j["m"] = cfg.m;
    if (key == "alpha") j["alpha"] = cfg.alpha;
    if (key == "parts") j["parts"] = cfg.parts;
    if (key == "stat") j["stat"] = cfg.stat;
    if (key == "samples") j["samples"] = cfg.samples;
    if (key == "seed") j["seed"] = cfg.seed;
    if (key == "standardization") j["standardization"] = cfg.standardization;
    if (key == "grid") j["grid"] = cfg.grid;
    if (key == "a_list") j["a_list"] = cfg.a_list;
  }
  return j;
}

json envelope(const RunConfig& cfg, json inputs) {
  return {{"schema_version", kSchemaVersion},
          {"version", version()},
          {"command", cfg.command},
          {"inputs", std::move(inputs)}};
}

struct MomentChoice {
  moments::MomentReport report;
  std::string source;
};

// Closed-form moments for (model, stat) when the library has them.
std::optional<MomentChoice> closed_form_moments(const ShuffleModel& model, StatisticKind stat) {
  auto riffle_like = [&](int n, const ProbabilityVector& p, bool on_word) -> std::optional<MomentChoice> {
    const int a = p.size();
    if (stat == StatisticKind::LongestAlternating) {
      if (on_word) {
        if (a >= 2 && p.is_uniform()) return MomentChoice{moments::la_moments_words(n, a), "la_moments_words"};
        return std::nullopt;
      }
      if (a == 2) return MomentChoice{moments::la_moments_riffle2(n, p), "la_moments_riffle2"};
      return std::nullopt;
    }
    if (!p.is_uniform()) return std::nullopt;
    if (stat == StatisticKind::Descents) return MomentChoice{moments::des_moments_riffle(n, a), "des_moments_riffle"};
    if (stat == StatisticKind::Inversions) return MomentChoice{moments::inv_moments_riffle(n, a), "inv_moments_riffle"};
    return std::nullopt;
  };
  if (const auto* m = std::get_if<RiffleForward>(&model)) return riffle_like(m->n, m->p, false);
  if (const auto* m = std::get_if<RiffleInverse>(&model)) return riffle_like(m->n, m->p, false);
  if (const auto* m = std::get_if<RandomWord>(&model)) return riffle_like(m->n, m->p, true);
  if (const auto* m = std::get_if<UniformPermutation>(&model)) {
    switch (stat) {
      case StatisticKind::Descents: return MomentChoice{moments::des_moments_uniform(m->n), "des_moments_uniform"};
      case StatisticKind::Inversions: return MomentChoice{moments::inv_moments_uniform(m->n), "inv_moments_uniform"};
      case StatisticKind::LongestAlternating: return MomentChoice{moments::la_moments_uniform(m->n), "la_moments_uniform"};
      default: return std::nullopt;
    }
  }
  return std::nullopt;
}

void write(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output);
  if (!file) throw InvalidArgument("--output: cannot open '" + cfg.output + "'");
  file << text;
}

void write_json(const RunConfig& cfg, std::ostream& out, const json& j) { write(cfg, out, j.dump(2) + "\n"); }

// --- commands ----------------------------------------------------------------

void cmd_sample(const RunConfig& cfg, std::ostream& out) {
  const auto model = model_of(cfg);
  require(cfg.samples >= 1, "--samples: must be >= 1");
  RngStream rng(cfg.seed, 0);
  std::ostringstream os;
  json rows = json::array();
  for (std::uint64_t s = 0; s < cfg.samples; ++s) {
    const auto values = sample_values(model, rng);
    if (cfg.format == "json") {
      rows.push_back(values);
    } else {
      for (std::size_t i = 0; i < values.size(); ++i) os << (i ? " " : "") << values[i];
      os << "\n";
    }
  }
  if (cfg.format == "json") {
    write(cfg, out, rows.dump() + "\n");
  } else {
    write(cfg, out, os.str());
  }
}

oracle::ExactDistribution exact_for(const RunConfig& cfg) {
  const auto model = model_of(cfg);
  const auto stat = statistic_of(cfg);
  if (const auto* w = std::get_if<RandomWord>(&model)) return oracle::exact_dist_words(w->n, w->p, stat);
  if (const auto* u = std::get_if<UniformPermutation>(&model)) return oracle::exact_dist_uniform(u->n, stat);
  if (const auto* t = std::get_if<OrderedTopM>(&model)) return oracle::exact_dist_topm(t->n, t->m, stat);
  const ProbabilityVector* p = nullptr;
  if (const auto* r = std::get_if<RiffleForward>(&model)) p = &r->p;
  if (const auto* r = std::get_if<RiffleInverse>(&model)) p = &r->p;
  if (p != nullptr) {
    // des/inv of rho equal those of the coupled word, so the polynomial routes apply
    auto d = stat == StatisticKind::Inversions ? oracle::exact_inv_dist_via_galois(cfg.n, *p)
             : stat == StatisticKind::Descents ? oracle::exact_des_dist_dp(cfg.n, *p)
                                               : oracle::pushforward(oracle::exact_perm_law(model), stat, "");
    d.model = describe(model);
    return d;
  }
  return oracle::pushforward(oracle::exact_perm_law(model), stat, describe(model));
}

void cmd_exact(const RunConfig& cfg, std::ostream& out) {
  const auto dist = exact_for(cfg);
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "value,probability\n";
    for (const auto& [v, p] : dist.support) os << v << "," << to_fraction_string(p, true) << "\n";
    write(cfg, out, os.str());
    return;
  }
  json j = envelope(cfg, inputs_of(cfg, {"model", "n", "a", "p", "m", "alpha", "parts", "stat"}));
  j["report"] = dist;
  j["distribution"] = j["report"]["distribution"];
  write_json(cfg, out, j);
}

void cmd_moments(const RunConfig& cfg, std::ostream& out) {
  const auto model = model_of(cfg);
  const auto choice = closed_form_moments(model, statistic_of(cfg));
  require(choice.has_value(), "no closed-form moments for " + cfg.stat + " under " + describe(model) +
                                  "; use `exact` or `normality --standardization empirical`");
  json j = envelope(cfg, inputs_of(cfg, {"model", "n", "a", "p", "stat"}));
  j["report"] = choice->report;
  j["source"] = choice->source;
  write_json(cfg, out, j);
}

void cmd_normality(const RunConfig& cfg, std::ostream& out) {
  const auto model = model_of(cfg);
  const auto stat = statistic_of(cfg);
  const auto emp = analysis::run_monte_carlo(model, stat, cfg.samples, cfg.seed, cfg.workers);
  double mean = emp.mean(), sd = std::sqrt(emp.variance());
  std::string source = "empirical";
  auto standardization = analysis::Standardization::Empirical;
  if (cfg.standardization == "exact") {
    const auto choice = closed_form_moments(model, stat);
    require(choice.has_value(), "--standardization exact: no closed-form moments for this model/statistic");
    mean = choice->report.mean;
    sd = choice->report.sd();
    source = choice->source;
    standardization = analysis::Standardization::ExactVariance;
  } else if (cfg.standardization == "theorem") {
    require(stat == StatisticKind::Inversions, "--standardization theorem applies to inv only");
    const auto* r = std::get_if<RiffleForward>(&model);
    const auto* ri = std::get_if<RiffleInverse>(&model);
    const ProbabilityVector* p = r ? &r->p : ri ? &ri->p : nullptr;
    require(p != nullptr && p->is_uniform(), "--standardization theorem needs an unbiased riffle model");
    mean = moments::inv_moments_riffle(cfg.n, p->size()).mean;
    sd = moments::inv_std_scale_theorem(cfg.n, p->size());
    source = "inv_std_scale_theorem";
    standardization = analysis::Standardization::TheoremDenominator;
  } else {
    require(cfg.standardization == "empirical", "--standardization: exact, theorem or empirical");
  }
  if (!(sd > 0)) throw InvalidArgument("degenerate statistic");
  auto report = analysis::kolmogorov_to_normal(emp, mean, sd);
  report.standardization = standardization;
  report.moments_source = source;
  report.n = cfg.n;
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "value,count\n";
    for (const auto& [v, c] : emp.counts) os << v << "," << c << "\n";
    write(cfg, out, os.str());
  } else {
    json j = envelope(cfg, inputs_of(cfg, {"model", "n", "a", "p", "m", "alpha", "parts", "stat", "samples",
                                           "seed", "standardization"}));
    j["report"] = report;
    j["empirical"] = emp;
    if (cfg.max_dk) {
      j["max_dk"] = *cfg.max_dk;
      j["verdict"] = report.d_k < *cfg.max_dk ? "PASS" : "FAIL";
    }
    write_json(cfg, out, j);
  }
  if (cfg.max_dk && !(report.d_k < *cfg.max_dk)) throw VerdictFailed{};
}

void cmd_tvbound(const RunConfig& cfg, std::ostream& out) {
  require(cfg.n >= 1, "--n: n must be >= 1");
  require(cfg.a >= 1, "--a: a must be >= 1");
  const auto exact = analysis::tv_bound_exact(cfg.n, cfg.a);
  json j = envelope(cfg, inputs_of(cfg, {"n", "a"}));
  j["bound"] = analysis::tv_bound(cfg.n, cfg.a);
  j["bound_exact"] = to_fraction_string(exact);
  bool pass = true;
  if (cfg.verify) {
    const auto p = ProbabilityVector::uniform(cfg.a);
    json checks = json::object();
    for (auto stat : {StatisticKind::Descents, StatisticKind::Inversions}) {
      const auto shuffled = stat == StatisticKind::Inversions ? oracle::exact_inv_dist_via_galois(cfg.n, p)
                                                              : oracle::exact_des_dist_dp(cfg.n, p);
      const auto tv = analysis::tv_distance(shuffled, oracle::exact_dist_uniform(cfg.n, stat));
      checks[std::string(to_string(stat))] = {{"tv", to_fraction_string(tv)}, {"within_bound", tv <= exact}};
      pass = pass && tv <= exact;
    }
    j["checks"] = checks;
    j["verdict"] = pass ? "PASS" : "FAIL";
  }
  write_json(cfg, out, j);
  if (!pass) throw VerdictFailed{};
}

void cmd_convolution_check(const RunConfig& cfg, std::ostream& out) {
  require(cfg.n >= 1, "--n: n must be >= 1");
  const auto parts = split(cfg.parts.empty() ? std::string("2;2") : cfg.parts, ';');
  require(parts.size() >= 2, "--parts: need at least two riffle laws");
  oracle::PermLaw law;
  ProbabilityVector combined = ProbabilityVector::uniform(1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto p = part_law(parts[i]);
    const auto part = oracle::exact_perm_law_riffle(cfg.n, p);
    law = i == 0 ? part : oracle::convolve_laws(law, part);
    combined = tensor_product(combined, p);
  }
  const auto target = oracle::exact_perm_law_riffle(cfg.n, combined);
  const auto tv = analysis::tv_distance(law, target);
  json j = envelope(cfg, inputs_of(cfg, {"n", "parts"}));
  j["combined_law"] = combined.to_string();
  j["tv"] = to_fraction_string(tv);
  j["verdict"] = tv == 0 ? "PASS" : "FAIL";
  write_json(cfg, out, j);
  if (tv != 0) throw VerdictFailed{};
}

void cmd_dominance(const RunConfig& cfg, std::ostream& out) {
  auto a_list = parse_int_list(cfg.a_list, "--a-list");
  if (std::find(a_list.begin(), a_list.end(), 2) == a_list.end()) a_list.insert(a_list.begin(), 2);
  const auto report = analysis::dominance_check(cfg.n, a_list);
  json j = envelope(cfg, inputs_of(cfg, {"n", "a_list"}));
  j["report"] = report;
  write_json(cfg, out, j);
  if (!report.pass) throw VerdictFailed{};
}

void cmd_verify_couplings(const RunConfig& cfg, std::ostream& out) {
  require(cfg.n >= 1, "--n: n must be >= 1");
  const auto report = analysis::verify_couplings(cfg.n, law_of(cfg), cfg.samples, cfg.seed, cfg.workers);
  json j = envelope(cfg, inputs_of(cfg, {"n", "a", "p", "samples", "seed"}));
  j["report"] = report;
  j["failures"] = report.failures;
  write_json(cfg, out, j);
  if (report.failures != 0) throw VerdictFailed{};
}

void cmd_rate(const RunConfig& cfg, std::ostream& out) {
  const auto stat = statistic_of(cfg);
  const auto grid = parse_int_list(cfg.grid, "--grid");
  RunConfig base = cfg;
  auto family = [&](int n) {
    RunConfig c = base;
    c.n = n;
    return model_of(c);
  };
  auto moments_for = [&](int n) {
    const auto choice = closed_form_moments(family(n), stat);
    if (!choice) throw InvalidArgument("rate: no closed-form moments for this model/statistic");
    return choice->report;
  };
  const auto report = analysis::rate_check(family, describe(family(grid.front())), stat, moments_for, grid,
                                           cfg.samples, cfg.seed, cfg.workers);
  json j = envelope(cfg, inputs_of(cfg, {"model", "a", "p", "stat", "grid", "samples", "seed"}));
  j["report"] = report;
  write_json(cfg, out, j);
  if (!report.pass) throw VerdictFailed{};
}

void cmd_mcdiarmid(const RunConfig& cfg, std::ostream& out) {
  const auto report = analysis::mcdiarmid_tail_check(cfg.n, cfg.samples, cfg.seed, cfg.workers);
  json j = envelope(cfg, inputs_of(cfg, {"n", "samples", "seed"}));
  j["report"] = report;
  write_json(cfg, out, j);
  if (!report.pass) throw VerdictFailed{};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riffle-shuffle sampling, exact laws and CLT checks for permutation statistics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version()));
  RunConfig cfg;

  auto model_flags = [&](CLI::App* sub) {
    sub->add_option("--model", cfg.model, "riffle, riffle-inverse, word, uniform, top-m, alpha, convolution");
    sub->add_option("--n", cfg.n, "deck size / word length")->required();
    sub->add_option("--a", cfg.a, "number of piles (alphabet size)")->each([&](const std::string&) {
      cfg.a_given = true;
    });
    sub->add_option("--p", cfg.p, "pile/digit law, e.g. 1/3,2/3 (default uniform)");
    sub->add_option("--m", cfg.m, "top-m packet size");
    sub->add_option("--alpha", cfg.alpha, "minimum pile fraction for the alpha model");
    sub->add_option("--parts", cfg.parts, "convolution parts, e.g. '2;1/3,2/3'");
  };
  auto stat_flag = [&](CLI::App* sub) { sub->add_option("--stat", cfg.stat, "des, inv, la, lmax, lmin"); };
  auto mc_flags = [&](CLI::App* sub, std::uint64_t default_samples) {
    cfg.samples = default_samples;
    sub->add_option("--samples", cfg.samples, "number of Monte Carlo samples");
    sub->add_option("--seed", cfg.seed, "master seed (required)")->required();
    sub->add_option("--workers", cfg.workers, "worker threads; results do not depend on it");
  };
  auto output_flags = [&](CLI::App* sub, bool csv) {
    auto* opt = sub->add_option("--format", cfg.format, csv ? "json or csv" : "json");
    opt->check(CLI::IsMember(csv ? std::vector<std::string>{"json", "csv"} : std::vector<std::string>{"json"}));
    sub->add_option("--output", cfg.output, "write to this file instead of stdout");
  };

  auto* sample = app.add_subcommand("sample", "draw samples, one per line");
  model_flags(sample);
  sample->add_option("--samples", cfg.samples, "number of samples");
  sample->add_option("--seed", cfg.seed, "seed (required)")->required();
  sample->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  sample->add_option("--output", cfg.output, "write to this file instead of stdout");
  cfg.format = "text";

  auto* exact = app.add_subcommand("exact", "exact law of a statistic (rational probabilities)");
  model_flags(exact);
  stat_flag(exact);
  output_flags(exact, true);

  auto* moments_cmd = app.add_subcommand("moments", "closed-form mean and variance");
  model_flags(moments_cmd);
  stat_flag(moments_cmd);
  output_flags(moments_cmd, false);

  auto* normality = app.add_subcommand("normality", "Kolmogorov distance of the standardized statistic to N(0,1)");
  model_flags(normality);
  stat_flag(normality);
  normality->add_option("--samples", cfg.samples, "number of Monte Carlo samples");
  normality->add_option("--seed", cfg.seed, "master seed (required)")->required();
  normality->add_option("--workers", cfg.workers, "worker threads; results do not depend on it");
  normality->add_option("--standardization", cfg.standardization, "exact, theorem or empirical");
  normality->add_option("--max-dk", cfg.max_dk, "fail (exit 4) unless d_K is below this");
  output_flags(normality, true);

  auto* tvbound = app.add_subcommand("tvbound", "total-variation bound 1 - a!/((a-n)! a^n)");
  tvbound->add_option("--n", cfg.n)->required();
  tvbound->add_option("--a", cfg.a)->required();
  tvbound->add_flag("--verify", cfg.verify, "also compare exact TV of des and inv against the bound");
  output_flags(tvbound, false);

  auto* convolution = app.add_subcommand("convolution-check", "exact check that riffle laws convolve to a riffle law");
  convolution->add_option("--n", cfg.n)->required();
  convolution->add_option("--parts", cfg.parts, "riffle laws to convolve, e.g. '1/3,2/3;1/4,3/4'");
  output_flags(convolution, false);

  auto* dominance = app.add_subcommand("dominance", "exact stochastic ordering of inversions");
  dominance->add_option("--n", cfg.n)->required();
  dominance->add_option("--a-list", cfg.a_list, "comma-separated a values (2 is always included)");
  output_flags(dominance, false);

  auto* couplings = app.add_subcommand("verify-couplings", "per-sample word/shuffle identities");
  couplings->add_option("--n", cfg.n)->required();
  couplings->add_option("--a", cfg.a)->each([&](const std::string&) { cfg.a_given = true; });
  couplings->add_option("--p", cfg.p);
  mc_flags(couplings, 10000);
  output_flags(couplings, false);

  auto* rate = app.add_subcommand("rate", "d_K * sqrt(n) over an n-grid");
  rate->add_option("--model", cfg.model, "riffle, riffle-inverse, word or uniform");
  rate->add_option("--a", cfg.a)->each([&](const std::string&) { cfg.a_given = true; });
  rate->add_option("--p", cfg.p);
  stat_flag(rate);
  rate->add_option("--grid", cfg.grid, "increasing n values, e.g. 50,100,200,400");
  rate->add_option("--samples", cfg.samples, "samples per grid point");
  rate->add_option("--seed", cfg.seed, "master seed (required)")->required();
  rate->add_option("--workers", cfg.workers, "worker threads; results do not depend on it");
  output_flags(rate, false);

  auto* tail = app.add_subcommand("mcdiarmid", "LA concentration tail check for uniform permutations");
  tail->add_option("--n", cfg.n)->required();
  mc_flags(tail, 100000);
  output_flags(tail, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream so, se;
    const int code = app.exit(e, so, se);
    out << so.str();
    err << se.str();
    return code == 0 ? kOk : kBadInput;
  }

  auto* chosen = app.get_subcommands().front();
  cfg.command = chosen->get_name();
  if (cfg.command == "sample" && chosen->count("--format") == 0) cfg.format = "text";
  if (cfg.command != "sample" && chosen->count("--format") == 0) cfg.format = "json";
  if (cfg.command == "verify-couplings" && chosen->count("--samples") == 0) cfg.samples = 10000;
  if (cfg.command == "normality" && chosen->count("--samples") == 0) cfg.samples = 100000;
  if (cfg.command == "rate" && chosen->count("--samples") == 0) cfg.samples = 100000;
  if (cfg.command == "mcdiarmid" && chosen->count("--samples") == 0) cfg.samples = 100000;
  if (cfg.command == "sample" && chosen->count("--samples") == 0) cfg.samples = 1;

  const auto start = std::chrono::steady_clock::now();
  try {
    if (cfg.workers < 1) throw InvalidArgument("--workers: must be >= 1");
    if (cfg.command == "sample") cmd_sample(cfg, out);
    else if (cfg.command == "exact") cmd_exact(cfg, out);
    else if (cfg.command == "moments") cmd_moments(cfg, out);
    else if (cfg.command == "normality") cmd_normality(cfg, out);
    else if (cfg.command == "tvbound") cmd_tvbound(cfg, out);
    else if (cfg.command == "convolution-check") cmd_convolution_check(cfg, out);
    else if (cfg.command == "dominance") cmd_dominance(cfg, out);
    else if (cfg.command == "verify-couplings") cmd_verify_couplings(cfg, out);
    else if (cfg.command == "rate") cmd_rate(cfg, out);
    else if (cfg.command == "mcdiarmid") cmd_mcdiarmid(cfg, out);
  } catch (const VerdictFailed&) {
    err << cfg.command << ": verdict FAIL\n";
    return kVerdictFail;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  err << cfg.command << ": done in " << elapsed.count() << " s with " << cfg.workers << " worker(s)\n";
  return kOk;
}

}  // namespace shufflelab::cli
