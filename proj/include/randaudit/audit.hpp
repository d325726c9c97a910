#pragma once

// Bias experiments with reproducible reports. Every report carries the full
// configuration, so replay() reruns it and must reproduce the statistics.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "randaudit/any_generator.hpp"
#include "randaudit/bounds.hpp"
#include "randaudit/errors.hpp"
#include "randaudit/integers.hpp"
#include "randaudit/sampling.hpp"
#include "randaudit/source.hpp"
#include "randaudit/stats.hpp"

namespace randaudit {

using Json = nlohmann::ordered_json;

inline constexpr std::uint64_t kMurdochRange = 1717986918ULL;
/// (2/5) 2^32, the range R was effectively handed in the Murdoch example.
inline constexpr Multiplier kMurdochMultiplier{std::uint64_t{1} << 33, 5};

struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::hash_counter;
  Seed seed;
  std::optional<LcgParams> lcg;
  HashAlgorithm hash = HashAlgorithm::sha256;
  std::optional<unsigned> output_width;
  unsigned script_width = 32;
  std::vector<std::uint64_t> script;

  Generator build() const {
    Generator g = kind == GeneratorKind::scripted ? Generator(ScriptedSource(script_width, script))
                                                  : seed_generator(kind, seed, lcg, hash);
    if (output_width) g.set_output_width(*output_width);
    return g;
  }

  /// Same generator family with a different seed.
  GeneratorSpec with_seed(Seed s) const {
    GeneratorSpec copy = *this;
    copy.seed = std::move(s);
    return copy;
  }
};

struct ExperimentConfig {
  std::string experiment;  // murdoch | coverage | derangement | spearman | frequency | calibration
  GeneratorSpec generator;
  IntegerMethod method = IntegerMethod::mask_reject;
  std::uint64_t replications = 0;
  std::uint64_t n = 0;
  std::uint64_t k = 0;
  SampleAlgorithm algorithm = SampleAlgorithm::random_indices;
  std::uint64_t range = kMurdochRange;
  Multiplier floor_multiplier = kMurdochMultiplier;
  double tolerance = 0.005;
  double alpha = 0.001;
  std::uint64_t repetitions = 100;
};

struct Statistic {
  Statistic() = default;
  Statistic(std::string n, double v, std::optional<double> ref = std::nullopt, std::optional<double> p = std::nullopt)
      : name(std::move(n)), value(v), reference(ref), p_value(p) {}

  std::string name;
  double value = 0;
  std::optional<double> reference;
  std::optional<double> p_value;

  friend bool operator==(const Statistic&, const Statistic&) = default;
};

struct AuditReport {
  AuditReport() = default;
  AuditReport(ExperimentConfig c, std::string description)
      : config(std::move(c)), generator_description(std::move(description)) {}

  ExperimentConfig config;
  std::string generator_description;
  std::vector<Statistic> statistics;
  bool passed = false;
  std::vector<std::string> notes;
  double duration_seconds = 0;

  const Statistic& statistic(const std::string& name) const {
    for (const auto& s : statistics) {
      if (s.name == name) return s;
    }
    throw std::out_of_range("no statistic named " + name);
  }

  /// Equal up to wall-clock timing.
  bool same_results(const AuditReport& other) const {
    return statistics == other.statistics && passed == other.passed && notes == other.notes;
  }
};

// --- serialization ----------------------------------------------------------

inline Json generator_to_json(const GeneratorSpec& g) {
  Json j;
  j["kind"] = to_string(g.kind);
  if (g.kind == GeneratorKind::scripted) {
    j["script_width"] = g.script_width;
    j["script"] = g.script;
  } else {
    j["seed"] = g.seed.human_readable();
  }
  if (g.lcg) j["lcg"] = {{"a", g.lcg->multiplier}, {"c", g.lcg->increment}, {"m", g.lcg->modulus}};
  if (g.kind == GeneratorKind::hash_counter) j["hash"] = to_string(g.hash);
  if (g.output_width) j["output_width"] = *g.output_width;
  return j;
}

inline GeneratorSpec generator_from_json(const Json& j) {
  GeneratorSpec g;
  g.kind = parse_generator_kind(j.at("kind").get<std::string>());
  if (g.kind == GeneratorKind::scripted) {
    g.script_width = j.at("script_width").get<unsigned>();
    g.script = j.at("script").get<std::vector<std::uint64_t>>();
  } else {
    g.seed = Seed::parse(j.at("seed").get<std::string>());
  }
  if (j.contains("lcg")) {
    const auto& l = j["lcg"];
    g.lcg = LcgParams{l.at("m").get<std::uint64_t>(), l.at("a").get<std::uint64_t>(), l.at("c").get<std::uint64_t>()};
  }
  if (j.contains("hash")) g.hash = parse_hash_algorithm(j["hash"].get<std::string>());
  if (j.contains("output_width")) g.output_width = j["output_width"].get<unsigned>();
  return g;
}

inline Json params_to_json(const ExperimentConfig& c) {
  Json p;
  const std::string& e = c.experiment;
  if (e == "murdoch") {
    p["range"] = c.range;
    if (c.method == IntegerMethod::floor) {
      p["floor_multiplier"] = std::to_string(c.floor_multiplier.num) + "/" + std::to_string(c.floor_multiplier.den);
    }
    p["tolerance"] = c.tolerance;
  } else {
    p["n"] = c.n;
  }
  if (e == "frequency" || e == "calibration") p["k"] = c.k;
  if (e == "frequency") p["algorithm"] = to_string(c.algorithm);
  if (e == "calibration") p["repetitions"] = c.repetitions;
  if (e != "murdoch" && e != "coverage") p["alpha"] = c.alpha;
  return p;
}

inline Multiplier parse_multiplier(const std::string& s) {
  const auto slash = s.find('/');
  Multiplier m;
  try {
    m.num = std::stoull(s.substr(0, slash));
    m.den = slash == std::string::npos ? 1 : std::stoull(s.substr(slash + 1));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad multiplier '" + s + "', expected NUM or NUM/DEN");
  }
  m.validate();
  return m;
}

inline ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  c.experiment = j.at("experiment").get<std::string>();
  c.generator = generator_from_json(j.at("generator"));
  c.method = parse_integer_method(j.at("method").get<std::string>());
  c.replications = j.at("replications").get<std::uint64_t>();
  const Json& p = j.at("params");
  if (p.contains("range")) c.range = p["range"].get<std::uint64_t>();
  if (p.contains("floor_multiplier")) c.floor_multiplier = parse_multiplier(p["floor_multiplier"].get<std::string>());
  if (p.contains("tolerance")) c.tolerance = p["tolerance"].get<double>();
  if (p.contains("n")) c.n = p["n"].get<std::uint64_t>();
  if (p.contains("k")) c.k = p["k"].get<std::uint64_t>();
  if (p.contains("algorithm")) c.algorithm = parse_sample_algorithm(p["algorithm"].get<std::string>());
  if (p.contains("repetitions")) c.repetitions = p["repetitions"].get<std::uint64_t>();
  if (p.contains("alpha")) c.alpha = p["alpha"].get<double>();
  return c;
}

/// JSON schema: experiment, params, seed, generator, method, replications,
/// statistics, reference, p_values, passed, notes, duration_seconds.
inline Json to_json(const AuditReport& r) {
  const auto& c = r.config;
  Json j;
  j["experiment"] = c.experiment;
  j["params"] = params_to_json(c);
  j["seed"] = c.generator.kind == GeneratorKind::scripted ? Json(nullptr) : Json(c.generator.seed.human_readable());
  j["generator"] = generator_to_json(c.generator);
  j["generator_description"] = r.generator_description;
  j["method"] = to_string(c.method);
  j["replications"] = c.replications;
  Json stats = Json::object(), refs = Json::object(), ps = Json::object();
  for (const auto& s : r.statistics) {
    stats[s.name] = s.value;
    if (s.reference) refs[s.name] = *s.reference;
    if (s.p_value) ps[s.name] = *s.p_value;
  }
  j["statistics"] = stats;
  j["reference"] = refs;
  j["p_values"] = ps;
  j["passed"] = r.passed;
  j["notes"] = r.notes;
  j["duration_seconds"] = r.duration_seconds;
  return j;
}

inline AuditReport report_from_json(const Json& j) {
  AuditReport r;
  r.config = config_from_json(j);
  r.generator_description = j.value("generator_description", "");
  const Json& refs = j.at("reference");
  const Json& ps = j.at("p_values");
  for (const auto& [name, value] : j.at("statistics").items()) {
    Statistic s{name, value.get<double>()};
    if (refs.contains(name)) s.reference = refs[name].get<double>();
    if (ps.contains(name)) s.p_value = ps[name].get<double>();
    r.statistics.push_back(std::move(s));
  }
  r.passed = j.at("passed").get<bool>();
  r.notes = j.at("notes").get<std::vector<std::string>>();
  r.duration_seconds = j.value("duration_seconds", 0.0);
  return r;
}

/// CSV columns: experiment,seed,statistic,value,reference,p_value.
inline void write_csv(std::ostream& out, const AuditReport& r, bool header = true) {
  if (header) out << "experiment,seed,statistic,value,reference,p_value\n";
  const std::string seed = r.config.generator.kind == GeneratorKind::scripted ? "" : r.config.generator.seed.human_readable();
  for (const auto& s : r.statistics) {
    std::ostringstream row;
    row.precision(17);
    row << r.config.experiment << ',' << '"' << seed << '"' << ',' << s.name << ',' << s.value << ',';
    if (s.reference) row << *s.reference;
    row << ',';
    if (s.p_value) row << *s.p_value;
    out << row.str() << '\n';
  }
}

// --- experiments ------------------------------------------------------------

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

inline double to_double(const BigRational& r) { return r.convert_to<double>(); }

}  // namespace detail

/// Empirical share of even values among R draws on the Murdoch range.
/// floor uses the fractional multiplier (default 2^33/5); mask uses the
/// integer range.
inline AuditReport murdoch_experiment(const ExperimentConfig& c) {
  detail::require(c.method != IntegerMethod::round, "murdoch experiment supports the floor and mask methods");
  detail::require(c.replications >= 1, "replications must be positive");
  Generator g = c.generator.build();
  detail::require(g.word_width() == 32, "murdoch experiment needs a 32-bit generator, got width " +
                                            std::to_string(g.word_width()));
  AuditReport r{c, g.describe()};
  std::uint64_t even = 0;
  double reference = 0;
  if (c.method == IntegerMethod::floor) {
    const Multiplier mult = c.floor_multiplier;
    mult.validate();
    for (std::uint64_t i = 0; i < c.replications; ++i) even += randint_floor_scaled(g, mult) % 2 == 0;
    reference = detail::to_double(BigRational(floor_even_count(32, mult), BigInt(1) << 32));
    r.notes.push_back("floor multiplier " + std::to_string(mult.num) + "/" + std::to_string(mult.den));
  } else {
    detail::require(c.range >= 1, "range must be positive");
    for (std::uint64_t i = 0; i < c.replications; ++i) even += randint_mask(g, c.range) % 2 == 0;
    reference = detail::to_double(BigRational(c.range / 2, c.range));
  }
  const double share = static_cast<double>(even) / static_cast<double>(c.replications);
  const double se = std::sqrt(reference * (1 - reference) / static_cast<double>(c.replications));
  const double p = se > 0 ? normal_two_sided_p_value((share - reference) / se) : (share == reference ? 1.0 : 0.0);
  r.statistics.push_back({"even_fraction", share, reference, p});
  r.statistics.push_back({"even_count", static_cast<double>(even)});
  r.passed = std::fabs(share - reference) <= c.tolerance;
  return r;
}

/// Fisher-Yates from every initial register of a small LCG; counts the
/// distinct permutations reached.
inline AuditReport permutation_coverage(const ExperimentConfig& c) {
  detail::require(c.generator.kind == GeneratorKind::lcg && c.generator.lcg, "coverage needs explicit LCG parameters");
  const LcgParams p = *c.generator.lcg;
  p.validate();
  if (p.modulus > (std::uint64_t{1} << 16)) throw InfeasibleSize("coverage enumerates every seed; m must be <= 2^16");
  if (c.n > 8) throw InfeasibleSize("coverage counts permutations explicitly; n must be <= 8");
  detail::require(c.n >= 1, "n must be at least 1");

  AuditReport r{c, Generator(Lcg(p, 0)).describe()};
  std::set<std::vector<std::uint64_t>> seen;
  for (std::uint64_t s = 0; s < p.modulus; ++s) {
    Lcg g(p, s);
    GeneratorSource src(g, c.method);
    seen.insert(fisher_yates(src, c.n));
  }
  const BigCount target = factorial(c.n);
  const auto bound = attainability(BigCount(p.modulus), target);
  const double distinct = static_cast<double>(seen.size());
  r.statistics.push_back({"distinct_permutations", distinct});
  r.statistics.push_back({"state_count", static_cast<double>(p.modulus)});
  r.statistics.push_back({"permutation_count", target.convert_to<double>()});
  r.statistics.push_back({"observed_fraction", distinct / target.convert_to<double>(), bound.fraction_double()});
  r.statistics.push_back({"l1_lower_bound", bound.l1_double()});
  r.passed = BigCount(seen.size()) <= (BigCount(p.modulus) < target ? BigCount(p.modulus) : target);
  if (!full_period(p)) r.notes.push_back("LCG parameters are not full-period; fewer states are reachable per orbit");
  return r;
}

/// Derangement share of R shuffles against D_n / n! (binomial test), and
/// the fixed-point count against the rencontres law (chi-square).
inline AuditReport derangement_test(const ExperimentConfig& c) {
  detail::require(c.n >= 2, "derangement test needs n >= 2");
  detail::require(c.replications >= 10000, "derangement test needs at least 10^4 replications");
  Generator g = c.generator.build();
  GeneratorSource src(g, c.method);
  AuditReport r{c, g.describe()};
  std::vector<double> hist(c.n + 1, 0.0);
  std::uint64_t deranged = 0;
  for (std::uint64_t i = 0; i < c.replications; ++i) {
    const auto perm = fisher_yates(src, c.n);
    const auto fp = fixed_points(perm);
    hist[fp] += 1;
    deranged += fp == 0;
  }
  const BigCount nfact = factorial(c.n);
  const double ref = detail::to_double(BigRational(derangements(c.n), nfact));
  const double share = static_cast<double>(deranged) / static_cast<double>(c.replications);
  const double p_bin = binomial_two_sided_p_value(deranged, c.replications, ref);

  std::vector<double> expected(c.n + 1);
  for (std::uint64_t j = 0; j <= c.n; ++j) {
    expected[j] = detail::to_double(BigRational(rencontres(c.n, j), nfact)) * static_cast<double>(c.replications);
  }
  pool_cells(hist, expected, 10.0);
  const auto chi = chi_square_test(hist, expected);

  r.statistics.push_back({"derangement_fraction", share, ref, p_bin});
  r.statistics.push_back({"fixed_point_chi_square", chi.statistic, chi.df, chi.p_value});
  r.passed = p_bin >= c.alpha / 2 && chi.p_value >= c.alpha / 2;
  return r;
}

/// Mean Spearman correlation between R pairs of independent permutations;
/// z = mean sqrt(R (n - 1)) under the null.
inline AuditReport spearman_test(const ExperimentConfig& c) {
  detail::require(c.n >= 3, "spearman test needs n >= 3");
  detail::require(c.replications >= 10000, "spearman test needs at least 10^4 replications");
  Generator g = c.generator.build();
  GeneratorSource src(g, c.method);
  AuditReport r{c, g.describe()};
  double sum = 0;
  for (std::uint64_t i = 0; i < c.replications; ++i) {
    const auto a = fisher_yates(src, c.n);
    const auto b = fisher_yates(src, c.n);
    sum += spearman_rho(a, b);
  }
  const double mean = sum / static_cast<double>(c.replications);
  const double z = mean * std::sqrt(static_cast<double>(c.replications) * static_cast<double>(c.n - 1));
  const double p = normal_two_sided_p_value(z);
  r.statistics.push_back({"mean_rho", mean, 0.0, p});
  r.statistics.push_back({"z", z});
  r.passed = p >= c.alpha;
  return r;
}

/// Chi-square of R samples of k out of n against the uniform law on all
/// C(n, k) subsets.
inline AuditReport sample_frequency_test(const ExperimentConfig& c) {
  detail::require(c.n >= 1 && c.k <= c.n, "frequency test needs 0 <= k <= n");
  const BigCount cells_big = binomial(c.n, c.k);
  if (cells_big > 10000) throw InfeasibleSize("frequency test tabulates every subset; C(n,k) must be <= 10^4");
  const auto cells = cells_big.convert_to<std::uint64_t>();
  detail::require(c.replications >= 100 * cells, "frequency test needs R >= 100 C(n,k) = " + std::to_string(100 * cells));
  Generator g = c.generator.build();
  GeneratorSource src(g, c.method);
  AuditReport r{c, g.describe()};
  const SampleSpec spec{c.n, c.k, false, c.algorithm};
  spec.validate();
  std::vector<double> observed(cells, 0.0);
  for (std::uint64_t i = 0; i < c.replications; ++i) {
    observed[subset_rank(draw_sample(src, spec).indices, c.n)] += 1;
  }
  const std::vector<double> expected(cells, static_cast<double>(c.replications) / static_cast<double>(cells));
  const auto chi = chi_square_test(observed, expected);
  r.statistics.push_back({"chi_square", chi.statistic, chi.df, chi.p_value});
  r.statistics.push_back({"cells", static_cast<double>(cells)});
  r.passed = chi.p_value >= c.alpha;
  return r;
}

/// Repeats the derangement (n), Spearman (n) and frequency (n=5, k) tests
/// over shard seeds S + "/" + index. A repetition rejects when any of its
/// four p-values falls below alpha / 4.
inline AuditReport calibration(const ExperimentConfig& c) {
  detail::require(c.generator.kind == GeneratorKind::hash_counter, "calibration shards seeds through the hash generator");
  detail::require(c.repetitions >= 1, "repetitions must be positive");
  AuditReport r{c, c.generator.build().describe()};
  const double per_test = c.alpha / 4;
  std::uint64_t rejections = 0;
  double min_p = 1;
  for (std::uint64_t rep = 0; rep < c.repetitions; ++rep) {
    const Seed shard = Seed::from_text(c.generator.seed.text() + "/" + std::to_string(rep));
    ExperimentConfig sub = c;
    sub.generator = c.generator.with_seed(shard);
    sub.n = c.n;
    sub.experiment = "derangement";
    const auto d = derangement_test(sub);
    sub.experiment = "spearman";
    const auto s = spearman_test(sub);
    sub.experiment = "frequency";
    sub.n = 5;
    sub.algorithm = SampleAlgorithm::random_indices;
    sub.replications = std::max<std::uint64_t>(c.replications, 100 * binomial(5, c.k).convert_to<std::uint64_t>());
    const auto f = sample_frequency_test(sub);
    bool rejected = false;
    for (const AuditReport* rep_report : {&d, &s, &f}) {
      for (const auto& st : rep_report->statistics) {
        if (!st.p_value) continue;
        min_p = std::min(min_p, *st.p_value);
        rejected |= *st.p_value < per_test;
      }
    }
    rejections += rejected;
  }
  r.statistics.push_back({"rejections", static_cast<double>(rejections), c.alpha * static_cast<double>(c.repetitions)});
  r.statistics.push_back({"min_p_value", min_p});
  r.passed = rejections <= 2;
  return r;
}

inline AuditReport run_experiment(const ExperimentConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  AuditReport r;
  if (c.experiment == "murdoch") r = murdoch_experiment(c);
  else if (c.experiment == "coverage") r = permutation_coverage(c);
  else if (c.experiment == "derangement") r = derangement_test(c);
  else if (c.experiment == "spearman") r = spearman_test(c);
  else if (c.experiment == "frequency") r = sample_frequency_test(c);
  else if (c.experiment == "calibration") r = calibration(c);
  else throw std::invalid_argument("unknown experiment: " + c.experiment);
  r.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

inline AuditReport replay(const AuditReport& recorded) { return run_experiment(recorded.config); }

inline AuditReport replay(const Json& recorded) { return run_experiment(config_from_json(recorded)); }

}  // namespace randaudit
