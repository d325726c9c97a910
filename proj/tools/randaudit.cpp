// randaudit: generate words, draw samples, print pigeonhole bounds and run
// bias audits. Every command echoes the resolved seed and configuration.
//
// Exit codes: 0 success, 1 runtime failure (including a replay mismatch),
// 2 usage error, 3 infeasible size.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "randaudit/randaudit.hpp"

namespace ra = randaudit;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr const char* kSeedEnv = "RANDAUDIT_SEED";

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct GeneratorOptions {
  std::string prng = "hash";
  std::optional<std::string> seed;
  std::optional<std::string> seed_string;
  std::optional<std::string> seed_file;
  std::optional<std::uint64_t> a, c, m;
  std::string hash = "sha256";
  std::optional<unsigned> width;
  std::optional<std::string> script;

  void attach(CLI::App* app) {
    app->add_option("--prng", prng, "Generator: hash, mt, lcg, randu, wh, scripted")->capture_default_str();
    app->add_option("--seed", seed, "Seed: decimal integer, 0x-prefixed hex, or text");
    app->add_option("--seed-string", seed_string, "Seed taken verbatim as text");
    app->add_option("--seed-file", seed_file, "File holding one hex or decimal seed line ('#' comments allowed)");
    app->add_option("--a", a, "LCG multiplier");
    app->add_option("--c", c, "LCG increment");
    app->add_option("--m", m, "LCG modulus");
    app->add_option("--hash", hash, "Hash for the hash generator: sha256, sha3-256, blake2s256")->capture_default_str();
    app->add_option("--width", width, "Keep only the top bits of each word");
    app->add_option("--script", script, "Scripted word file (width=<w> header, one word per line)");
  }

  bool scripted() const { return prng == "scripted" || script.has_value(); }

  ra::GeneratorKind kind() const {
    if (scripted()) return ra::GeneratorKind::scripted;
    return ra::parse_generator_kind(prng);
  }

  std::optional<ra::LcgParams> lcg() const {
    if (kind() != ra::GeneratorKind::lcg) {
      if (a || c || m) throw UsageError("--a/--c/--m apply only to --prng lcg");
      return std::nullopt;
    }
    if (prng == "randu") {
      if (a || c || m) throw UsageError("--prng randu fixes a, c and m; use --prng lcg to choose them");
      return ra::kRandu;
    }
    if (!a && !c && !m) return ra::kRandu;
    if (!a || !m) throw UsageError("--prng lcg needs at least --a and --m");
    ra::LcgParams p{*m, *a, c.value_or(0)};
    try {
      p.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return p;
  }

  /// Flag, then RANDAUDIT_SEED, then fresh entropy if allowed.
  ra::Seed resolve_seed(bool allow_entropy) const {
    const int given = seed.has_value() + seed_string.has_value() + seed_file.has_value();
    if (given > 1) throw UsageError("give at most one of --seed, --seed-string, --seed-file");
    if (seed) return ra::Seed::parse(*seed);
    if (seed_string) return ra::Seed::from_text(*seed_string);
    if (seed_file) {
      std::ifstream in(*seed_file);
      if (!in) throw UsageError("cannot read seed file " + *seed_file);
      std::stringstream buf;
      buf << in.rdbuf();
      return ra::Seed::from_file_contents(buf.str());
    }
    if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') return ra::Seed::parse(env);
    if (!allow_entropy) {
      throw UsageError(std::string("no seed: pass --seed/--seed-string/--seed-file or set ") + kSeedEnv);
    }
    std::random_device rd;
    std::uint64_t v = (std::uint64_t{rd()} << 32) | rd();
    switch (kind()) {
      case ra::GeneratorKind::lcg: v %= lcg()->modulus; break;
      case ra::GeneratorKind::mt19937: v &= 0xffffffffULL; break;
      case ra::GeneratorKind::wichmann_hill: v %= 30268ULL * 30306ULL * 30322ULL; break;
      default: break;
    }
    ra::Seed s = ra::Seed::from_integer(v);
    std::cerr << "warning: no seed given; using fresh entropy seed " << s.human_readable()
              << " (rerun with --seed " << s.human_readable() << " to reproduce)\n";
    return s;
  }

  ra::GeneratorSpec spec(bool allow_entropy) const {
    ra::GeneratorSpec g;
    g.kind = kind();
    g.lcg = lcg();
    g.hash = ra::parse_hash_algorithm(hash);
    g.output_width = width;
    if (g.kind == ra::GeneratorKind::scripted) {
      if (!script) throw UsageError("--prng scripted needs --script <file>");
      std::ifstream in(*script);
      if (!in) throw UsageError("cannot read script file " + *script);
      auto src = ra::ScriptedSource::parse(in);
      g.script_width = src.word_width();
      g.script = src.words();
    } else {
      g.seed = resolve_seed(allow_entropy);
    }
    return g;
  }
};

std::string seed_text(const ra::GeneratorSpec& g) {
  return g.kind == ra::GeneratorKind::scripted ? "(scripted)" : g.seed.human_readable();
}

void print_header(std::ostream& out, const ra::GeneratorSpec& spec, const ra::Generator& g,
                  const std::vector<std::pair<std::string, std::string>>& extra) {
  out << "# generator=" << g.describe() << " seed=" << seed_text(spec);
  for (const auto& [k, v] : extra) out << ' ' << k << '=' << v;
  out << '\n';
}

ra::Json generator_json(const ra::GeneratorSpec& spec, const ra::Generator& g) {
  ra::Json j = ra::generator_to_json(spec);
  j["description"] = g.describe();
  return j;
}

// --- gen --------------------------------------------------------------------

struct GenOptions {
  GeneratorOptions gen;
  std::uint64_t count = 10;
  std::string as = "words";
  std::string method = "mask";
  std::uint64_t range = 6;
  std::optional<std::string> multiplier;
  std::string format = "text";
};

int run_gen(const GenOptions& o) {
  const auto spec = o.gen.spec(true);
  ra::Generator g = spec.build();
  const auto method = ra::parse_integer_method(o.method);
  if (o.as != "words" && o.as != "ints" && o.as != "fractions") throw UsageError("--as must be words, ints or fractions");
  if (o.multiplier && (o.as != "ints" || method == ra::IntegerMethod::mask_reject)) {
    throw UsageError("--multiplier applies to --as ints with the floor or round method");
  }
  if (o.as == "ints" && o.range == 0) throw UsageError("--range must be at least 1");
  const std::optional<ra::Multiplier> mult = o.multiplier ? std::optional(ra::parse_multiplier(*o.multiplier)) : std::nullopt;

  std::vector<std::pair<std::string, std::string>> cfg{{"as", o.as}, {"count", std::to_string(o.count)}};
  if (o.as == "ints") {
    cfg.emplace_back("method", ra::to_string(method));
    cfg.emplace_back("range", std::to_string(o.range));
    if (mult) cfg.emplace_back("multiplier", *o.multiplier);
  }

  auto next_value = [&]() -> std::string {
    if (o.as == "words") return std::to_string(g.next_word());
    if (o.as == "fractions") {
      const unsigned w = g.word_width();
      std::ostringstream s;
      s << std::setprecision(17) << std::ldexp(static_cast<double>(g.next_word()), -static_cast<int>(w));
      return s.str();
    }
    if (mult) {
      return std::to_string(method == ra::IntegerMethod::floor ? ra::randint_floor_scaled(g, *mult)
                                                               : ra::randint_round_scaled(g, *mult, o.range));
    }
    return std::to_string(ra::randint(g, o.range, method));
  };

  if (o.format == "json") {
    ra::Json j;
    j["command"] = "gen";
    j["seed"] = spec.kind == ra::GeneratorKind::scripted ? ra::Json(nullptr) : ra::Json(spec.seed.human_readable());
    j["generator"] = generator_json(spec, g);
    for (const auto& [k, v] : cfg) j["config"][k] = v;
    j["values"] = ra::Json::array();
    for (std::uint64_t i = 0; i < o.count; ++i) j["values"].push_back(next_value());
    std::cout << j.dump(2) << '\n';
  } else {
    print_header(std::cout, spec, g, cfg);
    if (o.format == "csv") std::cout << "index,value\n";
    for (std::uint64_t i = 0; i < o.count; ++i) {
      if (o.format == "csv") std::cout << i << ',';
      std::cout << next_value() << '\n';
    }
  }
  return 0;
}

// --- sample -----------------------------------------------------------------

struct SampleOptions {
  GeneratorOptions gen;
  std::optional<std::uint64_t> n;
  std::uint64_t k = 0;
  std::string algo = "random-indices";
  bool replacement = false;
  std::optional<std::string> file;
  std::string method = "mask";
  std::string ties = "redraw";
  std::string format = "text";
};

std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

int run_sample(const SampleOptions& o) {
  const auto spec = o.gen.spec(false);
  ra::Generator g = spec.build();
  ra::GeneratorSource src(g, ra::parse_integer_method(o.method));
  const auto algo = ra::parse_sample_algorithm(o.algo);
  if (o.ties != "redraw" && o.ties != "stable") throw UsageError("--ties must be redraw or stable");
  const auto ties = o.ties == "redraw" ? ra::TieRule::redraw : ra::TieRule::stable;
  if (o.n && o.file) throw UsageError("give --n or --file, not both");
  if (!o.n && !o.file) throw UsageError("give --n or --file");

  std::vector<std::uint64_t> indices;
  std::vector<std::string> chosen_lines;
  ra::Sample result;
  std::uint64_t population = o.n.value_or(0);

  if (o.file && ra::is_reservoir(algo)) {
    // One pass over the stream; lines are never stored beyond the reservoir.
    std::ifstream file_in;
    std::istream* in = &std::cin;
    if (*o.file != "-") {
      file_in.open(*o.file);
      if (!file_in) throw UsageError("cannot read " + *o.file);
      in = &file_in;
    }
    if (o.k == 0) throw UsageError("reservoir size --k must be at least 1");
    const std::uint64_t words0 = src.words_consumed(), draws0 = src.integer_draws();
    auto stream = [&](auto& reservoir) {
      std::string line;
      while (std::getline(*in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        reservoir.push(line);
      }
      chosen_lines = reservoir.reservoir();
      population = reservoir.seen();
      result.partial = reservoir.partial();
    };
    if (algo == ra::SampleAlgorithm::reservoir_r) {
      ra::ReservoirR<std::string, decltype(src)> r(src, o.k);
      stream(r);
    } else {
      ra::VitterZ<std::string, decltype(src)> z(src, o.k);
      stream(z);
    }
    result.words_used = src.words_consumed() - words0;
    result.bits_used = result.words_used * g.word_width();
    result.integer_draws = src.integer_draws() - draws0;
  } else {
    std::vector<std::string> lines;
    if (o.file) {
      std::ifstream file_in(*o.file);
      if (*o.file != "-" && !file_in) throw UsageError("cannot read " + *o.file);
      lines = read_lines(*o.file == "-" ? std::cin : file_in);
      population = lines.size();
    }
    ra::SampleSpec s{population, o.k, o.replacement, algo};
    try {
      s.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    result = ra::draw_sample(src, s, ties);
    for (auto i : result.indices) {
      if (o.file) chosen_lines.push_back(lines[i - 1]);
    }
  }

  std::vector<std::pair<std::string, std::string>> cfg{{"algo", ra::to_string(algo)},
                                                        {"n", std::to_string(population)},
                                                        {"k", std::to_string(o.k)},
                                                        {"replacement", o.replacement ? "true" : "false"},
                                                        {"method", o.method}};
  if (algo == ra::SampleAlgorithm::pikk) cfg.emplace_back("ties", o.ties);
  if (o.format == "json") {
    ra::Json j;
    j["command"] = "sample";
    j["seed"] = spec.kind == ra::GeneratorKind::scripted ? ra::Json(nullptr) : ra::Json(spec.seed.human_readable());
    j["generator"] = generator_json(spec, g);
    for (const auto& [k, v] : cfg) j["config"][k] = v;
    if (o.file) j["lines"] = chosen_lines; else j["indices"] = result.indices;
    j["words_used"] = result.words_used;
    j["integer_draws"] = result.integer_draws;
    j["partial"] = result.partial;
    std::cout << j.dump(2) << '\n';
  } else {
    print_header(std::cout, spec, g, cfg);
    if (result.partial) std::cout << "# partial: stream shorter than k\n";
    if (o.file) {
      for (const auto& l : chosen_lines) std::cout << l << '\n';
    } else {
      for (auto i : result.indices) std::cout << i << '\n';
    }
  }
  return 0;
}

// --- bounds -----------------------------------------------------------------

struct BoundsOptions {
  bool table1 = false;
  std::optional<std::uint64_t> state_bits;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> k;
  bool replacement = false;
  std::string format = "text";
};

int run_bounds(const BoundsOptions& o) {
  if (o.table1) {
    const auto rep = ra::table1_report();
    if (o.format == "csv") rep.write_csv(std::cout); else rep.write_text(std::cout);
    return 0;
  }
  if (!o.state_bits || !o.n) throw UsageError("bounds needs --table1, or --state-bits with --n [--k]");
  if (*o.state_bits == 0) throw UsageError("--state-bits must be at least 1");
  if (*o.state_bits > 1'000'000 || *o.n > 100'000) throw ra::InfeasibleSize("bounds computes exact counts; keep --state-bits <= 10^6 and --n <= 10^5");
  ra::BigCount target;
  std::string what;
  if (!o.k) {
    target = ra::factorial(*o.n);
    what = std::to_string(*o.n) + "!";
  } else if (o.replacement) {
    target = ra::power(*o.n, *o.k);
    what = std::to_string(*o.n) + "^" + std::to_string(*o.k);
  } else {
    if (*o.k > *o.n) throw UsageError("--k exceeds --n without replacement");
    target = ra::binomial(*o.n, *o.k);
    what = "C(" + std::to_string(*o.n) + "," + std::to_string(*o.k) + ")";
  }
  const auto rep = ra::attainable_fraction(*o.state_bits, target);
  const std::string states_text = ra::scientific(rep.states);
  const std::string target_text = ra::scientific(rep.target);
  if (o.format == "json") {
    ra::Json j;
    j["state_bits"] = *o.state_bits;
    j["target"] = what;
    j["states"] = states_text;
    j["target_count"] = target_text;
    j["fraction"] = rep.fraction_text();
    j["l1_lower_bound"] = rep.l1_text();
    std::cout << j.dump(2) << '\n';
  } else if (o.format == "csv") {
    std::cout << "state_bits,target,states,target_count,fraction,l1_lower_bound\n"
              << *o.state_bits << ',' << what << ',' << states_text << ',' << target_text << ','
              << rep.fraction_text() << ',' << rep.l1_text() << '\n';
  } else {
    std::cout << "state space      2^" << *o.state_bits << " = " << states_text << '\n'
              << "outcomes         " << what << " = " << target_text << '\n'
              << "attainable       " << rep.fraction_text() << '\n'
              << "L1 lower bound   " << rep.l1_text() << '\n';
  }
  return 0;
}

// --- audit ------------------------------------------------------------------

struct AuditOptions {
  GeneratorOptions gen;
  std::string method;
  std::optional<std::uint64_t> reps;
  std::uint64_t n = 7;
  std::uint64_t k = 2;
  std::string algo = "random-indices";
  std::uint64_t range = ra::kMurdochRange;
  std::optional<std::string> multiplier;
  bool literal_range = false;
  double tolerance = 0.005;
  double alpha = 0.001;
  std::uint64_t repetitions = 100;
  std::optional<std::string> out;
  std::string format = "json";
  std::string replay_file;
};

void emit_report(const ra::AuditReport& r, const AuditOptions& o) {
  const ra::Json j = ra::to_json(r);
  if (o.out) {
    std::ofstream f(*o.out);
    if (!f) throw std::runtime_error("cannot write " + *o.out);
    f << j.dump(2) << '\n';
  }
  if (o.format == "csv") {
    ra::write_csv(std::cout, r);
  } else if (o.format == "text") {
    std::cout << "# experiment=" << r.config.experiment << " generator=" << r.generator_description
              << " seed=" << seed_text(r.config.generator) << " method=" << ra::to_string(r.config.method)
              << " replications=" << r.config.replications << '\n';
    for (const auto& s : r.statistics) {
      std::cout << std::left << std::setw(26) << s.name << std::setprecision(10) << s.value;
      if (s.reference) std::cout << "  reference " << *s.reference;
      if (s.p_value) std::cout << "  p " << *s.p_value;
      std::cout << '\n';
    }
    for (const auto& n : r.notes) std::cout << "note: " << n << '\n';
    std::cout << (r.passed ? "PASSED" : "FAILED") << '\n';
  } else {
    std::cout << j.dump(2) << '\n';
  }
}

int run_audit(const std::string& experiment, const AuditOptions& o) {
  if (experiment == "replay") {
    std::ifstream in(o.replay_file);
    if (!in) throw UsageError("cannot read report " + o.replay_file);
    const ra::Json recorded = ra::Json::parse(in);
    const auto original = ra::report_from_json(recorded);
    const auto again = ra::replay(original);
    emit_report(again, o);
    if (!again.same_results(original)) {
      std::cerr << "replay mismatch: statistics differ from the recorded report\n";
      return kExitRuntime;
    }
    std::cerr << "replay reproduced all " << original.statistics.size() << " statistics\n";
    return 0;
  }

  ra::ExperimentConfig c;
  c.experiment = experiment;
  c.n = o.n;
  c.k = o.k;
  c.alpha = o.alpha;
  c.tolerance = o.tolerance;
  c.repetitions = o.repetitions;
  c.algorithm = ra::parse_sample_algorithm(o.algo);
  c.range = o.range;
  if (experiment == "coverage") {
    GeneratorOptions lcg = o.gen;
    if (lcg.prng == "hash") lcg.prng = "lcg";
    if (lcg.kind() != ra::GeneratorKind::lcg) throw UsageError("coverage runs over an LCG; use --prng lcg");
    c.generator.kind = ra::GeneratorKind::lcg;
    c.generator.lcg = lcg.lcg();
    c.generator.seed = ra::Seed::from_integer(0);  // every seed is enumerated
    c.replications = c.generator.lcg->modulus;
  } else {
    c.generator = o.gen.spec(false);
  }
  const std::string default_method = experiment == "murdoch" ? "floor" : "mask";
  c.method = ra::parse_integer_method(o.method.empty() ? default_method : o.method);
  if (experiment == "murdoch") {
    c.replications = o.reps.value_or(1'000'000);
    if (o.literal_range && o.multiplier) throw UsageError("--literal-range and --multiplier are exclusive");
    if (o.literal_range) c.floor_multiplier = ra::Multiplier::of(o.range);
    if (o.multiplier) c.floor_multiplier = ra::parse_multiplier(*o.multiplier);
  } else if (experiment == "derangement" || experiment == "spearman") {
    c.replications = o.reps.value_or(100'000);
  } else if (experiment == "frequency") {
    const auto cells = ra::binomial(c.n, std::min(c.k, c.n));
    if (cells > 10000) throw ra::InfeasibleSize("frequency test tabulates every subset; C(n,k) must be <= 10^4");
    c.replications = o.reps.value_or(std::max<std::uint64_t>(100'000, 100 * cells.convert_to<std::uint64_t>()));
  } else if (experiment == "calibration") {
    c.replications = o.reps.value_or(10'000);
  }
  emit_report(ra::run_experiment(c), o);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randaudit: PRNG, sampling and bias auditing toolkit"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Emit words, integers or fractions from a generator");
  gen.gen.attach(gen_cmd);
  gen_cmd->add_option("--count", gen.count, "How many values")->capture_default_str();
  gen_cmd->add_option("--as", gen.as, "words, ints or fractions")->capture_default_str();
  gen_cmd->add_option("--method", gen.method, "Integer method: floor, round, mask")->capture_default_str();
  gen_cmd->add_option("--range", gen.range, "Integers are drawn from {1..range}")->capture_default_str();
  gen_cmd->add_option("--multiplier", gen.multiplier, "Fractional range NUM/DEN for floor or round");
  gen_cmd->add_option("--format", gen.format, "text, csv or json")->capture_default_str();

  SampleOptions sample;
  auto* sample_cmd = app.add_subcommand("sample", "Draw a sample of indices or input lines");
  sample.gen.attach(sample_cmd);
  sample_cmd->add_option("--n", sample.n, "Population size");
  sample_cmd->add_option("--k", sample.k, "Sample size")->required();
  sample_cmd->add_option("--algo", sample.algo,
                         "pikk, fisher-yates, random-indices, cormen, reservoir-r, vitter-z")
      ->capture_default_str();
  sample_cmd->add_flag("--replacement", sample.replacement, "Sample with replacement (random-indices only)");
  sample_cmd->add_option("--file", sample.file, "Sample lines of a file ('-' for stdin)");
  sample_cmd->add_option("--scripted", sample.gen.script, "Scripted word file; implies --prng scripted");
  sample_cmd->add_option("--method", sample.method, "Integer method: floor, round, mask")->capture_default_str();
  sample_cmd->add_option("--ties", sample.ties, "PIKK ties: redraw or stable")->capture_default_str();
  sample_cmd->add_option("--format", sample.format, "text or json")->capture_default_str();

  BoundsOptions bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Pigeonhole attainability and the reference table");
  bounds_cmd->add_flag("--table1", bounds.table1, "Print the full pigeonhole table");
  bounds_cmd->add_option("--state-bits", bounds.state_bits, "State space size in bits");
  bounds_cmd->add_option("--n", bounds.n, "Items (permutations of n, or samples from n)");
  bounds_cmd->add_option("--k", bounds.k, "Sample size; omit for permutations");
  bounds_cmd->add_flag("--replacement", bounds.replacement, "Count samples with replacement (n^k)");
  bounds_cmd->add_option("--format", bounds.format, "text, csv or json")->capture_default_str();

  AuditOptions audit;
  auto* audit_cmd = app.add_subcommand("audit", "Run a bias experiment and write a report");
  audit_cmd->require_subcommand(1);
  audit_cmd->add_option("--out", audit.out, "Also write the JSON report here");
  audit_cmd->add_option("--format", audit.format, "json, csv or text (stdout)")->capture_default_str();
  std::string experiment;
  auto add_experiment = [&](const std::string& name, const std::string& help) {
    auto* sub = audit_cmd->add_subcommand(name, help);
    sub->callback([&experiment, name] { experiment = name; });
    if (name == "replay") {
      sub->add_option("report", audit.replay_file, "Recorded JSON report")->required();
      return sub;
    }
    audit.gen.attach(sub);
    sub->add_option("--method", audit.method, "Integer method: floor, round, mask");
    sub->add_option("--reps", audit.reps, "Replications");
    return sub;
  };
  auto* murdoch = add_experiment("murdoch", "Even share on the range 1717986918");
  murdoch->add_option("--range", audit.range, "Integer range for mask")->capture_default_str();
  murdoch->add_option("--multiplier", audit.multiplier, "Floor multiplier NUM/DEN (default 8589934592/5)");
  murdoch->add_flag("--literal-range", audit.literal_range, "Floor with the integer range instead of (2/5) 2^32");
  murdoch->add_option("--tolerance", audit.tolerance, "Allowed |observed - exact|")->capture_default_str();
  auto* coverage = add_experiment("coverage", "Distinct Fisher-Yates permutations over every LCG seed");
  coverage->add_option("--n", audit.n, "Items to shuffle")->capture_default_str();
  for (const auto& [name, help] : {std::pair<std::string, std::string>{"derangement", "Derangement and fixed-point test"},
                                   {"spearman", "Spearman correlation between independent shuffles"}}) {
    auto* sub = add_experiment(name, help);
    sub->add_option("--n", audit.n, "Items to shuffle")->capture_default_str();
    sub->add_option("--alpha", audit.alpha, "Test level")->capture_default_str();
  }
  auto* frequency = add_experiment("frequency", "Chi-square over all k-subsets");
  frequency->add_option("--n", audit.n, "Population size")->capture_default_str();
  frequency->add_option("--k", audit.k, "Sample size")->capture_default_str();
  frequency->add_option("--algo", audit.algo, "Sampling algorithm")->capture_default_str();
  frequency->add_option("--alpha", audit.alpha, "Test level")->capture_default_str();
  auto* calib = add_experiment("calibration", "Repeat the test battery over sharded seeds");
  calib->add_option("--n", audit.n, "Items for derangement and Spearman")->capture_default_str();
  calib->add_option("--k", audit.k, "Sample size for the frequency test (n = 5)")->capture_default_str();
  calib->add_option("--repetitions", audit.repetitions, "Sharded repetitions")->capture_default_str();
  calib->add_option("--alpha", audit.alpha, "Family level, split over four tests")->capture_default_str();
  add_experiment("replay", "Rerun a recorded report and compare its statistics");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (gen_cmd->parsed()) {
      if (gen.format != "text" && gen.format != "csv" && gen.format != "json") throw UsageError("bad --format");
      return run_gen(gen);
    }
    if (sample_cmd->parsed()) {
      if (sample.format != "text" && sample.format != "json") throw UsageError("bad --format");
      return run_sample(sample);
    }
    if (bounds_cmd->parsed()) return run_bounds(bounds);
    if (audit_cmd->parsed()) {
      if (audit.format != "json" && audit.format != "csv" && audit.format != "text") throw UsageError("bad --format");
      return run_audit(experiment, audit);
    }
  } catch (const ra::InfeasibleSize& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
