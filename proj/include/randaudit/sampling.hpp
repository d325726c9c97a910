#pragma once

// Sampling and permutation algorithms, written against RandomSource.
// Indices are 1-based throughout.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "randaudit/integers.hpp"
#include "randaudit/source.hpp"

namespace randaudit {

enum class SampleAlgorithm { pikk, fisher_yates_prefix, random_indices, cormen_recursive, reservoir_r, vitter_z };

inline constexpr SampleAlgorithm kAllSampleAlgorithms[] = {
    SampleAlgorithm::pikk,        SampleAlgorithm::fisher_yates_prefix, SampleAlgorithm::random_indices,
    SampleAlgorithm::cormen_recursive, SampleAlgorithm::reservoir_r, SampleAlgorithm::vitter_z};

inline std::string to_string(SampleAlgorithm a) {
  switch (a) {
    case SampleAlgorithm::pikk: return "pikk";
    case SampleAlgorithm::fisher_yates_prefix: return "fisher-yates";
    case SampleAlgorithm::random_indices: return "random-indices";
    case SampleAlgorithm::cormen_recursive: return "cormen";
    case SampleAlgorithm::reservoir_r: return "reservoir-r";
    case SampleAlgorithm::vitter_z: return "vitter-z";
  }
  return "?";
}

inline SampleAlgorithm parse_sample_algorithm(std::string_view s) {
  for (auto a : kAllSampleAlgorithms) {
    if (s == to_string(a)) return a;
  }
  if (s == "fisher_yates_prefix") return SampleAlgorithm::fisher_yates_prefix;
  if (s == "random_indices") return SampleAlgorithm::random_indices;
  if (s == "cormen_recursive") return SampleAlgorithm::cormen_recursive;
  if (s == "reservoir_r") return SampleAlgorithm::reservoir_r;
  if (s == "vitter_z") return SampleAlgorithm::vitter_z;
  throw std::invalid_argument("unknown sampling algorithm: " + std::string(s));
}

inline bool is_reservoir(SampleAlgorithm a) {
  return a == SampleAlgorithm::reservoir_r || a == SampleAlgorithm::vitter_z;
}

struct SampleSpec {
  std::uint64_t population = 0;
  std::uint64_t size = 0;
  bool with_replacement = false;
  SampleAlgorithm algorithm = SampleAlgorithm::random_indices;

  void validate() const {
    if (population == 0) throw std::invalid_argument("population size must be positive");
    if (with_replacement && algorithm != SampleAlgorithm::random_indices) {
      throw std::invalid_argument(to_string(algorithm) + " samples without replacement only");
    }
    if (!with_replacement && size > population) {
      throw std::invalid_argument("sample size " + std::to_string(size) + " exceeds population " +
                                  std::to_string(population) + " without replacement");
    }
    if (is_reservoir(algorithm) && size == 0) throw std::invalid_argument("reservoir size must be at least 1");
  }
};

struct Sample {
  std::vector<std::uint64_t> indices;
  std::uint64_t words_used = 0;
  std::uint64_t bits_used = 0;
  std::uint64_t integer_draws = 0;
  /// Reservoir only: the stream ended before k items arrived.
  bool partial = false;
};

namespace detail {

template <RandomSource S>
class Meter {
 public:
  explicit Meter(const S& src)
      : src_(&src), words_(src.words_consumed()), bits_(src.bits_consumed()), draws_(src.integer_draws()) {}

  void finish(Sample& s) const {
    s.words_used = src_->words_consumed() - words_;
    s.bits_used = src_->bits_consumed() - bits_;
    s.integer_draws = src_->integer_draws() - draws_;
  }

 private:
  const S* src_;
  std::uint64_t words_, bits_, draws_;
};

}  // namespace detail

// --- PIKK -------------------------------------------------------------------

/// How PIKK treats equal keys. `redraw` discards the whole key vector and
/// draws again, which keeps every ordering equally likely. `stable` orders
/// equal keys by index and so favors low indices.
enum class TieRule { redraw, stable };

/// Items ordered by ascending key (ties by index), as 1-based indices.
/// nullopt when keys tie under TieRule::redraw.
inline std::optional<std::vector<std::uint64_t>> pikk_order(std::span<const std::uint64_t> keys, TieRule rule) {
  std::vector<std::uint64_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return keys[a] < keys[b]; });
  if (rule == TieRule::redraw) {
    for (std::size_t i = 1; i < order.size(); ++i) {
      if (keys[order[i]] == keys[order[i - 1]]) return std::nullopt;
    }
  }
  for (auto& i : order) ++i;
  return order;
}

/// Permute indices and keep k: one key per item, sort, keep the first k.
/// Draws exactly n keys per attempt.
template <RandomSource S>
Sample pikk(S& src, std::uint64_t n, std::uint64_t k, TieRule rule = TieRule::redraw) {
  if (k > n) throw std::invalid_argument("pikk: k exceeds n");
  detail::Meter meter(src);
  std::vector<std::uint64_t> keys(n);
  for (;;) {
    for (auto& key : keys) key = src.key();
    if (auto order = pikk_order(keys, rule)) {
      order->resize(k);
      Sample s{std::move(*order)};
      meter.finish(s);
      return s;
    }
  }
}

// --- Fisher-Yates -----------------------------------------------------------

/// Durstenfeld form: for i = n-1 down to 1 swap slot i with a uniform slot
/// j in {0..i}. Uses exactly n - 1 integer draws.
template <RandomSource S, class T>
void shuffle(S& src, std::span<T> items) {
  for (std::size_t i = items.size(); i-- > 1;) {
    const std::size_t j = static_cast<std::size_t>(src.draw(i + 1) - 1);
    std::swap(items[i], items[j]);
  }
}

template <RandomSource S>
std::vector<std::uint64_t> fisher_yates(S& src, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("fisher_yates: n must be at least 1");
  std::vector<std::uint64_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::uint64_t{1});
  shuffle(src, std::span<std::uint64_t>(perm));
  return perm;
}

/// Full shuffle, keep the first k positions.
template <RandomSource S>
Sample fisher_yates_prefix(S& src, std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::invalid_argument("fisher_yates_prefix: k exceeds n");
  detail::Meter meter(src);
  Sample s{fisher_yates(src, n)};
  s.indices.resize(k);
  meter.finish(s);
  return s;
}

// --- random indices ---------------------------------------------------------

/// k uniform draws on {1..n}. Without replacement, duplicates are rejected
/// and redrawn; indices come back in draw order.
template <RandomSource S>
Sample sample_random_indices(S& src, std::uint64_t n, std::uint64_t k, bool with_replacement) {
  if (n == 0) throw std::invalid_argument("sample_random_indices: n must be positive");
  if (!with_replacement && k > n) throw std::invalid_argument("sample_random_indices: k exceeds n");
  detail::Meter meter(src);
  Sample s;
  s.indices.reserve(k);
  if (with_replacement) {
    for (std::uint64_t i = 0; i < k; ++i) s.indices.push_back(src.draw(n));
  } else {
    std::unordered_set<std::uint64_t> seen;
    while (s.indices.size() < k) {
      const std::uint64_t i = src.draw(n);
      if (seen.insert(i).second) s.indices.push_back(i);
    }
  }
  meter.finish(s);
  return s;
}

// --- Cormen et al. recursive sampling ---------------------------------------

/// RandomSample(k, n): S = RandomSample(k-1, n-1); i uniform on {1..n};
/// add n if i is already in S, else add i. Unrolled into a loop over
/// j = n-k+1 .. n, so there is no recursion-depth limit.
template <RandomSource S>
Sample cormen_sample(S& src, std::uint64_t n, std::uint64_t k) {
  if (k > n) throw std::invalid_argument("cormen_sample: k exceeds n");
  detail::Meter meter(src);
  Sample s;
  s.indices.reserve(k);
  std::unordered_set<std::uint64_t> chosen;
  for (std::uint64_t j = n - k + 1; j <= n && k > 0; ++j) {
    const std::uint64_t i = src.draw(j);
    const std::uint64_t pick = chosen.contains(i) ? j : i;
    chosen.insert(pick);
    s.indices.push_back(pick);
  }
  meter.finish(s);
  return s;
}

// --- reservoir sampling -----------------------------------------------------

/// Waterman's Algorithm R over a stream of unknown length.
template <class T, RandomSource S>
class ReservoirR {
 public:
  ReservoirR(S& src, std::size_t k) : src_(&src), k_(k) {
    if (k == 0) throw std::invalid_argument("reservoir size must be at least 1");
    reservoir_.reserve(k);
  }

  void push(T item) {
    ++seen_;
    if (seen_ <= k_) {
      reservoir_.push_back(std::move(item));
      return;
    }
    const std::uint64_t j = src_->draw(seen_);
    if (j <= k_) reservoir_[j - 1] = std::move(item);
  }

  const std::vector<T>& reservoir() const { return reservoir_; }
  std::uint64_t seen() const { return seen_; }
  bool partial() const { return seen_ < k_; }

 private:
  S* src_;
  std::uint64_t k_;
  std::uint64_t seen_ = 0;
  std::vector<T> reservoir_;
};

/// Vitter's Algorithm Z: after the reservoir fills, the number of records
/// to skip before the next replacement is drawn directly.
///
/// While fewer than 22k records have been processed the skip follows
/// Algorithm X: one uniform V per skip, record t is passed over while
/// prod (t'-k)/t' over the skip so far exceeds V. That comparison is exact
/// (rational threshold against a lazily refined V) and is decided record
/// by record, so the same code serves finite and unbounded streams.
/// Beyond the threshold the skip comes from Z's rejection sampler in
/// double precision.
template <class T, RandomSource S>
class VitterZ {
 public:
  static constexpr std::uint64_t kThreshold = 22;

  VitterZ(S& src, std::size_t k) : src_(&src), k_(k) {
    if (k == 0) throw std::invalid_argument("reservoir size must be at least 1");
    reservoir_.reserve(k);
  }

  void push(T item) {
    ++t_;
    if (t_ <= k_) {
      reservoir_.push_back(std::move(item));
      return;
    }
    if (!selects_current()) return;
    reservoir_[src_->draw(k_) - 1] = std::move(item);
  }

  const std::vector<T>& reservoir() const { return reservoir_; }
  std::uint64_t seen() const { return t_; }
  bool partial() const { return t_ < k_; }

 private:
  using Variate = decltype(std::declval<S&>().unit_variate());
  enum class Mode { idle, x, z };

  bool selects_current() {
    if (mode_ == Mode::idle) begin_skip(t_ - 1);
    if (mode_ == Mode::x) {
      quot_num_ *= t_ - k_;
      quot_den_ *= t_;
      if (variate_->below(quot_num_, quot_den_)) return false;
      variate_.reset();
      mode_ = Mode::idle;
      return true;
    }
    if (skip_ > 0) {
      --skip_;
      return false;
    }
    mode_ = Mode::idle;
    return true;
  }

  void begin_skip(std::uint64_t processed) {
    if (processed <= kThreshold * k_) {
      mode_ = Mode::x;
      variate_.emplace(src_->unit_variate());
      quot_num_ = 1;
      quot_den_ = 1;
    } else {
      mode_ = Mode::z;
      skip_ = z_skip(processed);
    }
  }

  std::uint64_t z_skip(std::uint64_t processed) {
    const double n = static_cast<double>(k_);
    const double t = static_cast<double>(processed);
    const double term = t - n + 1;
    if (!w_ready_) {
      w_ = std::exp(-std::log(src_->unit_double()) / n);
      w_ready_ = true;
    }
    for (;;) {
      const double u = src_->unit_double();
      const double x = t * (w_ - 1.0);
      const double s = std::floor(x);
      // Accept if U <= h(S) / c g(X).
      const double ratio = (t + 1) / term;
      const double lhs = std::exp(std::log(((u * ratio * ratio) * (term + s)) / (t + x)) / n);
      const double rhs = (((t + x) / (term + s)) * term) / t;
      if (lhs <= rhs) {
        w_ = rhs / lhs;
        return to_skip(s);
      }
      // Otherwise accept if U <= f(S) / c g(X).
      double y = (((u * (t + 1)) / term) * (t + s + 1)) / (t + x);
      double denom = 0, numer_lim = 0;
      if (n < s) {
        denom = t;
        numer_lim = term + s;
      } else {
        denom = t - n + s;
        numer_lim = t + 1;
      }
      for (double numer = t + s; numer >= numer_lim; numer -= 1) {
        y = (y * numer) / denom;
        denom -= 1;
      }
      w_ = std::exp(-std::log(src_->unit_double()) / n);
      if (std::exp(std::log(y) / n) <= (t + x) / t) return to_skip(s);
    }
  }

  static std::uint64_t to_skip(double s) {
    constexpr double kMax = 4.0e18;
    return s >= kMax ? static_cast<std::uint64_t>(kMax) : static_cast<std::uint64_t>(s);
  }

  S* src_;
  std::uint64_t k_;
  std::uint64_t t_ = 0;
  std::vector<T> reservoir_;
  Mode mode_ = Mode::idle;
  std::optional<Variate> variate_;
  BigInt quot_num_ = 1;
  BigInt quot_den_ = 1;
  std::uint64_t skip_ = 0;
  double w_ = 0;
  bool w_ready_ = false;
};

template <class Reservoir, class Range>
Sample run_reservoir(Reservoir& r, const Range& stream) {
  for (const auto& item : stream) r.push(item);
  Sample s;
  s.partial = r.partial();
  return s;
}

// --- dispatch ---------------------------------------------------------------

/// Draws a sample of indices from {1..n} with the algorithm in `spec`.
/// Reservoir algorithms stream the indices 1..n.
template <RandomSource S>
Sample draw_sample(S& src, const SampleSpec& spec, TieRule pikk_ties = TieRule::redraw) {
  spec.validate();
  const auto n = spec.population;
  const auto k = spec.size;
  switch (spec.algorithm) {
    case SampleAlgorithm::pikk: return pikk(src, n, k, pikk_ties);
    case SampleAlgorithm::fisher_yates_prefix: return fisher_yates_prefix(src, n, k);
    case SampleAlgorithm::random_indices: return sample_random_indices(src, n, k, spec.with_replacement);
    case SampleAlgorithm::cormen_recursive: return cormen_sample(src, n, k);
    case SampleAlgorithm::reservoir_r:
    case SampleAlgorithm::vitter_z: {
      detail::Meter meter(src);
      Sample s;
      auto run = [&](auto& reservoir) {
        for (std::uint64_t i = 1; i <= n; ++i) reservoir.push(i);
        s.indices = reservoir.reservoir();
        s.partial = reservoir.partial();
      };
      if (spec.algorithm == SampleAlgorithm::reservoir_r) {
        ReservoirR<std::uint64_t, S> r(src, k);
        run(r);
      } else {
        VitterZ<std::uint64_t, S> z(src, k);
        run(z);
      }
      meter.finish(s);
      return s;
    }
  }
  throw std::invalid_argument("bad sampling algorithm");
}

}  // namespace randaudit
