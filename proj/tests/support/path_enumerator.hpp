#pragma once

// Exact path enumeration for randomized code.
//
// Every random decision is a choice point with rational branch weights.
// enumerate() reruns the code under test once per root-to-leaf path
// (replaying a prefix, then taking branch 0 at every new point) and adds
// the path weight to the outcome it produced. Paths longer than
// max_choices are cut off and their mass is reported as truncated.

#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace randaudit::testing {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

template <class Key>
struct Enumeration {
  std::map<Key, Rational> mass;
  Rational truncated = 0;
  std::uint64_t leaves = 0;

  Rational total() const {
    Rational t = truncated;
    for (const auto& [k, m] : mass) t += m;
    return t;
  }
};

class ChoiceTree {
 public:
  struct Truncated {};

  explicit ChoiceTree(std::size_t max_choices = std::numeric_limits<std::size_t>::max()) : max_(max_choices) {}

  std::size_t choose_uniform(std::size_t branches) {
    const std::size_t i = next_index(branches);
    weight_ *= Rational(1, branches);
    return i;
  }

  std::size_t choose(const std::vector<Rational>& weights) {
    const std::size_t i = next_index(weights.size());
    weight_ *= weights[i];
    return i;
  }

  std::size_t depth() const { return taken_.size(); }

  /// `run` performs one execution and returns its outcome.
  template <class F>
  auto enumerate(F&& run) {
    using Key = decltype(run());
    Enumeration<Key> out;
    std::vector<std::vector<std::size_t>> pending{{}};
    while (!pending.empty()) {
      prefix_ = std::move(pending.back());
      pending.pop_back();
      taken_.clear();
      fresh_.clear();
      weight_ = 1;
      try {
        auto key = run();
        out.mass[key] += weight_;
      } catch (const Truncated&) {
        out.truncated += weight_;
      }
      ++out.leaves;
      for (const auto& [pos, branches] : fresh_) {
        for (std::size_t b = 1; b < branches; ++b) {
          std::vector<std::size_t> next(taken_.begin(), taken_.begin() + static_cast<std::ptrdiff_t>(pos));
          next.push_back(b);
          pending.push_back(std::move(next));
        }
      }
    }
    return out;
  }

 private:
  std::size_t next_index(std::size_t branches) {
    if (branches == 0) throw std::logic_error("choice point without branches");
    const std::size_t pos = taken_.size();
    if (pos >= max_) throw Truncated{};
    std::size_t i = 0;
    if (pos < prefix_.size()) {
      i = prefix_[pos];
    } else {
      fresh_.emplace_back(pos, branches);
    }
    taken_.push_back(i);
    return i;
  }

  std::size_t max_;
  std::vector<std::size_t> prefix_;
  std::vector<std::size_t> taken_;
  std::vector<std::pair<std::size_t, std::size_t>> fresh_;
  Rational weight_ = 1;
};

/// A word generator whose every word is a uniform choice among 2^width
/// values, so library code runs unchanged on enumerated bits.
class TreeWords {
 public:
  TreeWords(ChoiceTree& tree, unsigned width) : tree_(&tree), width_(width) {}

  std::uint64_t next_word() {
    ++emitted_;
    return tree_->choose_uniform(std::size_t{1} << width_);
  }
  unsigned word_width() const { return width_; }
  std::uint64_t words_emitted() const { return emitted_; }

 private:
  ChoiceTree* tree_;
  unsigned width_;
  std::uint64_t emitted_ = 0;
};

/// Uniform variate kept as an interval [lo, hi); each undecided comparison
/// splits it in proportion to length.
class SymbolicUniform {
 public:
  explicit SymbolicUniform(ChoiceTree& tree) : tree_(&tree) {}

  bool below(const BigInt& num, const BigInt& den) {
    const Rational q(num, den);
    if (q >= hi_) return true;
    if (q <= lo_) return false;
    const Rational len = hi_ - lo_;
    if (tree_->choose({(q - lo_) / len, (hi_ - q) / len}) == 0) {
      hi_ = q;
      return true;
    }
    lo_ = q;
    return false;
  }

 private:
  ChoiceTree* tree_;
  Rational lo_ = 0;
  Rational hi_ = 1;
};

/// RandomSource with integer draws taken as the exact law of one
/// mask-reject call (uniform on {1..m}), keys uniform on 2^key_bits values
/// and symbolic unit variates. Every tree it induces is finite unless the
/// algorithm itself loops.
class SymbolicSource {
 public:
  SymbolicSource(ChoiceTree& tree, unsigned key_bits) : tree_(&tree), key_bits_(key_bits) {}

  std::uint64_t draw(std::uint64_t m) {
    ++draws_;
    ++words_;
    return 1 + tree_->choose_uniform(static_cast<std::size_t>(m));
  }
  std::uint64_t key() {
    ++words_;
    return tree_->choose_uniform(std::size_t{1} << key_bits_);
  }
  SymbolicUniform unit_variate() { return SymbolicUniform(*tree_); }
  double unit_double() { throw std::logic_error("SymbolicSource has no floating-point variates"); }
  std::uint64_t integer_draws() const { return draws_; }
  std::uint64_t words_consumed() const { return words_; }
  std::uint64_t bits_consumed() const { return words_; }

 private:
  ChoiceTree* tree_;
  unsigned key_bits_;
  std::uint64_t draws_ = 0;
  std::uint64_t words_ = 0;
};

}  // namespace randaudit::testing
