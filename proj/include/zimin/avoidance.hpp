#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "zimin/rational.hpp"
#include "zimin/word.hpp"

namespace zimin {

struct SearchConfig {
  std::uint64_t node_budget = 1'000'000'000;
  unsigned threads = 0;  // 0: default pool size
  unsigned split_depth = 8;
};

struct AvoidanceResult {
  unsigned n = 0;
  unsigned q = 0;
  std::optional<std::size_t> f_value;
  std::size_t deepest_avoider = 0;  // lower bound f >= deepest + 1 even when exhausted
  std::vector<Word> max_avoiders;   // filled by enumerate ops only
  std::vector<Integer> avoiders_by_length;
  std::uint64_t nodes_explored = 0;
  bool budget_exhausted = false;
  Integer total_avoiders() const;
};

AvoidanceResult compute_f(unsigned n, unsigned q, const SearchConfig& cfg = {});
// All words of length f(n,q)-1 avoiding Z_n, sorted.
AvoidanceResult enumerate_max_avoiders(unsigned n, unsigned q, const SearchConfig& cfg = {});
// Every Z_n-avoiding word (the empty word included), sorted by length then lexicographically.
std::vector<Word> enumerate_all_avoiders(unsigned n, unsigned q, const SearchConfig& cfg = {});

struct MinimalInstances {
  std::vector<Word> words;  // empty when keep_words = false
  Integer count;
  bool cap_too_small = false;
  bool budget_exhausted = false;
  std::uint64_t nodes_explored = 0;
};

MinimalInstances enumerate_minimal_instances(unsigned n, unsigned q, std::size_t max_len, bool keep_words = true,
                                             const SearchConfig& cfg = {});
Integer m2_closed_form(unsigned q);

// Exponential tower of `height` copies of `base`; height 0 is 1.
struct Tetration {
  Integer base;
  unsigned height = 0;
  std::optional<Integer> value;  // absent above the digit cap
  double log10_value = 0;        // may be +inf for very tall towers
  std::string str() const;
};
Tetration tetration(const Integer& base, unsigned height, std::size_t digit_cap = 2000);

struct NominalValue {
  double value = 0;     // may overflow to inf; see log10
  double log10 = 0;
  std::string note;
};

struct BoundReport {
  unsigned n = 0;
  unsigned q = 0;
  Tetration tetration_upper;
  Tetration tao_upper;  // strict: f < tower
  NominalValue first_moment_lower;     // an avoider of every length M <= value exists
  std::optional<Integer> first_moment_f_lower;  // floor(value) + 1 <= f(n,q)
  NominalValue tao_product_lower;  // o(1) factor omitted
  std::optional<Integer> rs_chain_upper;  // bound on f(n,q) from f(n-1,q), m(n-1,q)
  std::optional<Integer> f_prev;
  std::optional<Integer> m_prev;
  std::optional<double> rs_asymptotic_form;  // n = 3 only; not a bound
  std::optional<Integer> known_f;
};

// Known exact values used by reports when not supplied: f(1,q)=1, f(2,q)=2q+1, f(3,2)=29,
// m(1,q)=q, m(2,q) closed form, m(3,2)=7882.
std::optional<Integer> known_f(unsigned n, unsigned q);
std::optional<Integer> known_m(unsigned n, unsigned q);

BoundReport bounds_report(unsigned n, unsigned q, std::optional<Integer> f_prev = std::nullopt,
                          std::optional<Integer> m_prev = std::nullopt);

enum class LongAvoiderStrategy { greedy, restart_backtrack };

struct LongAvoiderConfig {
  LongAvoiderStrategy strategy = LongAvoiderStrategy::greedy;
  std::uint64_t seed = 1;
  std::uint64_t node_budget = 50'000'000;
  unsigned drop = 8;  // letters dropped per dead end (restart_backtrack)
};

std::optional<Word> find_long_avoider(unsigned n, unsigned q, std::size_t target, const LongAvoiderConfig& cfg = {});

}  // namespace zimin
