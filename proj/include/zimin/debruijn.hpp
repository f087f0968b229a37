#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zimin/rational.hpp"
#include "zimin/word.hpp"

namespace zimin {

// Z_2-instances of length <= max_len with no proper bifix that is itself a Z_2-instance.
std::vector<Word> z2_bifixfree_instances(unsigned q, std::size_t max_len);
// Z_2-instances of length <= max_len with no proper factor that is a Z_2-instance.
std::vector<Word> minimal_z2_instances(unsigned q, std::size_t max_len);

enum class InstanceSet { minimal, bifix_free };

// Nodes are the q^k words of length k, indexed most-significant letter first.
// A node completes V when V is a suffix of the node word.
struct DeBruijnModel {
  unsigned k = 0;
  unsigned q = 0;
  std::vector<Word> instances;
  std::vector<std::vector<std::size_t>> node_instances;  // node -> indices into instances
  std::size_t nodes() const { return node_instances.size(); }
  std::size_t successor(std::size_t node, unsigned letter) const;
  Word node_word(std::size_t node) const;
  // Parameters per node: q = 2 uses one number (probability of appending 1); otherwise q weights.
  std::size_t params_per_node() const { return q == 2 ? 1 : q; }
};

DeBruijnModel make_debruijn_model(unsigned k, unsigned q = 2, InstanceSet set = InstanceSet::minimal);

template <class T>
struct StationarySolution {
  std::vector<T> p;
  std::vector<T> q_dist;
  std::vector<T> r;  // per instance
  T d{};
  bool reducible = false;
  std::size_t closed_classes = 0;
};
using StationaryFloat = StationarySolution<double>;
using StationaryExact = StationarySolution<Rational>;

StationaryFloat stationary(const DeBruijnModel& model, const std::vector<double>& p);
StationaryExact stationary_exact(const DeBruijnModel& model, const std::vector<Rational>& p);

// Unconstrained entries ('-') become 1/2.
StationaryExact verify_candidate(const DeBruijnModel& model, const std::vector<std::optional<Rational>>& p);
// Comma-separated list of a/b, decimals, '-' or an en dash.
std::vector<std::optional<Rational>> parse_probability_tuple(std::string_view text);

struct MinimizeConfig {
  unsigned restarts = 64;
  std::uint64_t seed = 7;
  double tolerance = 1e-10;
  unsigned threads = 0;
};
StationaryFloat minimize_objective(const DeBruijnModel& model, const MinimizeConfig& cfg = {});

struct FamilyFrequencies {
  std::vector<Rational> node_freq;                   // visits per period length
  std::vector<std::optional<Rational>> implied_p;    // q = 2: fraction of visits followed by 1
  std::vector<Rational> r;                           // per instance
  Rational estimate;                                 // sum r_V^2
  // Finite-length variant on `periods` copies: sum_V (C(c_V,2) - |V| c_V) / C(L+1,2).
  Rational corrected_estimate(const DeBruijnModel& model, std::size_t period_length, std::size_t periods) const;
};
FamilyFrequencies word_family_frequencies(const Word& period, const DeBruijnModel& model);
// Node visit counts along a finite word (positions with a full window).
std::vector<std::uint64_t> node_counts_linear(const Word& w, const DeBruijnModel& model);

std::vector<double> simulate_walk(const DeBruijnModel& model, const std::vector<double>& p, std::uint64_t steps,
                                  std::uint64_t seed);

// Published edge assignments reaching 1/28 for k = 4, and the periods of the matching word families.
std::string_view candidate_tuple(unsigned which);  // 1..3
std::string_view candidate_period(unsigned which);  // 2..3
Word expand_period_spec(std::string_view spec);     // "(1101)^3(10)^2..." with 0/1 letters

}  // namespace zimin
