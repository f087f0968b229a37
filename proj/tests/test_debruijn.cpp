#include <doctest.h>

#include "helpers.hpp"
#include "zimin/debruijn.hpp"
#include "zimin/pattern.hpp"

using namespace zimin;

namespace {

std::vector<std::string> strs(const std::vector<Word>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.str());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("minimal Z2 instance sets") {
  CHECK(strs(minimal_z2_instances(2, 4)) == std::vector<std::string>{"000", "010", "0110", "1001", "101", "111"});
  CHECK(minimal_z2_instances(2, 5).size() == 6);
  auto bf = strs(z2_bifixfree_instances(2, 5));
  CHECK(bf.size() == 26);
  for (const char* w : {"000", "010", "01001", "0110", "01101", "1001", "10010", "101", "10110", "111"})
    CHECK(std::binary_search(bf.begin(), bf.end(), std::string(w)));
  CHECK(strs(minimal_z2_instances(2, 3)) == std::vector<std::string>{"000", "010", "101", "111"});
  for (const auto& w : z2_bifixfree_instances(2, 7)) {
    CHECK(is_zimin_instance(w, 2));
    for (std::size_t k = 1; k < w.size(); ++k)
      if (substring(w, 0, k) == substring(w, w.size() - k, w.size())) CHECK_FALSE(is_zimin_instance(substring(w, 0, k), 2));
  }
}

TEST_CASE("model shape") {
  auto m = make_debruijn_model(4);
  CHECK(m.nodes() == 16);
  CHECK(m.node_word(6).str() == "0110");
  CHECK(m.successor(6, 1) == 13);
  for (std::size_t v = 0; v < m.nodes(); ++v)
    for (std::size_t i : m.node_instances[v]) {
      Word nw = m.node_word(v), inst = m.instances[i];
      CHECK(substring(nw, nw.size() - inst.size(), nw.size()) == inst);
    }
}

TEST_CASE("stationary solutions") {
  auto m = make_debruijn_model(4);
  std::vector<Rational> half(16, Rational(1, 2));
  auto s = stationary_exact(m, half);
  for (const auto& x : s.q_dist) CHECK(x == Rational(1, 16));
  CHECK(s.d == Rational(9, 128));
  auto zero = stationary_exact(m, std::vector<Rational>(16, Rational(0)));
  CHECK(zero.d == 1);
  CHECK(zero.q_dist[0] == 1);
  std::vector<double> pf(16, 0.5);
  CHECK(std::abs(stationary(m, pf).d - 9.0 / 128) < 1e-12);
}

TEST_CASE("published candidates give 1/28") {
  auto m = make_debruijn_model(4);
  for (unsigned c = 1; c <= 3; ++c) {
    auto p = parse_probability_tuple(candidate_tuple(c));
    REQUIRE(p.size() == 16);
    CHECK(verify_candidate(m, p).d == Rational(1, 28));
  }
  auto dash = parse_probability_tuple("–,1/2,0.25,-");
  REQUIRE(dash.size() == 4);
  CHECK_FALSE(dash[0].has_value());
  CHECK(*dash[2] == Rational(1, 4));
  CHECK_THROWS_AS(parse_probability_tuple("1/2,3/2"), Error);
}

TEST_CASE("word families reproduce the candidates") {
  auto m = make_debruijn_model(4);
  for (unsigned fam = 2; fam <= 3; ++fam) {
    Word period = expand_period_spec(candidate_period(fam));
    auto f = word_family_frequencies(period, m);
    auto s = verify_candidate(m, parse_probability_tuple(candidate_tuple(fam)));
    CHECK(f.node_freq == s.q_dist);
    CHECK(f.estimate == Rational(1, 28));
    auto p = parse_probability_tuple(candidate_tuple(fam));
    for (std::size_t v = 0; v < 16; ++v)
      if (f.implied_p[v] && p[v]) CHECK(*f.implied_p[v] == *p[v]);
    Word three, seven;
    for (int i = 0; i < 3; ++i) three = concat(three, period);
    for (int i = 0; i < 7; ++i) seven = concat(seven, period);
    auto c3 = node_counts_linear(three, m), c7 = node_counts_linear(seven, m);
    for (std::size_t v = 0; v < 16; ++v) CHECK(R(static_cast<long>(c7[v] - c3[v]), static_cast<long>(4 * period.size())) == f.node_freq[v]);
  }
}

TEST_CASE("simulation follows the stationary law") {
  auto m = make_debruijn_model(4);
  std::vector<double> p(16, 0.3);
  auto s = stationary(m, p);
  auto freq = simulate_walk(m, p, 400000, 5);
  for (std::size_t v = 0; v < 16; ++v) CHECK(std::abs(freq[v] - s.q_dist[v]) < 0.01);
}

TEST_CASE("minimizer") {
  auto m = make_debruijn_model(4);
  MinimizeConfig cfg;
  cfg.restarts = 8;
  auto best = minimize_objective(m, cfg);
  CHECK(best.d <= 9.0 / 128);
  auto again = minimize_objective(m, cfg);
  CHECK(again.p == best.p);
}

TEST_CASE("ternary models use per-letter weights") {
  auto m = make_debruijn_model(3, 3);
  CHECK(m.nodes() == 27);
  CHECK(m.params_per_node() == 3);
  std::vector<Rational> w(81, Rational(1));
  auto s = stationary_exact(m, w);
  for (const auto& x : s.q_dist) CHECK(x == Rational(1, 27));
}
