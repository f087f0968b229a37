#include <doctest.h>

#include "helpers.hpp"
#include "zimin/avoidance.hpp"
#include "zimin/pattern.hpp"

using namespace zimin;

namespace {

std::vector<Word> brute_avoiders(unsigned n, unsigned q, std::size_t max_len) {
  std::vector<Word> out{Word{}};
  for (std::size_t len = 1; len <= max_len; ++len)
    for (const auto& w : enumerate_words(q, len))
      if (!first_zimin_encounter(w, n)) out.push_back(w);
  return out;
}

std::vector<Word> brute_minimal(unsigned n, unsigned q, std::size_t max_len) {
  std::vector<Word> out;
  for (std::size_t len = 1; len <= max_len; ++len)
    for (const auto& w : enumerate_words(q, len)) {
      if (!is_zimin_instance(w, n)) continue;
      bool proper = len > 1 && (first_zimin_encounter(substring(w, 0, len - 1), n) ||
                                first_zimin_encounter(substring(w, 1, len), n));
      if (!proper) out.push_back(w);
    }
  return out;
}

}  // namespace

TEST_CASE("small f values") {
  CHECK(compute_f(1, 2).f_value == 1u);
  CHECK(compute_f(2, 2).f_value == 5u);
  for (unsigned q = 2; q <= 4; ++q) CHECK(compute_f(2, q).f_value == 2 * q + 1);
}

TEST_CASE("all binary Z2 avoiders") {
  auto ws = enumerate_all_avoiders(2, 2);
  CHECK(ws.size() == 13);
  CHECK(ws == brute_avoiders(2, 2, 5));
  auto r = enumerate_max_avoiders(2, 2);
  CHECK(r.max_avoiders.size() == 2);
  for (const auto& w : r.max_avoiders) CHECK(w.size() == 4);
}

TEST_CASE("ternary Z2 avoiders have length 6") {
  auto r = enumerate_max_avoiders(2, 3);
  REQUIRE(r.f_value == 7u);
  CHECK_FALSE(r.max_avoiders.empty());
  for (const auto& w : r.max_avoiders) {
    CHECK(w.size() == 6);
    CHECK_FALSE(first_zimin_encounter(w, 2));
  }
  auto all = enumerate_all_avoiders(2, 3);
  std::size_t longest = 0;
  for (const auto& w : all) longest = std::max(longest, w.size());
  CHECK(longest == 6);
}

TEST_CASE("search results do not depend on the thread count") {
  SearchConfig one, two;
  one.threads = 1;
  two.threads = 3;
  two.split_depth = 3;
  CHECK(enumerate_max_avoiders(2, 3, one).max_avoiders == enumerate_max_avoiders(2, 3, two).max_avoiders);
  auto a = compute_f(2, 4, one), b = compute_f(2, 4, two);
  CHECK(a.f_value == b.f_value);
  CHECK(a.avoiders_by_length == b.avoiders_by_length);
}

TEST_CASE("budget exhaustion leaves a valid lower bound") {
  SearchConfig cfg;
  cfg.node_budget = 200;
  auto r = compute_f(3, 2, cfg);
  CHECK(r.budget_exhausted);
  CHECK_FALSE(r.f_value.has_value());
  CHECK(r.deepest_avoider + 1 <= 29);
  CHECK(r.deepest_avoider >= 1);
}

TEST_CASE("minimal instances") {
  auto m = enumerate_minimal_instances(2, 2, 5);
  std::vector<std::string> got;
  for (const auto& w : m.words) got.push_back(w.str());
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::string>{"000", "010", "0110", "1001", "101", "111"});
  CHECK(m.count == 6);
  std::vector<std::string> brute;
  for (const auto& w : brute_minimal(2, 2, 5)) brute.push_back(w.str());
  std::sort(brute.begin(), brute.end());
  CHECK(got == brute);
  auto m3 = enumerate_minimal_instances(2, 3, 7);
  CHECK(m3.count == 39);
  CHECK(m3.count == m2_closed_form(3));
  CHECK(m3.count == static_cast<long>(brute_minimal(2, 3, 7).size()));
  CHECK_FALSE(m3.cap_too_small);
}

TEST_CASE("m(2,q) closed form") {
  CHECK(m2_closed_form(2) == 6);
  CHECK(m2_closed_form(3) == 39);
  Integer fact = 1;
  for (unsigned q = 2; q <= 8; ++q) {
    fact *= q;
    CHECK(m2_closed_form(q) < fact * ipow(2, q));
  }
  CHECK(enumerate_minimal_instances(2, 4, 9, false).count == m2_closed_form(4));
}

TEST_CASE("bound report") {
  auto b22 = bounds_report(2, 2);
  REQUIRE(b22.tetration_upper.value.has_value());
  CHECK(*b22.tetration_upper.value == 5);
  auto b42 = bounds_report(4, 2, Integer(29), Integer(7882));
  REQUIRE(b42.rs_chain_upper.has_value());
  CHECK(*b42.rs_chain_upper == 236489);
  CHECK(*bounds_report(4, 2).rs_chain_upper == 236489);
  auto b32 = bounds_report(3, 2);
  REQUIRE(b32.first_moment_f_lower.has_value());
  CHECK(*b32.first_moment_f_lower >= 2);
  CHECK(*b32.first_moment_f_lower <= 29);
  CHECK(b32.rs_asymptotic_form.has_value());
  CHECK_FALSE(b42.rs_asymptotic_form.has_value());
  CHECK(tetration(Integer(2), 3).value == 16);
  CHECK(tetration(Integer(3), 0).value == 1);
}

TEST_CASE("long avoiders verify") {
  auto w2 = find_long_avoider(2, 2, 4);
  REQUIRE(w2.has_value());
  CHECK_FALSE(first_zimin_encounter(*w2, 2));
  auto w3 = find_long_avoider(3, 2, 28);
  REQUIRE(w3.has_value());
  CHECK(w3->size() == 28);
  CHECK_FALSE(first_zimin_encounter(*w3, 3));
  LongAvoiderConfig cfg;
  cfg.strategy = LongAvoiderStrategy::restart_backtrack;
  auto w4 = find_long_avoider(4, 2, 1000, cfg);
  REQUIRE(w4.has_value());
  CHECK(w4->size() == 1000);
  CHECK_FALSE(first_zimin_encounter(*w4, 4));
  CHECK_FALSE(find_long_avoider(2, 2, 5).has_value());
}
