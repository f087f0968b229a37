#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "zimin/pattern.hpp"
#include "zimin/tracker.hpp"

using namespace zimin;

namespace {

// Direct definition: W = phi(V) for some nonerasing phi, by trying every image-length vector.
bool instance_oracle(const Word& w, const Pattern& v) {
  std::size_t k = v.distinct();
  std::vector<std::size_t> len(k, 1);
  while (true) {
    std::size_t total = 0;
    for (std::size_t i = 0; i < v.size(); ++i) total += len[v[i]];
    if (total == w.size()) {
      std::vector<std::optional<Word>> img(k);
      std::size_t pos = 0;
      bool ok = true;
      for (std::size_t i = 0; i < v.size() && ok; ++i) {
        Word piece = substring(w, pos, pos + len[v[i]]);
        pos += len[v[i]];
        if (!img[v[i]]) img[v[i]] = piece;
        else ok = *img[v[i]] == piece;
      }
      if (ok) return true;
    }
    std::size_t i = 0;
    while (i < k && ++len[i] > w.size()) len[i++] = 1;
    if (i == k) return false;
  }
}

Word images_concat(const Pattern& v, const EncounterWitness& wit) {
  Word out;
  for (std::size_t i = 0; i < v.size(); ++i) out = concat(out, wit.images[v[i]]);
  return out;
}

}  // namespace

TEST_CASE("is_instance examples") {
  auto wit = is_instance(W("1111"), P("aba"));
  REQUIRE(wit.has_value());
  CHECK(images_concat(P("aba"), *wit) == W("1111"));
  auto an = is_instance(W("anan"), P("xx"));
  REQUIRE(an.has_value());
  CHECK(an->images[0].str() == "an");
  CHECK_FALSE(is_instance(W("01"), P("aba")).has_value());
}

TEST_CASE("is_instance agrees with the definition") {
  auto pats = canonical_patterns(3, 4);
  for (std::size_t n = 1; n <= 7; ++n)
    for (const auto& w : enumerate_words(2, n))
      for (const auto& v : pats) {
        auto wit = is_instance(w, v);
        REQUIRE(wit.has_value() == instance_oracle(w, v));
        if (wit) {
          CHECK(images_concat(v, *wit) == w);
          for (const auto& im : wit->images) CHECK_FALSE(im.empty());
        }
      }
}

TEST_CASE("encounters") {
  CHECK(encounters(P("xx"), W("banana")));
  CHECK_FALSE(encounters(P("aba"), W("0011")));
  CHECK(encounters(P("abcab"), W("01201")));
  auto wit = find_encounter(P("xx"), W("banana"));
  REQUIRE(wit.has_value());
  CHECK(substring(W("banana"), wit->start, wit->end).size() == 4);
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    std::vector<Letter> a(rng() % 8 + 1), x(rng() % 3), y(rng() % 3);
    for (auto& c : a) c = rng() % 2;
    for (auto& c : x) c = rng() % 2;
    for (auto& c : y) c = rng() % 2;
    Word w(a);
    Word big = concat(concat(Word(x), w), Word(y));
    for (const auto& v : {P("aa"), P("aba"), P("abba")})
      if (encounters(v, w)) CHECK(encounters(v, big));
  }
}

TEST_CASE("Zimin words") {
  CHECK(zimin_word(0).size() == 0);
  CHECK(zimin_word(2).str() == "aba");
  CHECK(zimin_word(4).str() == "abacabadabacaba");
  for (unsigned n = 1; n <= 6; ++n) {
    Pattern z = zimin_word(n);
    CHECK(z.size() == (1u << n) - 1);
    std::vector<unsigned> m(z.multiplicities().begin(), z.multiplicities().end());
    std::sort(m.begin(), m.end());
    for (unsigned j = 0; j < n; ++j) CHECK(m[j] == 1u << j);
    CHECK_FALSE(is_doubled(z));
    CHECK(zimin_order_of(z) == n);
  }
}

TEST_CASE("is_zimin_instance matches the general matcher") {
  CHECK(is_zimin_instance(W("1"), 1));
  CHECK(is_zimin_instance(W(std::string(15, '1')), 4));
  CHECK_FALSE(is_zimin_instance(W(std::string(14, '1')), 4));
  for (std::size_t len = 1; len <= 14; ++len)
    for_each_word(2, len, [&](std::span<const Letter> s) {
      for (unsigned n = 1; n <= 3; ++n) REQUIRE(is_zimin_instance(s, n) == is_instance(s, zimin_word(n)).has_value());
    });
}

TEST_CASE("zimin order and tracker") {
  CHECK(zimin_order(W("").letters()) == 0);
  CHECK(zimin_order(W("0").letters()) == 1);
  CHECK(zimin_order(W("010").letters()) == 2);
  CHECK(zimin_order(W(std::string(15, '0')).letters()) == 4);
  ZiminTracker t;
  std::mt19937 rng(11);
  std::vector<Letter> w;
  for (int step = 0; step < 400; ++step) {
    if (!w.empty() && rng() % 4 == 0) {
      t.pop();
      w.pop_back();
    } else {
      Letter c = rng() % 2;
      t.push(c);
      w.push_back(c);
    }
    if (w.size() > 24) continue;
    for (std::size_t i = 0; i < w.size(); ++i)
      REQUIRE(t.suffix_level(i) == zimin_order(std::span<const Letter>(w).subspan(i)));
  }
}

TEST_CASE("hom counts") {
  CHECK(hom_count(P("ab"), W("cde")) == 4);
  Word w = W("0110100");
  CHECK(hom_count(P("a"), w) == w.size() * (w.size() + 1) / 2);
  std::uint64_t brute = 0;
  Word x = W("0101");
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j <= x.size(); ++j) brute += count_morphisms(substring(x, i, j).letters(), P("aa"));
  CHECK(hom_count(P("aa"), x) == brute);
  CHECK(brute == 1);
}

TEST_CASE("anagram invariance of total hom counts") {
  for (std::size_t n = 1; n <= 9; ++n) {
    auto sum = [&](const Pattern& v) {
      std::uint64_t s = 0;
      for (const auto& w : enumerate_words(2, n)) s += hom_count(v, w);
      return s;
    };
    CHECK(sum(P("aab")) == sum(P("aba")));
    CHECK(sum(P("aab")) == sum(P("baa")));
    CHECK(sum(P("abab")) == sum(P("aabb")));
    CHECK(sum(P("abcab")) == sum(P("aabbc")));
  }
}

TEST_CASE("free letters") {
  CHECK(free_letters(W("a")) == std::set<Letter>{W("a")[0]});
  CHECK(free_letters(W("aba")).count(W("a")[0]) == 1);
  // a^L and a^R sit in different components of the ab/ba adjacency, likewise b
  CHECK(free_letters(W("abab")).size() == 2);
  CHECK(free_letters(W("abba")).empty());
  for (const auto& v : canonical_patterns(4, 7)) CHECK(free_letters(v.word()) == free_letters_by_chains(v.word()));
}

TEST_CASE("unavoidability deciders agree") {
  CHECK(is_unavoidable(P("aba")).unavoidable);
  CHECK_FALSE(is_unavoidable(P("aa")).unavoidable);
  auto r = is_unavoidable(P("abcba"), UnavoidMethod::both);
  CHECK(r.unavoidable == bem_unavoidable(P("abcba")));
  for (const auto& v : canonical_patterns(3, 7)) {
    auto z = is_unavoidable(v, UnavoidMethod::zimin);
    ReductionTrace trace;
    bool bem = bem_unavoidable(v, &trace);
    REQUIRE(z.unavoidable == bem);
    if (bem) {
      CHECK(trace.certifies_unavoidable());
      Word cur = trace.start;
      for (const auto& s : trace.steps) {
        if (s.op == ReductionStep::Op::delete_free_letter) CHECK(free_letters(cur).count(s.x) == 1);
        cur = s.result;
      }
    }
    if (z.unavoidable) CHECK(z.witness.has_value());
  }
}

TEST_CASE("verifier") {
  auto hit = first_zimin_encounter(W(std::string(15, '1')), 4);
  REQUIRE(hit.has_value());
  CHECK(hit->start == 0);
  CHECK(hit->end == 15);
  CHECK_FALSE(first_zimin_encounter(W("0011"), 2).has_value());
  CHECK(first_zimin_encounter(W("00100"), 2).has_value());
}
