#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "zimin/density.hpp"
#include "zimin/pattern.hpp"

using namespace zimin;

namespace {

// Number of factors of w that are V-instances, straight from the definition.
Integer instance_factors(const Pattern& v, const Word& w) {
  Integer c = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j <= w.size(); ++j)
      if (is_instance(substring(w, i, j), v)) ++c;
  return c;
}

}  // namespace

TEST_CASE("instance density") {
  auto d = instance_density(P("xx"), W("banana"));
  CHECK(d.as_rational() == Rational(2, 21));
  CHECK(d.denominator == 21);
  CHECK(instance_density(P("a"), W("0110")).as_rational() == 1);
  CHECK(instance_density(P("aba"), W("00000")).numerator == instance_factors(P("aba"), W("00000")));
  CHECK_THROWS_AS(instance_density(P("a"), Word{}), Error);
  try {
    instance_density(P("a"), Word{});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::empty_word);
  }
  for (const auto& v : {P("aa"), P("aba"), P("abba"), P("abcab"), P("aabb")})
    for (const auto& w : enumerate_words(2, 8)) {
      auto dv = instance_density(v, w);
      REQUIRE(dv.numerator == instance_factors(v, w));
      CHECK(dv.as_rational() >= 0);
      CHECK(dv.as_rational() <= 1);
    }
}

TEST_CASE("fast factor counts") {
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    std::vector<Letter> a(rng() % 30 + 1);
    for (auto& c : a) c = rng() % 2;
    Word w(a);
    auto [z2, z3] = z2_z3_factor_counts(w);
    CHECK(z2 == instance_factors(zimin_word(2), w));
    CHECK(z3 == instance_factors(zimin_word(3), w));
    CHECK(zimin_factor_count(w, 2) == z2);
  }
}

TEST_CASE("factor density") {
  CHECK(factor_density(W("aa"), W("aaa")) == 1);
  CHECK(factor_density(W("ab"), W("abab")) == Rational(2, 3));
  CHECK_THROWS_AS(factor_density(W("aaa"), W("aa")), Error);
}

TEST_CASE("instance probabilities") {
  CHECK(instance_probability_exact(P("aba"), 2, 4) == Rational(1, 2));
  CHECK(instance_probability_exact(P("aa"), 2, 1) == 0);
  CHECK(z2_instance_count_exact(4, 2) == 8);
  CHECK(z2_instance_count_exact(3, 2) == 4);
  for (std::size_t m = 1; m <= 16; ++m) {
    Integer brute = 0;
    for_each_word(2, m, [&](std::span<const Letter> s) { brute += is_zimin_instance(s, 2) ? 1 : 0; });
    CHECK(z2_instance_count_exact(m, 2) == brute);
  }
  for (std::size_t n = 1; n <= 6; ++n) CHECK(instance_probability_exact(P("a"), 3, n) == 1);
  CHECK(instance_probability_exact(P("abc"), 2, 5) == 1);
  CHECK(instance_probability_exact(P("aba"), 1, 4) == 1);
  Rational prev = 0;
  for (std::size_t m = 1; m <= 20; ++m) {
    Rational cur = instance_probability_exact(zimin_word(2), 2, m);
    CHECK(cur >= prev);
    CHECK(cur < R(7322133, 10000000));
    prev = cur;
  }
  CHECK(to_double(prev) > 0.70);
}

TEST_CASE("Zimin instance counts agree with enumeration") {
  auto counts = zimin_instance_counts(3, 2, 14);
  for (std::size_t m = 1; m <= 14; ++m) {
    Integer brute = 0;
    for_each_word(2, m, [&](std::span<const Letter> s) { brute += is_zimin_instance(s, 3) ? 1 : 0; });
    CHECK(counts[m] == brute);
  }
}

TEST_CASE("expected density identity") {
  for (const auto& v : canonical_patterns(3, 3))
    for (std::size_t n = 1; n <= 10; ++n) {
      Rational e = expected_density_exact(v, 2, n);
      REQUIRE(e == average_density_bruteforce(v, 2, n));
      Rational rhs = 0;
      for (std::size_t m = 1; m <= n; ++m) rhs += Rational(static_cast<long>(n + 1 - m)) * instance_probability_exact(v, 2, m);
      CHECK(e * binomial(n + 1, 2) == rhs);
    }
}

TEST_CASE("Monte Carlo") {
  auto a = monte_carlo_density(zimin_word(2), 2, 2000, 200, 42, 1);
  auto b = monte_carlo_density(zimin_word(2), 2, 2000, 200, 42, 3);
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  // a finite word sits below the limit; compare against the exact mean at n = 2000
  double exact = to_double(expected_density_exact(zimin_word(2), 2, 2000));
  CHECK(exact < 0.7322132);
  for (std::uint64_t seed : {1, 42}) {
    auto m = monte_carlo_density(zimin_word(2), 2, 2000, 200, seed);
    CHECK(std::abs(m.mean - exact) <= 3 * m.std_error);
  }
  double prev = 1;
  for (std::size_t n : {256, 1024, 4096}) {
    auto e = monte_carlo_density(P("aa"), 2, n, 60, 9);
    CHECK(e.mean < prev);
    prev = e.mean;
  }
}

TEST_CASE("scatter data") {
  auto d = scatter_z2_z3(2, 13);
  CHECK(d.words == 8192);
  CHECK(d.denominator == 91);
  std::uint64_t max_x = 0;
  for (auto [x, y] : d.points) {
    CHECK(y <= x);
    max_x = std::max(max_x, x);
  }
  // factors of length 1 and 2 are never Z_2-instances, so the constant word reaches 66/91
  CHECK(max_x == 66);
  CHECK(d.csv().rfind("x_num,x_den,y_num,y_den", 0) == 0);
}

TEST_CASE("liminf bounds") {
  auto r32 = liminf_bound_report(3, 2);
  CHECK(r32.minimal_count_form == Rational(1, 54));
  auto r33 = liminf_bound_report(3, 3);
  CHECK(r33.z3_closed_form == Rational(1, 1200));
  auto r42 = liminf_bound_report(4, 2);
  CHECK(r42.minimal_count_form == Rational(1, 4169578));
  CHECK(liminf_bound_report(2, 5).z2_exact == Rational(1, 5));
}

TEST_CASE("factor density triangle") {
  std::mt19937 rng(17);
  for (int t = 0; t < 400; ++t) {
    std::vector<Letter> a(400);
    for (auto& c : a) c = rng() % 2;
    Word w(a);
    Rational x = factor_density(W("0"), w), y = factor_density(W("00"), w);
    CHECK(y >= 0);
    CHECK(y <= x);
  }
  auto f = akal_density_family(1, 2, Rational(1, 2), Rational(0), 40);
  CHECK(std::abs(to_double(factor_density(W("0"), f.word)) - 0.5) <= 0.025);
  CHECK(factor_density(W("00"), f.word) == 0);
  auto c = akal_density_family(1, 2, Rational(1), Rational(1), 5);
  CHECK(factor_density(W("1"), c.word) == 0);
}

TEST_CASE("extremal family") {
  for (unsigned k = 3; k <= 20; ++k) {
    auto f = extremal_z2_family(2, k);
    CHECK(f.density.numerator == instance_factors(zimin_word(2), f.word));
    CHECK(f.density.numerator == f.formula_count);
  }
  CHECK(std::abs(extremal_z2_family(2, 200).density.as_float() - 0.5) <= 0.01);
  CHECK(std::abs(extremal_z2_family(3, 300).density.as_float() - 1.0 / 3) <= 1.0 / 150);
  CHECK(extremal_z2_family(4, 3).density.numerator > 0);
}
