#include "zimin/density.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "zimin/avoidance.hpp"
#include "zimin/error.hpp"
#include "zimin/pattern.hpp"
#include "zimin/pool.hpp"
#include "zimin/series.hpp"
#include "zimin/tracker.hpp"

namespace zimin {

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

namespace {

std::uint64_t pairs(std::size_t n) { return static_cast<std::uint64_t>(n) * (n + 1) / 2; }

// Factors of w that are r-th powers u^r.
std::uint64_t power_factor_count(std::span<const Letter> w, unsigned r) {
  const std::size_t n = w.size();
  if (r == 1) return pairs(n);
  std::uint64_t count = 0;
  std::vector<std::uint32_t> streak(n + 1);
  for (std::size_t p = 1; p * r <= n; ++p) {
    streak[n - p] = 0;
    for (std::size_t j = n - p; j-- > 0;) streak[j] = w[j] == w[j + p] ? streak[j + 1] + 1 : 0;
    const std::size_t need = (r - 1) * p;
    for (std::size_t i = 0; i + r * p <= n; ++i) count += streak[i] >= need;
  }
  return count;
}

std::optional<unsigned> power_exponent(const Pattern& v) {
  if (v.distinct() == 1) return static_cast<unsigned>(v.size());
  return std::nullopt;
}

std::uint64_t generic_instance_count(const Pattern& v, std::span<const Letter> w) {
  std::uint64_t count = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + v.size(); j <= w.size(); ++j) count += is_instance(w.subspan(i, j - i), v).has_value();
  return count;
}

std::uint64_t instance_factor_count(const Pattern& v, std::span<const Letter> w) {
  if (auto n = zimin_order_of(v)) return zimin_factor_count(Word(std::vector<Letter>(w.begin(), w.end())), *n);
  if (auto r = power_exponent(v)) return power_factor_count(w, *r);
  return generic_instance_count(v, w);
}

void check_pattern(const Pattern& v) {
  if (v.size() == 0) fail(Errc::empty_word, "empty pattern");
}

}  // namespace

DensityValue instance_density(const Pattern& v, const Word& w) {
  check_pattern(v);
  if (w.empty()) fail(Errc::empty_word, "empty word");
  return {Integer(static_cast<unsigned long>(instance_factor_count(v, w.letters()))),
          Integer(static_cast<unsigned long>(pairs(w.size())))};
}

std::pair<std::uint64_t, std::uint64_t> z2_z3_factor_counts(const Word& w) {
  ZiminTracker t(3);
  std::uint64_t z2 = 0, z3 = 0;
  for (Letter c : w) {
    t.push(c);
    z2 += t.suffixes_at_least(2);
    z3 += t.suffixes_at_least(3);
  }
  return {z2, z3};
}

std::uint64_t zimin_factor_count(const Word& w, unsigned n) {
  if (n == 0) fail(Errc::invalid_argument, "Zimin order must be >= 1");
  if (n == 1) return pairs(w.size());
  ZiminTracker t(n);
  std::uint64_t count = 0;
  for (Letter c : w) {
    t.push(c);
    count += t.suffixes_at_least(n);
  }
  return count;
}

Rational factor_density(const Word& v, const Word& w) {
  if (v.empty()) fail(Errc::empty_word, "empty factor");
  if (v.size() > w.size()) fail(Errc::out_of_range, "factor longer than word");
  std::size_t hits = 0;
  for (std::size_t i = 0; i + v.size() <= w.size(); ++i)
    hits += std::equal(v.begin(), v.end(), w.begin() + static_cast<std::ptrdiff_t>(i));
  return make_rational(static_cast<unsigned long>(hits), static_cast<unsigned long>(w.size() + 1 - v.size()));
}

std::vector<Integer> zimin_instance_counts(unsigned n, unsigned q, std::size_t max_len, std::uint64_t budget) {
  if (n == 0) fail(Errc::invalid_argument, "Zimin order must be >= 1");
  if (q < 1) fail(Errc::invalid_argument, "alphabet size must be >= 1");
  std::uint64_t nodes = 0;
  for (std::size_t m = 0; m <= max_len; ++m) {
    std::uint64_t p = checked_pow(q, m);
    if (p > budget || nodes + p > budget) fail(Errc::budget_exhausted, "instance count enumeration exceeds budget");
    nodes += p;
  }
  ZiminTracker t(n);
  // letters are only counted up to renaming; weight canonical words by q(q-1)...(q-k+1)
  std::vector<std::vector<std::uint64_t>> by_k(max_len + 1, std::vector<std::uint64_t>(q + 1, 0));
  auto rec = [&](auto&& self, unsigned used) -> void {
    const std::size_t m = t.size();
    if (m > 0 && t.suffix_level(0) >= n) ++by_k[m][used];
    if (m == max_len) return;
    for (unsigned c = 0; c < std::min(used + 1, q); ++c) {
      t.push(static_cast<Letter>(c));
      self(self, std::max(used, c + 1));
      t.pop();
    }
  };
  rec(rec, 0);
  std::vector<Integer> out(max_len + 1, 0);
  for (std::size_t m = 0; m <= max_len; ++m)
    for (unsigned k = 1; k <= q; ++k) {
      if (by_k[m][k] == 0) continue;
      Integer fall = 1;
      for (unsigned i = 0; i < k; ++i) fall *= q - i;
      out[m] += fall * static_cast<unsigned long>(by_k[m][k]);
    }
  return out;
}

Integer z2_instance_count_exact(std::size_t m, unsigned q) {
  if (m == 0) return 0;
  if (q < 2) return m >= 3 ? 1 : 0;
  auto a = bifix_free_counts(q, (m + 1) / 2);
  Integer s = 0;
  for (std::size_t l = 1; l + 1 <= (m + 1) / 2; ++l) s += a[l] * ipow(q, m - 2 * l);
  return s;
}

Rational instance_probability_exact(const Pattern& v, unsigned q, std::size_t n, std::uint64_t budget) {
  check_pattern(v);
  if (q < 1) fail(Errc::invalid_argument, "alphabet size must be >= 1");
  if (n == 0 || n < v.size()) return 0;
  Integer total = ipow(q, n);
  if (auto z = zimin_order_of(v)) {
    if (*z == 2) return make_rational(z2_instance_count_exact(n, q), total);
    auto counts = zimin_instance_counts(*z, q, n, budget);
    return make_rational(counts[n], total);
  }
  std::uint64_t hits = 0;
  for_each_word(q, n, [&](std::span<const Letter> w) { hits += is_instance(w, v).has_value(); }, budget);
  return make_rational(static_cast<unsigned long>(hits), total);
}

Rational expected_density_exact(const Pattern& v, unsigned q, std::size_t n, std::uint64_t budget) {
  check_pattern(v);
  if (n == 0) fail(Errc::invalid_argument, "length must be >= 1");
  Rational s = 0;
  for (std::size_t m = 1; m <= n; ++m)
    s += Rational(static_cast<unsigned long>(n + 1 - m)) * instance_probability_exact(v, q, m, budget);
  return s / Rational(binomial(n + 1, 2));
}

Rational average_density_bruteforce(const Pattern& v, unsigned q, std::size_t n) {
  check_pattern(v);
  if (n == 0) fail(Errc::invalid_argument, "length must be >= 1");
  Integer hits = 0;
  for_each_word(q, n, [&](std::span<const Letter> w) {
    hits += static_cast<unsigned long>(generic_instance_count(v, w));
  });
  return make_rational(hits, ipow(q, n) * binomial(n + 1, 2));
}

MonteCarloEstimate monte_carlo_density(const Pattern& v, unsigned q, std::size_t n, std::size_t samples,
                                       std::uint64_t seed, unsigned threads) {
  check_pattern(v);
  if (samples == 0) fail(Errc::invalid_argument, "samples must be >= 1");
  if (q < 1) fail(Errc::invalid_argument, "alphabet size must be >= 1");
  if (n == 0) fail(Errc::invalid_argument, "length must be >= 1");
  std::vector<double> values(samples);
  const double den = static_cast<double>(pairs(n));
  parallel_for(
      samples,
      [&](std::size_t i) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
        std::mt19937_64 rng(seq);
        std::uniform_int_distribution<unsigned> letter(0, q - 1);
        std::vector<Letter> w(n);
        for (auto& c : w) c = static_cast<Letter>(letter(rng));
        values[i] = static_cast<double>(instance_factor_count(v, w)) / den;
      },
      threads);
  MonteCarloEstimate e;
  e.samples = samples;
  e.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(samples);
  if (samples > 1) {
    double ss = 0;
    for (double x : values) ss += (x - e.mean) * (x - e.mean);
    e.std_error = std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples));
  }
  return e;
}

std::string ScatterDataset::csv() const {
  std::ostringstream out;
  out << "x_num,x_den,y_num,y_den\n";
  for (auto [x, y] : points) {
    Rational rx = make_rational(static_cast<unsigned long>(x), denominator);
    Rational ry = make_rational(static_cast<unsigned long>(y), denominator);
    out << rx.get_num() << ',' << rx.get_den() << ',' << ry.get_num() << ',' << ry.get_den() << '\n';
  }
  return out.str();
}

ScatterDataset scatter_z2_z3(unsigned q, std::size_t n, std::uint64_t budget, unsigned threads) {
  if (q < 1) fail(Errc::invalid_argument, "alphabet size must be >= 1");
  if (n == 0) fail(Errc::invalid_argument, "length must be >= 1");
  if (checked_pow(q, n) > budget) fail(Errc::budget_exhausted, "scatter enumeration exceeds budget");
  // Counts are invariant under renaming letters, so only first-occurrence canonical words are visited.
  const std::size_t split = std::min<std::size_t>(n, 10);
  std::vector<std::vector<Letter>> prefixes;
  {
    std::vector<Letter> cur;
    auto gen = [&](auto&& self, unsigned used) -> void {
      if (cur.size() == split) {
        prefixes.push_back(cur);
        return;
      }
      for (unsigned c = 0; c < std::min(used + 1, q); ++c) {
        cur.push_back(static_cast<Letter>(c));
        self(self, std::max(used, c + 1));
        cur.pop_back();
      }
    };
    gen(gen, 0);
  }
  std::set<std::pair<std::uint64_t, std::uint64_t>> all;
  std::mutex mu;
  parallel_for(
      prefixes.size(),
      [&](std::size_t task) {
        std::set<std::pair<std::uint64_t, std::uint64_t>> local;
        ZiminTracker t(3);
        std::vector<std::uint64_t> z2(n + 1, 0), z3(n + 1, 0);
        unsigned used = 0;
        for (Letter c : prefixes[task]) {
          t.push(c);
          z2[t.size()] = z2[t.size() - 1] + t.suffixes_at_least(2);
          z3[t.size()] = z3[t.size() - 1] + t.suffixes_at_least(3);
          used = std::max<unsigned>(used, c + 1u);
        }
        auto rec = [&](auto&& self, unsigned u) -> void {
          const std::size_t m = t.size();
          if (m == n) {
            local.emplace(z2[m], z3[m]);
            return;
          }
          for (unsigned c = 0; c < std::min(u + 1, q); ++c) {
            t.push(static_cast<Letter>(c));
            z2[m + 1] = z2[m] + t.suffixes_at_least(2);
            z3[m + 1] = z3[m] + t.suffixes_at_least(3);
            self(self, std::max(u, c + 1));
            t.pop();
          }
        };
        rec(rec, used);
        std::lock_guard lock(mu);
        all.insert(local.begin(), local.end());
      },
      threads);
  ScatterDataset d;
  d.q = q;
  d.n = n;
  d.denominator = binomial(n + 1, 2);
  d.points.assign(all.begin(), all.end());
  d.words = checked_pow(q, n);
  for (auto [x, y] : d.points)
    if (y > x) fail(Errc::assertion, "scatter point above y = x");
  return d;
}

LiminfBoundReport liminf_bound_report(unsigned n, unsigned q, std::optional<Integer> f_prev,
                                      std::optional<Integer> m_prev) {
  if (n < 2) fail(Errc::invalid_argument, "Zimin order must be >= 2");
  if (q < 2) fail(Errc::invalid_argument, "alphabet size must be >= 2");
  LiminfBoundReport r;
  r.n = n;
  r.q = q;
  if (n == 2) {
    r.z2_exact = make_rational(1, q);
    return r;
  }
  r.f_prev = f_prev ? f_prev : known_f(n - 1, q);
  r.m_prev = m_prev ? m_prev : known_m(n - 1, q);
  if (r.f_prev) {
    const Integer& f = *r.f_prev;
    if (!f.fits_ulong_p() || f > 100000) fail(Errc::out_of_range, "f(n-1,q) too large for an exact report");
    Integer base = f - ipow(2, n - 1) + 2;
    Integer q_pow = ipow(q, f.get_ui() + 1);
    r.spliced_form = make_rational(1, base * base * q_pow);
    r.simplified_form = make_rational(1, f * f * q_pow);
    if (r.m_prev) r.minimal_count_form = make_rational(1, base * base * *r.m_prev);
  }
  if (n == 3) {
    Integer qf;
    mpz_fac_ui(qf.get_mpz_t(), q);
    r.z3_closed_form = make_rational(1, Integer((2 * q - 1) * (2 * q - 1)) * qf * ipow(2, q));
  }
  return r;
}

AkalFamily akal_density_family(unsigned k, unsigned l, const Rational& d_k, const Rational& d_l, unsigned r) {
  if (k == 0 || l <= k) fail(Errc::invalid_argument, "need 1 <= k < l");
  if (r == 0) fail(Errc::invalid_argument, "scale must be >= 1");
  if (d_l < 0 || d_l > d_k || d_k > 1 || k * (d_l - 1) < l * (d_k - 1))
    fail(Errc::region_violation, "(d_k, d_l) outside the attainable triangle");
  Integer v = lcm(d_k.get_den(), d_l.get_den());
  Integer uk = d_k.get_num() * (v / d_k.get_den());
  Integer ul = d_l.get_num() * (v / d_l.get_den());
  Integer t = (r * uk - r * ul) / (l - k);
  Integer rest = r * v - r * ul - l * t;
  if (rest < 0) fail(Errc::invalid_argument, "scale too small");
  Integer total = r * v;
  if (total > 50'000'000) fail(Errc::out_of_range, "family word too long");
  Integer lead = r * ul;
  std::vector<Letter> w;
  w.reserve(total.get_ui());
  w.insert(w.end(), lead.get_ui(), 0);
  for (unsigned long i = 0; i < t.get_ui(); ++i) {
    w.push_back(1);
    w.insert(w.end(), l - 1, 0);
  }
  w.insert(w.end(), rest.get_ui(), 1);
  Word word(std::move(w), 2u);
  Word ak(std::vector<Letter>(k, 0)), al(std::vector<Letter>(l, 0));
  AkalFamily out;
  out.d_k = word.size() >= k ? factor_density(ak, word) : Rational(0);
  out.d_l = word.size() >= l ? factor_density(al, word) : Rational(0);
  out.word = std::move(word);
  return out;
}

ExtremalFamily extremal_z2_family(unsigned q, unsigned k) {
  if (q < 2) fail(Errc::invalid_argument, "alphabet size must be >= 2");
  if (k < 3) fail(Errc::invalid_argument, "block length must be >= 3");
  std::vector<Letter> w;
  for (unsigned c = 0; c < q; ++c) w.insert(w.end(), k, static_cast<Letter>(c));
  ExtremalFamily out;
  out.word = Word(std::move(w), q);
  out.density = instance_density(zimin_word(2), out.word);
  out.formula_count = q * (binomial(k, 2) - (k - 1));
  return out;
}

}  // namespace zimin
