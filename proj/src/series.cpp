#include "zimin/series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "zimin/density.hpp"
#include "zimin/error.hpp"
#include "zimin/pool.hpp"

namespace zimin {

namespace {

void check_q(unsigned q) {
  if (q < 2) fail(Errc::invalid_argument, "alphabet size must be at least 2");
}

void check_l(unsigned l) {
  if (l < 1) fail(Errc::invalid_argument, "bifix length must be at least 1");
}

bool is_bifix_free(std::span<const Letter> w) {
  auto fail_table = failure_function(w);
  return fail_table[w.size()] == 0;
}

}  // namespace

std::vector<Integer> bifix_free_counts(unsigned q, std::size_t N) {
  check_q(q);
  std::vector<Integer> a(N + 1, 0);
  if (N >= 1) a[1] = q;
  for (std::size_t n = 2; n <= N; ++n)
    a[n] = n % 2 == 0 ? Integer(q * a[n - 1] - a[n / 2]) : Integer(q * a[n - 1]);
  return a;
}

std::vector<Integer> bifix_free_bruteforce(unsigned q, std::size_t N) {
  check_q(q);
  std::vector<Integer> a(N + 1, 0);
  for (std::size_t n = 1; n <= N; ++n) {
    std::uint64_t count = 0;
    for_each_word(q, n, [&](std::span<const Letter> w) { count += is_bifix_free(w); },
                  std::uint64_t{1} << 30);
    a[n] = Integer(static_cast<unsigned long>(count));
  }
  return a;
}

RationalEnclosure i_z2(unsigned q, const Rational& tolerance, unsigned max_terms) {
  check_q(q);
  if (tolerance <= 0) fail(Errc::invalid_argument, "tolerance must be positive");
  Rational den = 1;
  Rational sum = 0;
  Rational prev_abs = -1;
  for (unsigned j = 0; j < max_terms; ++j) {
    unsigned long e = 1ul << (j + 1);
    Integer Q = ipow(q, e);
    den *= make_rational(Q - q, Q);
    Rational term = make_rational(q, Q) / den;
    if (prev_abs >= 0 && term >= prev_abs) fail(Errc::assertion, "i_z2: terms not decreasing at j=" + std::to_string(j));
    prev_abs = term;
    Rational next = j % 2 == 0 ? Rational(sum + term) : Rational(sum - term);
    if (j > 0 && term <= tolerance) {
      RationalEnclosure enc;
      enc.lower = std::min(sum, next);
      enc.upper = std::max(sum, next);
      enc.M = j;
      Rational lo = make_rational(1, q), hi = make_rational(1, q - 1);
      if (!(enc.upper > lo && enc.lower < hi)) fail(Errc::assertion, "i_z2: enclosure outside (1/q, 1/(q-1))");
      if (enc.width() < hi - lo && !(enc.lower > lo && enc.upper < hi))
        fail(Errc::assertion, "i_z2: enclosure outside (1/q, 1/(q-1))");
      return enc;
    }
    sum = next;
  }
  fail(Errc::no_convergence, "i_z2: tolerance not reached within the term limit");
}

CdTables cd_recursion(unsigned q, unsigned l, std::size_t max_m) {
  check_q(q);
  check_l(l);
  if (max_m < 2 * l + 1) fail(Errc::invalid_argument, "max_m must be at least 2l+1");
  std::vector<Integer> c(max_m + 1, 0), d(max_m + 1, 0);
  const std::size_t L = l;
  const std::size_t h = L / 2, fl = L / 2, ce = (L + 1) / 2;
  for (std::size_t n = 1; n <= max_m; ++n) {
    const std::size_t k = n / 2;
    const bool even = n % 2 == 0;
    Integer cv;
    if (n <= 2 * L) {
      cv = 0;
    } else if (n == 2 * L + 1) {
      cv = q;
    } else if (L == 1) {
      if (n == 4) cv = q * c[3] - 1;
      else if (n == 5) cv = q * c[4] - (c[3] - 1);
      else if (n == 6) cv = q * (c[5] + c[3] - 1) - (c[3] - 1);
      else if (even) cv = q * (c[n - 1] + c[k]) - c[k];
      else cv = q * c[n - 1] - c[k + 1];
    } else if (L % 2 == 0) {
      if (n == 4 * L) cv = q * c[n - 1] - (c[5 * h] + 1);
      else if (n == 5 * L) cv = q * c[n - 1] - (c[5 * h] + c[3 * L] - 1);
      else if (n == 5 * L + 1) cv = q * (c[5 * L] + c[3 * L] - 1);
      else if (n == 6 * L) cv = q * c[n - 1] - (c[3 * L] - 1 + c[7 * h]);
      else if (even) cv = q * c[n - 1] - (c[k] + c[k + h]);
      else cv = q * (c[n - 1] + c[k + h]);
    } else {
      if (n == 4 * L) cv = q * (c[n - 1] + c[5 * L / 2]) - (c[2 * L] + 1);
      else if (n == 5 * L) cv = q * c[n - 1] - (c[3 * L] - 1);
      else if (n == 5 * L + 1) cv = q * (c[5 * L] + c[3 * L] - 1) - c[(5 * L + 1) / 2];
      else if (n == 6 * L) cv = q * (c[n - 1] + c[7 * L / 2]) - (c[3 * L] - 1);
      else if (even) cv = q * (c[n - 1] + c[k + fl]) - c[k];
      else cv = q * c[n - 1] - c[k + ce];
    }
    c[n] = cv;

    Integer dv;
    if (n <= 4 * L) {
      dv = 0;
    } else if (L == 1) {
      if (n == 5) dv = q - 1;
      else if (n == 6) dv = q * (d[5] + 1) - 1;
      else if (even) dv = q * (d[n - 1] + d[k]) - (d[k] + d[k + 1]);
      else dv = q * (d[n - 1] + d[k + 1]) - d[k + 1];
    } else if (n == 4 * L + 1) {
      dv = q;
    } else if (n == 5 * L) {
      dv = q * d[n - 1] - 1;
    } else if (n == 5 * L + 1) {
      dv = q * (d[n - 1] + 1);
    } else if (n == 6 * L) {
      dv = q * d[n - 1] - 1;
    } else if (L % 2 == 0) {
      if (even) dv = q * d[n - 1] - (d[k] + d[k + L] + d[k + h]);
      else dv = q * (d[n - 1] + d[k + L] + d[k + h]);
    } else {
      if (even) dv = q * (d[n - 1] + d[k + fl]) - (d[k] + d[k + L]);
      else dv = q * (d[n - 1] + d[k + L]) - d[k + ce];
    }
    d[n] = dv;
  }
  CdTables t{q, l, std::move(c), std::move(d), {}};
  t.b.resize(max_m + 1);
  for (std::size_t m = 0; m <= max_m; ++m) {
    t.b[m] = t.c[m] + t.d[m];
    if (t.c[m] < 0 || t.d[m] < 0) fail(Errc::assertion, "cd_recursion: negative value at m=" + std::to_string(m));
  }
  return t;
}

void check_cd_against_oracle(unsigned q, unsigned l, std::size_t max_m) {
  auto t = cd_recursion(q, l, max_m);
  Word L = least_bifix_free(q, l);
  for (std::size_t m = 1; m <= max_m; ++m) {
    Integer o = b_oracle(q, L, m, std::uint64_t{1} << 30);
    if (o != t.b[m])
      fail(Errc::disagreement, "c/d recursion disagrees with oracle at m=" + std::to_string(m) + " (q=" +
                                   std::to_string(q) + ", l=" + std::to_string(l) + "): recursion " +
                                   t.b[m].get_str() + ", oracle " + o.get_str());
  }
}

Word least_bifix_free(unsigned q, unsigned l) {
  check_q(q);
  check_l(l);
  std::optional<Word> best;
  for_each_word(
      q, l,
      [&](std::span<const Letter> w) {
        if (!best && is_bifix_free(w)) best = Word(std::vector<Letter>(w.begin(), w.end()));
      },
      std::uint64_t{1} << 30);
  return *best;
}

namespace {

// Shortest nonzero border of each prefix, from the border table.
std::vector<std::uint32_t> shortest_borders(const std::vector<std::uint32_t>& fail_table) {
  std::vector<std::uint32_t> sb(fail_table.size(), 0);
  for (std::size_t k = 2; k < fail_table.size(); ++k) {
    auto f = fail_table[k];
    sb[k] = f == 0 ? 0 : (sb[f] == 0 ? f : sb[f]);
  }
  return sb;
}

void for_each_lal(unsigned q, const Word& L, std::size_t m, std::uint64_t budget,
                  const std::function<void(const std::vector<Letter>&)>& fn) {
  const std::size_t l = L.size();
  std::vector<Letter> w(m);
  std::copy(L.begin(), L.end(), w.begin());
  std::copy(L.begin(), L.end(), w.begin() + static_cast<std::ptrdiff_t>(m - l));
  for_each_word(
      q, m - 2 * l,
      [&](std::span<const Letter> mid) {
        std::copy(mid.begin(), mid.end(), w.begin() + static_cast<std::ptrdiff_t>(l));
        fn(w);
      },
      budget);
}

}  // namespace

Integer b_oracle(unsigned q, const Word& L, std::size_t m, std::uint64_t budget) {
  check_q(q);
  if (L.empty()) fail(Errc::empty_word, "b_oracle: empty bifix");
  if (m <= 2 * L.size()) return 0;
  std::uint64_t count = 0;
  for_each_lal(q, L, m, budget, [&](const std::vector<Letter>& w) {
    auto f = failure_function(w);
    auto sb = shortest_borders(f);
    for (auto k = f[m]; k > 0; k = f[k])
      if (sb[k] != 0 && 2 * sb[k] < k) return;
    ++count;
  });
  return Integer(static_cast<unsigned long>(count));
}

Integer b_oracle(unsigned q, unsigned l, std::size_t m, std::uint64_t budget) {
  return b_oracle(q, least_bifix_free(q, l), m, budget);
}

std::vector<GhTerm> gh_terms(unsigned q, unsigned l, unsigned last) {
  check_q(q);
  check_l(l);
  std::vector<GhTerm> out;
  out.reserve(last + 1);
  Rational den = 1;
  Integer prod_s = 1, prod_v = 1;
  for (unsigned i = 0; i <= last; ++i) {
    Integer Q = ipow(q, 1ul << (i + 1));
    den *= make_rational(Q - q, Q);
    Integer Ql, Ql1, Q2l, Q2l1, Q4l1, Q6l;
    mpz_pow_ui(Ql.get_mpz_t(), Q.get_mpz_t(), l);
    mpz_pow_ui(Ql1.get_mpz_t(), Q.get_mpz_t(), l - 1);
    Q2l = Ql * Ql;
    Q2l1 = Ql * Ql1;
    Q4l1 = Q2l * Q2l1;
    Q6l = Q2l * Q2l * Q2l;
    Integer r_num = q * Q4l1 - Q2l + Ql - q * Ql1 + 1;
    Integer u_num = q * Q2l1 - Ql + q * Ql1 - 1;
    Rational g = make_rational(r_num * prod_s, Q6l) / den;
    Rational h = make_rational(u_num * prod_v, Q6l) / den;
    if (i % 2 == 1) {
      g = -g;
      h = -h;
    }
    out.push_back({g, h});
    Integer s = 1 - q * Ql1 + Ql;
    prod_s *= s;
    prod_v *= s - q * Q2l1 + Q2l;
  }
  for (unsigned i = 2; i <= last; ++i) {
    if (abs(out[i].g) > abs(out[i - 1].g) || abs(out[i].h) > abs(out[i - 1].h))
      fail(Errc::assertion, "G/H terms not decreasing at i=" + std::to_string(i) + ", l=" + std::to_string(l));
  }
  return out;
}

RationalEnclosure inner_enclosure(unsigned q, unsigned l, unsigned M) {
  auto terms = gh_terms(q, l, 2 * M + 1);
  Rational s = 0;
  RationalEnclosure enc;
  enc.M = M;
  for (unsigned i = 0; i <= 2 * M + 1; ++i) {
    s += terms[i].g + terms[i].h;
    if (i == 2 * M) enc.upper = s;
  }
  enc.lower = s;
  if (enc.lower > enc.upper) fail(Errc::assertion, "inner enclosure: lower exceeds upper");
  return enc;
}

Rational inner_sum_truncated(unsigned q, unsigned l, std::size_t m_max) {
  auto t = cd_recursion(q, l, std::max<std::size_t>(m_max, 2 * l + 1));
  // the sum may start at m = 0 or m = 1; both agree because b vanishes up to 2l
  for (std::size_t m = 0; m <= 2 * l && m <= m_max; ++m)
    if (t.b[m] != 0) fail(Errc::assertion, "b_m nonzero below 2l+1");
  Rational s = 0;
  for (std::size_t m = 2 * l + 1; m <= m_max; ++m) s += t.b[m] * qpow(q, -2 * static_cast<long>(m));
  return s;
}

RationalEnclosure i_z3(unsigned q, unsigned N, unsigned M, unsigned threads) {
  check_q(q);
  if (N < 1) fail(Errc::invalid_argument, "N must be at least 1");
  auto a = bifix_free_counts(q, N);
  std::vector<RationalEnclosure> inner(N + 1);
  parallel_for(N, [&](std::size_t i) { inner[i + 1] = inner_enclosure(q, static_cast<unsigned>(i + 1), M); }, threads);
  RationalEnclosure enc;
  enc.N = N;
  enc.M = M;
  enc.upper = qpow(q, -static_cast<long>(N));
  for (unsigned l = 1; l <= N; ++l) {
    enc.lower += a[l] * inner[l].lower;
    enc.upper += a[l] * inner[l].upper;
  }
  return enc;
}

std::vector<Integer> bhat_recursion(unsigned q, unsigned l, std::size_t max_m) {
  check_q(q);
  check_l(l);
  std::vector<Integer> b(max_m + 1, 0);
  const std::size_t L = l;
  for (std::size_t n = 2 * L + 1; n <= max_m; ++n) {
    const std::size_t k = n / 2;
    if (n == 2 * L + 1) {
      b[n] = q;
    } else if (L % 2 == 0) {
      const std::size_t h = L / 2;
      b[n] = n % 2 == 0 ? Integer(q * b[n - 1] - b[k + h]) : Integer(q * (b[n - 1] + b[k + h]));
    } else {
      b[n] = n % 2 == 0 ? Integer(q * (b[n - 1] + b[k + L / 2])) : Integer(q * b[n - 1] - b[k + (L + 1) / 2]);
    }
  }
  return b;
}

std::vector<Integer> bhat_recursion_uncorrected(unsigned q, unsigned l, std::size_t max_m) {
  check_q(q);
  check_l(l);
  std::vector<Integer> b(max_m + 1, 0);
  const std::size_t L = l;
  for (std::size_t n = 2 * L + 1; n <= max_m; ++n) {
    const std::size_t k = n / 2;
    if (n == 2 * L + 1) {
      b[n] = q;
    } else if (L % 2 == 0) {
      const std::size_t h = L / 2;
      b[n] = n % 2 == 0 ? Integer(q * b[n - 1] - (b[k] + b[k + h])) : Integer(q * (b[n - 1] + b[k + h]));
    } else {
      b[n] = n % 2 == 0 ? Integer(q * (b[n - 1] + b[k + L / 2]) - b[k]) : Integer(q * b[n - 1] - b[k + (L + 1) / 2]);
    }
  }
  return b;
}

namespace {

// w = L B L B L with B nonempty; returns |B| or 0.
std::size_t lblbl_block(std::span<const Letter> w, std::size_t l) {
  if (w.size() <= 3 * l || (w.size() - 3 * l) % 2 != 0) return 0;
  std::size_t bl = (w.size() - 3 * l) / 2;
  auto B = w.subspan(l, bl);
  auto L = w.first(l);
  if (!std::equal(L.begin(), L.end(), w.begin() + static_cast<std::ptrdiff_t>(l + bl))) return 0;
  if (!std::equal(B.begin(), B.end(), w.begin() + static_cast<std::ptrdiff_t>(2 * l + bl))) return 0;
  return bl;
}

bool in_bhat_set(std::span<const Letter> w, std::size_t l) {
  std::size_t bl = lblbl_block(w, l);
  if (bl == 0) return true;
  return !in_bhat_set(w.first(2 * l + bl), l);
}

}  // namespace

Integer bhat_oracle(unsigned q, const Word& L, std::size_t m, std::uint64_t budget) {
  check_q(q);
  if (L.empty()) fail(Errc::empty_word, "bhat_oracle: empty bifix");
  if (m <= 2 * L.size()) return 0;
  std::uint64_t count = 0;
  for_each_lal(q, L, m, budget, [&](const std::vector<Letter>& w) { count += in_bhat_set(w, L.size()); });
  return Integer(static_cast<unsigned long>(count));
}

Integer lal_not_lblbl(unsigned q, const Word& L, std::size_t m, std::uint64_t budget) {
  check_q(q);
  if (L.empty()) fail(Errc::empty_word, "lal_not_lblbl: empty bifix");
  if (m <= 2 * L.size()) return 0;
  std::uint64_t count = 0;
  for_each_lal(q, L, m, budget, [&](const std::vector<Letter>& w) { count += lblbl_block(w, L.size()) == 0; });
  return Integer(static_cast<unsigned long>(count));
}

ZnUpperBound i_zn_upper(unsigned n, unsigned q, unsigned N) {
  check_q(q);
  if (n < 2) fail(Errc::invalid_argument, "i_zn_upper needs n >= 2");
  if (N < 1) fail(Errc::invalid_argument, "truncation must be at least 1");
  std::vector<std::vector<Integer>> bhat(N + 1);
  for (unsigned l = 1; l <= N; ++l) bhat[l] = bhat_recursion(q, l, N);
  std::vector<Rational> S(N + 1);
  for (unsigned l = 1; l <= N; ++l) S[l] = qpow(q, -2 * static_cast<long>(l));
  for (unsigned level = 0; level + 2 < n; ++level) {
    std::vector<Rational> next(N + 1);
    for (unsigned l = 1; l <= N; ++l)
      for (unsigned m = 2 * l + 1; m <= N; ++m) next[l] += bhat[l][m] * S[m];
    S = std::move(next);
  }
  auto a = bifix_free_counts(q, N);
  ZnUpperBound out;
  for (unsigned l = 1; l <= N; ++l) out.truncated += a[l] * S[l];
  out.tail = make_rational(n, ipow(q, N) * (q - 1));
  return out;
}

Rational iv_product_upper(std::span<const unsigned> multiplicities, unsigned q) {
  check_q(q);
  std::size_t singles = std::count(multiplicities.begin(), multiplicities.end(), 1u);
  if (singles != 1) fail(Errc::hypothesis_violation, "exactly one letter must occur once");
  Integer den = 1;
  for (unsigned r : multiplicities) {
    if (r == 0) fail(Errc::invalid_argument, "multiplicity 0");
    if (r >= 2) den *= ipow(q, r - 1) - 1;
  }
  return make_rational(1, den);
}

Rational iv_product_upper_zimin(unsigned n, unsigned q) {
  if (n < 1 || n > 30) fail(Errc::out_of_range, "Zimin index out of range");
  std::vector<unsigned> r(n);
  for (unsigned j = 0; j < n; ++j) r[j] = 1u << j;
  return iv_product_upper(r, q);
}

Rational nondoubled_lower(const Pattern& v, unsigned q) {
  check_q(q);
  if (is_doubled(v)) fail(Errc::hypothesis_violation, "pattern is doubled; its limiting probability is 0");
  return qpow(q, -static_cast<long>(v.recurrence_count()));
}

std::vector<DoubledRow> doubled_table(const Pattern& v, unsigned q, std::size_t max_n) {
  check_q(q);
  if (!is_doubled(v) || v.size() == 0) fail(Errc::hypothesis_violation, "pattern is not doubled");
  auto mult = v.multiplicities();
  unsigned r = *std::min_element(mult.begin(), mult.end());
  std::vector<DoubledRow> rows;
  for (std::size_t n = 1; n <= max_n; ++n) {
    Rational p = instance_probability_exact(v, q, n, std::uint64_t{1} << 26);
    double scaled = p == 0 ? 0.0 : std::pow(10.0, log10_of(p) + static_cast<double>(n) * (1.0 - 1.0 / r) * std::log10(q));
    rows.push_back({n, p, scaled});
  }
  return rows;
}

}  // namespace zimin
