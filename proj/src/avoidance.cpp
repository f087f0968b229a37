#include "zimin/avoidance.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <random>

#include "zimin/pattern.hpp"
#include "zimin/pool.hpp"
#include "zimin/tracker.hpp"

namespace zimin {

namespace {

Integer falling(unsigned q, unsigned k) {
  Integer r = 1;
  for (unsigned i = 0; i < k; ++i) r *= q - i;
  return r;
}

// Every word obtained from canonical w by an injective letter map into [q].
void expand_canonical(const Word& w, unsigned q, std::vector<Word>& out) {
  const unsigned k = w.span_alphabet();
  std::vector<Letter> img(q);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Letter> buf(w.size());
  // Enumerate k-permutations of [q] via permutations of the full alphabet, skipping repeats.
  std::vector<std::vector<Letter>> seen;
  do {
    std::vector<Letter> head(img.begin(), img.begin() + k);
    if (!seen.empty() && seen.back() == head) continue;
    seen.push_back(head);
    for (std::size_t i = 0; i < w.size(); ++i) buf[i] = head[w[i]];
    out.emplace_back(buf, q);
  } while (std::next_permutation(img.begin(), img.end()));
  std::sort(out.end() - static_cast<std::ptrdiff_t>(seen.size()), out.end());
}

struct Tally {
  std::vector<Integer> by_len;
  std::size_t deepest = 0;
  std::vector<Word> deepest_words;
  std::vector<Word> all_words;
  std::vector<Word> minimal_words;
  Integer minimal_count = 0;
  std::uint64_t nodes = 0;

  void merge(Tally&& o) {
    if (o.by_len.size() > by_len.size()) by_len.resize(o.by_len.size());
    for (std::size_t i = 0; i < o.by_len.size(); ++i) by_len[i] += o.by_len[i];
    if (o.deepest > deepest) {
      deepest = o.deepest;
      deepest_words = std::move(o.deepest_words);
    } else if (o.deepest == deepest) {
      deepest_words.insert(deepest_words.end(), o.deepest_words.begin(), o.deepest_words.end());
    }
    all_words.insert(all_words.end(), o.all_words.begin(), o.all_words.end());
    minimal_words.insert(minimal_words.end(), o.minimal_words.begin(), o.minimal_words.end());
    minimal_count += o.minimal_count;
    nodes += o.nodes;
  }
};

struct SearchSpec {
  unsigned n;
  unsigned q;
  bool keep_deepest = false;
  bool keep_all = false;
  bool minimal = false;
  bool keep_minimal = false;
  std::size_t max_len = std::numeric_limits<std::size_t>::max();
};

// Depth-first search over Z_n-avoiders in canonical first-occurrence form.
class AvoiderSearch {
 public:
  AvoiderSearch(const SearchSpec& spec, const SearchConfig& cfg) : spec_(spec), cfg_(cfg) {}

  Tally run(bool& exhausted) {
    Tally root;
    std::vector<std::vector<Letter>> tasks;
    {
      ZiminTracker t(spec_.n);
      std::vector<unsigned> distinct{0};
      walk(t, distinct, root, cfg_.split_depth, &tasks);
    }
    std::vector<Tally> parts(tasks.size());
    parallel_for(
        tasks.size(),
        [&](std::size_t i) {
          ZiminTracker t(spec_.n);
          std::vector<unsigned> distinct{0};
          for (Letter c : tasks[i]) {
            t.push(c);
            distinct.push_back(std::max<unsigned>(distinct.back(), c + 1u));
          }
          walk(t, distinct, parts[i], std::numeric_limits<std::size_t>::max(), nullptr);
        },
        cfg_.threads);
    for (auto& p : parts) root.merge(std::move(p));
    exhausted = exhausted_.load();
    return root;
  }

 private:
  void record(const ZiminTracker& t, unsigned k, Tally& out) {
    const std::size_t len = t.size();
    if (out.by_len.size() <= len) out.by_len.resize(len + 1);
    out.by_len[len] += falling(spec_.q, k);
    if (len > out.deepest) {
      out.deepest = len;
      out.deepest_words.clear();
    }
    if (spec_.keep_deepest && len == out.deepest)
      out.deepest_words.emplace_back(std::vector<Letter>(t.word().begin(), t.word().end()));
    if (spec_.keep_all) out.all_words.emplace_back(std::vector<Letter>(t.word().begin(), t.word().end()));
  }

  void walk(ZiminTracker& t, std::vector<unsigned>& distinct, Tally& out, std::size_t split,
            std::vector<std::vector<Letter>>* tasks) {
    if (t.size() == split && tasks) {
      tasks->emplace_back(t.word().begin(), t.word().end());
      return;
    }
    record(t, distinct.back(), out);
    if (t.size() >= spec_.max_len) return;
    const unsigned k = distinct.back();
    const unsigned top = std::min(spec_.q, k + 1);
    for (unsigned c = 0; c < top; ++c) {
      if (exhausted_.load(std::memory_order_relaxed)) return;
      if (nodes_.fetch_add(1, std::memory_order_relaxed) >= cfg_.node_budget) {
        exhausted_.store(true);
        return;
      }
      ++out.nodes;
      t.push(static_cast<Letter>(c));
      distinct.push_back(std::max(k, c + 1));
      if (t.suffixes_at_least(spec_.n) > 0) {
        if (spec_.minimal && t.suffixes_at_least(spec_.n) == 1 && t.suffix_level(0) >= spec_.n) {
          out.minimal_count += falling(spec_.q, distinct.back());
          if (spec_.keep_minimal) out.minimal_words.emplace_back(std::vector<Letter>(t.word().begin(), t.word().end()));
        }
      } else {
        walk(t, distinct, out, split, tasks);
      }
      distinct.pop_back();
      t.pop();
    }
  }

  SearchSpec spec_;
  SearchConfig cfg_;
  std::atomic<std::uint64_t> nodes_{0};
  std::atomic<bool> exhausted_{false};
};

void check_nq(unsigned n, unsigned q) {
  if (n < 1) fail(Errc::invalid_argument, "Zimin order must be >= 1");
  if (q < 2 || q > 16) fail(Errc::invalid_argument, "alphabet size must be in [2, 16]");
}

AvoidanceResult search_f(unsigned n, unsigned q, const SearchConfig& cfg, bool keep) {
  check_nq(n, q);
  SearchSpec spec{n, q};
  spec.keep_deepest = keep;
  AvoiderSearch s(spec, cfg);
  bool exhausted = false;
  Tally t = s.run(exhausted);
  AvoidanceResult r;
  r.n = n;
  r.q = q;
  r.deepest_avoider = t.deepest;
  r.avoiders_by_length = std::move(t.by_len);
  r.nodes_explored = t.nodes;
  r.budget_exhausted = exhausted;
  if (!exhausted) r.f_value = t.deepest + 1;
  if (keep) {
    for (const Word& w : t.deepest_words) expand_canonical(w, q, r.max_avoiders);
    std::sort(r.max_avoiders.begin(), r.max_avoiders.end());
    r.max_avoiders.erase(std::unique(r.max_avoiders.begin(), r.max_avoiders.end()), r.max_avoiders.end());
  }
  return r;
}

}  // namespace

Integer AvoidanceResult::total_avoiders() const {
  Integer s = 0;
  for (const auto& v : avoiders_by_length) s += v;
  return s;
}

AvoidanceResult compute_f(unsigned n, unsigned q, const SearchConfig& cfg) { return search_f(n, q, cfg, false); }

AvoidanceResult enumerate_max_avoiders(unsigned n, unsigned q, const SearchConfig& cfg) {
  auto r = search_f(n, q, cfg, true);
  if (r.budget_exhausted) fail(Errc::budget_exhausted, "avoider search exceeded its node budget");
  return r;
}

std::vector<Word> enumerate_all_avoiders(unsigned n, unsigned q, const SearchConfig& cfg) {
  check_nq(n, q);
  SearchSpec spec{n, q};
  spec.keep_all = true;
  AvoiderSearch s(spec, cfg);
  bool exhausted = false;
  Tally t = s.run(exhausted);
  if (exhausted) fail(Errc::budget_exhausted, "avoider search exceeded its node budget");
  std::vector<Word> out;
  for (const Word& w : t.all_words) expand_canonical(w, q, out);
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinimalInstances enumerate_minimal_instances(unsigned n, unsigned q, std::size_t max_len, bool keep_words,
                                             const SearchConfig& cfg) {
  check_nq(n, q);
  SearchSpec spec{n, q};
  spec.minimal = true;
  spec.keep_minimal = keep_words;
  spec.max_len = max_len;
  AvoiderSearch s(spec, cfg);
  bool exhausted = false;
  Tally t = s.run(exhausted);
  MinimalInstances r;
  r.count = t.minimal_count;
  r.budget_exhausted = exhausted;
  r.nodes_explored = t.nodes;
  // Incomplete when some avoider reached the cap and could still grow.
  r.cap_too_small = t.deepest >= spec.max_len;
  if (keep_words) {
    for (const Word& w : t.minimal_words) expand_canonical(w, q, r.words);
    std::sort(r.words.begin(), r.words.end(), [](const Word& a, const Word& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
  }
  return r;
}

Integer m2_closed_form(unsigned q) {
  if (q < 2) fail(Errc::invalid_argument, "alphabet size must be >= 2");
  Integer qf;
  mpz_fac_ui(qf.get_mpz_t(), q);
  // a u a with u = a or u a nonempty Z_2-avoider free of a; the sum starts at i = 0
  Integer sum = 0;
  for (unsigned i = 0; i + 1 <= q; ++i) {
    Integer ifac;
    mpz_fac_ui(ifac.get_mpz_t(), i);
    sum += ipow(2, q - 1 - i) * (qf / ifac);
  }
  if (!(sum < qf * ipow(2, q))) fail(Errc::assertion, "m(2,q) >= q! 2^q");
  return sum;
}

std::string Tetration::str() const {
  if (value && value->get_str().size() <= 60) return value->get_str();
  std::string s = "^" + std::to_string(height) + "(" + base.get_str() + ")";
  if (std::isfinite(log10_value)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " ~ 10^%.6g", log10_value);
    s += buf;
  }
  return s;
}

Tetration tetration(const Integer& base, unsigned height, std::size_t digit_cap) {
  Tetration t;
  t.base = base;
  t.height = height;
  Integer v = 1;
  bool exact = true;
  double lg = 0;
  const double lb = std::log10(base.get_d());
  for (unsigned h = 1; h <= height; ++h) {
    if (exact) {
      double next = v.get_d() * lb;
      if (next <= static_cast<double>(digit_cap) && v.fits_ulong_p()) {
        mpz_pow_ui(v.get_mpz_t(), base.get_mpz_t(), v.get_ui());
        lg = v == 0 ? 0 : log10_of(Rational(v));
      } else {
        exact = false;
        lg = next;
      }
    } else {
      lg = lg > 300 ? std::numeric_limits<double>::infinity() : std::pow(10.0, lg) * lb;
    }
  }
  if (exact) t.value = v;
  t.log10_value = lg;
  return t;
}

std::optional<Integer> known_f(unsigned n, unsigned q) {
  if (n == 1) return Integer(1);
  if (n == 2) return Integer(2 * q + 1);
  if (n == 3 && q == 2) return Integer(29);
  return std::nullopt;
}

std::optional<Integer> known_m(unsigned n, unsigned q) {
  if (n == 1) return Integer(q);
  if (n == 2) return m2_closed_form(q);
  if (n == 3 && q == 2) return Integer(7882);
  return std::nullopt;
}

BoundReport bounds_report(unsigned n, unsigned q, std::optional<Integer> f_prev, std::optional<Integer> m_prev) {
  check_nq(n, q);
  BoundReport r;
  r.n = n;
  r.q = q;
  r.known_f = known_f(n, q);
  r.tetration_upper = tetration(Integer(2 * q + 1), n - 1);
  r.tao_upper = tetration(Integer(q), 2 * n - 1);

  const double lq = std::log(static_cast<double>(q));
  {
    double ln = 0.5 * (std::log(2.0) + std::ldexp(1.0, static_cast<int>(n)) * lq - (n + 1) * lq -
                       static_cast<double>(n - 1) / (q - 1));
    r.first_moment_lower.log10 = ln / std::log(10.0);
    r.first_moment_lower.value = std::exp(ln) - 1.0;
    r.first_moment_lower.note = "existence bound; any avoider length M below it exists";
    if (r.first_moment_lower.log10 < 300) r.first_moment_f_lower = Integer(std::floor(r.first_moment_lower.value)) + 1;
  }
  {
    double ln = std::log(2.0);
    for (unsigned j = 1; j + 1 <= n; ++j) {
      const unsigned long e = (1ul << j) - 1;
      if (e * lq < 600)
        ln += std::log(std::pow(static_cast<double>(q), static_cast<double>(e)) - 1.0);
      else
        ln += static_cast<double>(e) * lq;
    }
    ln *= 0.5;
    r.tao_product_lower.log10 = ln / std::log(10.0);
    r.tao_product_lower.value = std::exp(ln);
    r.tao_product_lower.note = "nominal: (1+o(1)) factor omitted";
  }
  if (n >= 2) {
    r.f_prev = f_prev ? f_prev : known_f(n - 1, q);
    r.m_prev = m_prev ? m_prev : known_m(n - 1, q);
    if (r.f_prev && r.m_prev) r.rs_chain_upper = (*r.f_prev + 1) * *r.m_prev + *r.f_prev;
  }
  if (n == 3) {
    double fact = std::tgamma(q + 2.0);
    r.rs_asymptotic_form = std::sqrt(std::exp(1.0)) * std::ldexp(1.0, static_cast<int>(q)) * fact + 2.0 * q + 1.0;
  }
  return r;
}

std::optional<Word> find_long_avoider(unsigned n, unsigned q, std::size_t target, const LongAvoiderConfig& cfg) {
  if (n < 2) fail(Errc::invalid_argument, "find_long_avoider requires n >= 2");
  if (q < 2 || q > 16) fail(Errc::invalid_argument, "alphabet size must be in [2, 16]");
  std::mt19937_64 rng(cfg.seed);
  ZiminTracker t(n);
  // Per depth: shuffled candidate letters and the next index to try.
  std::vector<std::vector<Letter>> choices;
  std::vector<unsigned> next;
  auto open_level = [&] {
    std::vector<Letter> c(q);
    std::iota(c.begin(), c.end(), 0);
    std::shuffle(c.begin(), c.end(), rng);
    choices.push_back(std::move(c));
    next.push_back(0);
  };
  open_level();
  std::uint64_t nodes = 0;
  while (t.size() < target) {
    if (++nodes > cfg.node_budget) return std::nullopt;
    if (next.back() < q) {
      Letter c = choices.back()[next.back()++];
      t.push(c);
      if (t.suffixes_at_least(n) > 0) {
        t.pop();
        continue;
      }
      open_level();
      continue;
    }
    // Dead end at this depth.
    if (t.size() == 0) return std::nullopt;
    unsigned drop = 1;
    if (cfg.strategy == LongAvoiderStrategy::restart_backtrack)
      drop = std::uniform_int_distribution<unsigned>(1, std::max(1u, cfg.drop))(rng);
    for (unsigned d = 0; d < drop && t.size() > 0; ++d) {
      choices.pop_back();
      next.pop_back();
      t.pop();
    }
    if (cfg.strategy == LongAvoiderStrategy::restart_backtrack && drop > 1) {
      // Re-randomize the level we land on so the walk does not replay itself.
      std::shuffle(choices.back().begin(), choices.back().end(), rng);
      next.back() = 0;
    }
  }
  Word w(std::vector<Letter>(t.word().begin(), t.word().end()), q);
  if (first_zimin_encounter(w, n)) fail(Errc::assertion, "long avoider failed verification");
  return w;
}

}  // namespace zimin
