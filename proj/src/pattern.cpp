#include "zimin/pattern.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace zimin {

namespace {

class Matcher {
 public:
  Matcher(std::span<const Letter> w, const Pattern& v)
      : w_(w), v_(v.word().letters()), start_(v.distinct(), 0), len_(v.distinct(), 0) {}

  std::optional<EncounterWitness> find() {
    stop_on_first_ = true;
    count_ = 0;
    if (w_.size() < v_.size() || v_.empty()) return std::nullopt;
    if (!walk(0, 0)) return std::nullopt;
    return witness_;
  }

  std::uint64_t count() {
    stop_on_first_ = false;
    count_ = 0;
    if (w_.size() < v_.size() || v_.empty()) return 0;
    walk(0, 0);
    return count_;
  }

 private:
  bool walk(std::size_t pi, std::size_t pos) {
    if (pi == v_.size()) {
      if (pos != w_.size()) return false;
      ++count_;
      if (stop_on_first_) {
        witness_.start = 0;
        witness_.end = w_.size();
        witness_.images.clear();
        for (std::size_t x = 0; x < len_.size(); ++x)
          witness_.images.emplace_back(std::vector<Letter>(w_.begin() + start_[x], w_.begin() + start_[x] + len_[x]));
        return true;
      }
      return false;
    }
    const std::size_t rest = v_.size() - pi - 1;
    const Letter x = v_[pi];
    if (len_[x] > 0) {
      const std::size_t l = len_[x];
      if (pos + l + rest > w_.size()) return false;
      if (!std::equal(w_.begin() + pos, w_.begin() + pos + l, w_.begin() + start_[x])) return false;
      return walk(pi + 1, pos + l);
    }
    for (std::size_t l = 1; pos + l + rest <= w_.size(); ++l) {
      start_[x] = pos;
      len_[x] = l;
      if (walk(pi + 1, pos + l)) return true;
    }
    len_[x] = 0;
    return false;
  }

  std::span<const Letter> w_;
  std::span<const Letter> v_;
  std::vector<std::size_t> start_;
  std::vector<std::size_t> len_;
  bool stop_on_first_ = true;
  std::uint64_t count_ = 0;
  EncounterWitness witness_;
};

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::array<std::array<bool, 256>, 256> pair_table(const Word& w) {
  std::array<std::array<bool, 256>, 256> t{};
  for (std::size_t i = 0; i + 1 < w.size(); ++i) t[w[i]][w[i + 1]] = true;
  return t;
}

std::vector<Letter> letters_of(const Word& w) {
  std::array<bool, 256> seen{};
  std::vector<Letter> out;
  for (Letter c : w)
    if (!seen[c]) {
      seen[c] = true;
      out.push_back(c);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Zimin recursion on prefixes of one word, sharing its border table.
class PrefixZimin {
 public:
  explicit PrefixZimin(std::span<const Letter> w) : fail_(failure_function(w)) {}

  bool test(std::size_t len, unsigned n) {
    if (len == 0) return false;
    if (n <= 1) return true;
    if (len < (std::size_t{1} << n) - 1) return false;
    if (memo_.size() <= n) memo_.resize(n + 1);
    auto& row = memo_[n];
    if (row.empty()) row.assign(fail_.size(), -1);
    if (row[len] >= 0) return row[len] == 1;
    bool ok = false;
    const std::size_t lo = (std::size_t{1} << (n - 1)) - 1;
    for (std::size_t b = fail_[len]; b >= lo && b > 0 && !ok; b = fail_[b])
      if (2 * b < len) ok = test(b, n - 1);
    memo_[n][len] = ok ? 1 : 0;
    return ok;
  }

 private:
  std::vector<std::uint32_t> fail_;
  std::vector<std::vector<std::int8_t>> memo_;
};

}  // namespace

std::optional<EncounterWitness> is_instance(std::span<const Letter> w, const Pattern& v) {
  if (v.size() == 0) fail(Errc::invalid_argument, "pattern must be nonempty");
  return Matcher(w, v).find();
}

std::uint64_t count_morphisms(std::span<const Letter> w, const Pattern& v) {
  if (v.size() == 0) fail(Errc::invalid_argument, "pattern must be nonempty");
  return Matcher(w, v).count();
}

std::optional<EncounterWitness> find_encounter(const Pattern& v, const Word& w) {
  if (v.size() == 0) fail(Errc::invalid_argument, "pattern must be nonempty");
  auto s = w.letters();
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + v.size(); b <= s.size(); ++b)
      if (auto wit = is_instance(s.subspan(a, b - a), v)) {
        wit->start = a;
        wit->end = b;
        return wit;
      }
  return std::nullopt;
}

bool encounters(const Pattern& v, const Word& w) { return find_encounter(v, w).has_value(); }

Pattern zimin_word(unsigned n) {
  if (n > 24) fail(Errc::invalid_argument, "Zimin order too large");
  std::vector<Letter> z((std::size_t{1} << n) - 1);
  for (std::size_t i = 1; i <= z.size(); ++i) z[i - 1] = static_cast<Letter>(std::countr_zero(i));
  return Pattern(Word(std::move(z)));
}

std::optional<unsigned> zimin_order_of(const Pattern& v) {
  auto n = static_cast<unsigned>(v.distinct());
  if (n == 0 || n > 24 || v.size() != (std::size_t{1} << n) - 1) return std::nullopt;
  if (v == zimin_word(n)) return n;
  return std::nullopt;
}

bool is_zimin_instance(std::span<const Letter> w, unsigned n) {
  if (n == 0) fail(Errc::invalid_argument, "Zimin order must be >= 1");
  return PrefixZimin(w).test(w.size(), n);
}

unsigned zimin_order(std::span<const Letter> w) {
  if (w.empty()) return 0;
  auto fail_ = failure_function(w);
  std::vector<unsigned> level(w.size() + 1, 0), best(w.size() + 1, 0);
  for (std::size_t len = 1; len <= w.size(); ++len) {
    std::size_t b = fail_[len];
    while (2 * b >= len) b = fail_[b];
    level[len] = b > 0 ? 1 + best[b] : 1;
    best[len] = std::max(level[len], best[fail_[len]]);
  }
  return level[w.size()];
}

std::uint64_t hom_count(const Pattern& v, const Word& w) {
  std::uint64_t total = 0;
  auto s = w.letters();
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + v.size(); b <= s.size(); ++b) total += count_morphisms(s.subspan(a, b - a), v);
  return total;
}

std::set<Letter> free_letters(const Word& w) {
  if (w.empty()) fail(Errc::empty_word, "free_letters of the empty word");
  DisjointSets ds(512);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) ds.unite(w[i], 256 + w[i + 1]);
  std::set<Letter> out;
  for (Letter x : letters_of(w))
    if (ds.find(x) != ds.find(256 + x)) out.insert(x);
  return out;
}

std::set<Letter> free_letters_by_chains(const Word& w) {
  if (w.empty()) fail(Errc::empty_word, "free_letters of the empty word");
  auto t = pair_table(w);
  auto ls = letters_of(w);
  std::set<Letter> out;
  for (Letter x : ls) {
    // Walk x e0, f0 e0, f0 e1, ..., f_n x: alternate e- and f-positions.
    std::set<Letter> es, fs;
    for (Letter e : ls)
      if (t[x][e]) es.insert(e);
    bool chain = false;
    for (std::size_t step = 0; step <= 2 * ls.size() * ls.size() && !chain; ++step) {
      std::set<Letter> nf = fs;
      for (Letter e : es)
        for (Letter f : ls)
          if (t[f][e]) nf.insert(f);
      for (Letter f : nf)
        if (t[f][x]) chain = true;
      std::set<Letter> ne = es;
      for (Letter f : nf)
        for (Letter e : ls)
          if (t[f][e]) ne.insert(e);
      if (nf == fs && ne == es) break;
      fs = std::move(nf);
      es = std::move(ne);
    }
    if (!chain) out.insert(x);
  }
  return out;
}

bool bem_unavoidable(const Pattern& v, ReductionTrace* trace) {
  if (v.size() == 0) fail(Errc::invalid_argument, "pattern must be nonempty");
  struct Node {
    Word word;
    int parent;
    ReductionStep step;
  };
  std::vector<Node> nodes{{v.word(), -1, {}}};
  std::unordered_map<Word, int> seen{{v.word(), 0}};
  std::deque<int> queue{0};
  int goal = -1;
  if (v.size() == 1) goal = 0;
  while (!queue.empty() && goal < 0) {
    const int at = queue.front();
    queue.pop_front();
    const Word cur = nodes[at].word;
    std::vector<std::pair<ReductionStep, Word>> moves;
    for (Letter x : free_letters(cur)) {
      std::vector<Letter> rest;
      for (Letter c : cur)
        if (c != x) rest.push_back(c);
      if (rest.empty()) continue;
      moves.push_back({{ReductionStep::Op::delete_free_letter, x, x, {}}, Word(std::move(rest))});
    }
    auto ls = letters_of(cur);
    for (std::size_t i = 0; i < ls.size(); ++i)
      for (std::size_t j = i + 1; j < ls.size(); ++j) {
        std::vector<Letter> sub(cur.begin(), cur.end());
        std::replace(sub.begin(), sub.end(), ls[j], ls[i]);
        moves.push_back({{ReductionStep::Op::identify, ls[i], ls[j], {}}, Word(std::move(sub))});
      }
    for (auto& [step, next] : moves) {
      Word canon = Pattern(next).word();
      if (seen.count(canon)) continue;
      step.result = canon;
      seen.emplace(canon, static_cast<int>(nodes.size()));
      nodes.push_back({canon, at, step});
      if (canon.size() == 1) {
        goal = static_cast<int>(nodes.size()) - 1;
        break;
      }
      queue.push_back(static_cast<int>(nodes.size()) - 1);
    }
  }
  if (trace) {
    trace->start = v.word();
    trace->steps.clear();
    for (int at = goal; at > 0; at = nodes[at].parent) trace->steps.push_back(nodes[at].step);
    std::reverse(trace->steps.begin(), trace->steps.end());
  }
  return goal >= 0;
}

UnavoidabilityResult is_unavoidable(const Pattern& v, UnavoidMethod method) {
  if (v.size() == 0) fail(Errc::invalid_argument, "pattern must be nonempty");
  UnavoidabilityResult res;
  std::optional<bool> by_zimin, by_bem;
  if (method != UnavoidMethod::bem) {
    auto k = static_cast<unsigned>(v.distinct());
    res.witness = find_encounter(v, zimin_word(k).word());
    by_zimin = res.witness.has_value();
  }
  if (method != UnavoidMethod::zimin) {
    ReductionTrace t;
    by_bem = bem_unavoidable(v, &t);
    if (*by_bem) res.trace = std::move(t);
  }
  if (by_zimin && by_bem && *by_zimin != *by_bem)
    fail(Errc::disagreement, "Zimin and BEM deciders disagree on " + v.str());
  res.unavoidable = by_zimin ? *by_zimin : *by_bem;
  return res;
}

std::optional<VerifyHit> first_zimin_encounter(const Word& w, unsigned n) {
  if (n == 0) fail(Errc::invalid_argument, "Zimin order must be >= 1");
  const std::size_t min_len = (std::size_t{1} << n) - 1;
  auto s = w.letters();
  for (std::size_t a = 0; a + min_len <= s.size(); ++a) {
    PrefixZimin z(s.subspan(a));
    for (std::size_t b = a + min_len; b <= s.size(); ++b)
      if (z.test(b - a, n)) return VerifyHit{a, b};
  }
  return std::nullopt;
}

}  // namespace zimin
