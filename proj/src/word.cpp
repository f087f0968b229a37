#include "zimin/word.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace zimin {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::ok: return "ok";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::out_of_range: return "index-out-of-range";
    case Errc::empty_word: return "empty-word";
    case Errc::budget_exhausted: return "budget-exhausted";
    case Errc::region_violation: return "region-violation";
    case Errc::singular_system: return "singular-system";
    case Errc::no_convergence: return "no-convergence";
    case Errc::disagreement: return "disagreement";
    case Errc::assertion: return "assertion-failure";
    case Errc::parse_error: return "parse-error";
    case Errc::hypothesis_violation: return "hypothesis-violation";
    case Errc::io_error: return "io-error";
  }
  return "unknown";
}

Word::Word(std::vector<Letter> letters, std::optional<unsigned> q) : letters_(std::move(letters)), q_(q) {
  if (q_) {
    for (Letter c : letters_)
      if (c >= *q_) fail(Errc::invalid_argument, "letter code exceeds alphabet size");
  }
}

Word Word::parse(std::string_view text, std::string_view alphabet) {
  std::vector<Letter> out;
  out.reserve(text.size());
  for (char ch : text) {
    auto pos = alphabet.find(ch);
    if (pos == std::string_view::npos || pos > std::numeric_limits<Letter>::max())
      fail(Errc::parse_error, std::string("symbol '") + ch + "' not in alphabet");
    out.push_back(static_cast<Letter>(pos));
  }
  return Word(std::move(out));
}

std::string Word::str(std::string_view alphabet) const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter c : letters_) {
    if (c >= alphabet.size()) fail(Errc::invalid_argument, "letter has no symbol in alphabet");
    s.push_back(alphabet[c]);
  }
  return s;
}

unsigned Word::span_alphabet() const noexcept {
  unsigned q = 0;
  for (Letter c : letters_) q = std::max<unsigned>(q, c + 1u);
  return q;
}

std::optional<PackedWord> Word::packed() const noexcept {
  if (letters_.size() > 64) return std::nullopt;
  PackedWord p;
  p.length = static_cast<std::uint8_t>(letters_.size());
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i] > 3) return std::nullopt;
    auto bits = std::uint64_t{letters_[i]};
    if (i < 32)
      p.lo |= bits << (2 * i);
    else
      p.hi |= bits << (2 * (i - 32));
  }
  return p;
}

Word concat(const Word& a, const Word& b) {
  std::vector<Letter> v(a.begin(), a.end());
  v.insert(v.end(), b.begin(), b.end());
  return Word(std::move(v));
}

Word substring(const Word& w, std::size_t i, std::size_t j) {
  if (!(i < j && j <= w.size())) fail(Errc::out_of_range, "substring requires 0 <= i < j <= |W|");
  return Word(std::vector<Letter>(w.begin() + i, w.begin() + j));
}

std::size_t distinct_letters(std::span<const Letter> w) {
  std::array<bool, 256> seen{};
  std::size_t k = 0;
  for (Letter c : w)
    if (!seen[c]) {
      seen[c] = true;
      ++k;
    }
  return k;
}

std::size_t recurrence_count(const Word& w) { return w.size() - distinct_letters(w.letters()); }

Pattern::Pattern(const Word& w) {
  std::array<int, 256> code;
  code.fill(-1);
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter c : w) {
    if (code[c] < 0) {
      code[c] = static_cast<int>(mult_.size());
      mult_.push_back(0);
    }
    out.push_back(static_cast<Letter>(code[c]));
    ++mult_[code[c]];
  }
  word_ = Word(std::move(out));
}

std::string Pattern::str() const {
  static constexpr std::string_view letters = "abcdefghijklmnopqrstuvwxyz";
  if (distinct() > letters.size()) return word_.str();
  return word_.str(letters);
}

Pattern canonical_pattern(const Word& w) { return Pattern(w); }

bool is_doubled(const Pattern& v) {
  return std::all_of(v.multiplicities().begin(), v.multiplicities().end(), [](unsigned r) { return r >= 2; });
}

std::vector<std::uint32_t> failure_function(std::span<const Letter> w) {
  std::vector<std::uint32_t> fail(w.size() + 1, 0);
  for (std::size_t len = 2; len <= w.size(); ++len) {
    std::uint32_t k = fail[len - 1];
    while (k > 0 && w[k] != w[len - 1]) k = fail[k];
    if (w[k] == w[len - 1]) ++k;
    fail[len] = k;
  }
  return fail;
}

std::optional<Word> shortest_bifix(const Word& w) {
  if (w.empty()) fail(Errc::empty_word, "shortest_bifix of the empty word");
  auto f = failure_function(w.letters());
  std::uint32_t b = f[w.size()];
  if (b == 0) return std::nullopt;
  while (f[b] > 0) b = f[b];
  return Word(std::vector<Letter>(w.begin(), w.begin() + b));
}

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

void for_each_word(unsigned q, std::size_t n, const std::function<void(std::span<const Letter>)>& fn,
                   std::uint64_t budget) {
  if (q < 1) fail(Errc::invalid_argument, "alphabet size must be >= 1");
  if (checked_pow(q, n) > budget) fail(Errc::budget_exhausted, "q^n exceeds the enumeration budget");
  std::vector<Letter> w(n, 0);
  while (true) {
    fn(w);
    std::size_t i = n;
    while (i > 0 && w[i - 1] == q - 1) w[--i] = 0;
    if (i == 0) return;
    ++w[i - 1];
  }
}

std::vector<Word> enumerate_words(unsigned q, std::size_t n, std::uint64_t budget) {
  std::vector<Word> out;
  for_each_word(q, n, [&](std::span<const Letter> w) { out.emplace_back(std::vector<Letter>(w.begin(), w.end()), q); },
                budget);
  return out;
}

}  // namespace zimin

std::size_t std::hash<zimin::Word>::operator()(const zimin::Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (auto c : w) h = (h ^ c) * 1099511628211ull;
  return h ^ w.size();
}
