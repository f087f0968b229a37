#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "zimin/error.hpp"

namespace zimin {

using Letter = std::uint8_t;

inline constexpr std::string_view kDefaultAlphabet = "0123456789abcdefghijklmnopqrstuvwxyz";

// Two 64-bit limbs of 2-bit letters; only for words of length <= 64 over q <= 4.
struct PackedWord {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  std::uint8_t length = 0;
  auto operator<=>(const PackedWord&) const = default;
};

class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters, std::optional<unsigned> q = std::nullopt);
  Word(std::initializer_list<Letter> letters) : letters_(letters) {}

  static Word parse(std::string_view text, std::string_view alphabet = kDefaultAlphabet);
  std::string str(std::string_view alphabet = kDefaultAlphabet) const;

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  std::span<const Letter> letters() const noexcept { return letters_; }
  auto begin() const noexcept { return letters_.begin(); }
  auto end() const noexcept { return letters_.end(); }
  std::optional<unsigned> alphabet_hint() const noexcept { return q_; }
  // Smallest q such that every letter is < q.
  unsigned span_alphabet() const noexcept;

  std::optional<PackedWord> packed() const noexcept;

  bool operator==(const Word& o) const noexcept { return letters_ == o.letters_; }
  auto operator<=>(const Word& o) const noexcept { return letters_ <=> o.letters_; }

 private:
  std::vector<Letter> letters_;
  std::optional<unsigned> q_;
};

Word concat(const Word& a, const Word& b);

// W[i,j]: letters i+1 through j (0 <= i < j <= |W|).
Word substring(const Word& w, std::size_t i, std::size_t j);

std::size_t distinct_letters(std::span<const Letter> w);
// ||W|| = |W| - |L(W)|
std::size_t recurrence_count(const Word& w);

class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(const Word& w);
  static Pattern parse(std::string_view text, std::string_view alphabet = kDefaultAlphabet) {
    return Pattern(Word::parse(text, alphabet));
  }

  const Word& word() const noexcept { return word_; }
  std::span<const unsigned> multiplicities() const noexcept { return mult_; }
  std::size_t distinct() const noexcept { return mult_.size(); }
  std::size_t size() const noexcept { return word_.size(); }
  std::size_t recurrence_count() const noexcept { return word_.size() - mult_.size(); }
  Letter operator[](std::size_t i) const { return word_[i]; }
  std::string str() const;

  bool operator==(const Pattern& o) const noexcept { return word_ == o.word_; }
  auto operator<=>(const Pattern& o) const noexcept { return word_ <=> o.word_; }

 private:
  Word word_;
  std::vector<unsigned> mult_;
};

Pattern canonical_pattern(const Word& w);
bool is_doubled(const Pattern& v);
std::optional<Word> shortest_bifix(const Word& w);
// Border table: fail[len] is the longest proper border of w[0,len); fail[0] = fail[1] = 0.
std::vector<std::uint32_t> failure_function(std::span<const Letter> w);

// Lexicographic enumeration of [q]^n; throws budget_exhausted when q^n > budget.
inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 24;

void for_each_word(unsigned q, std::size_t n, const std::function<void(std::span<const Letter>)>& fn,
                   std::uint64_t budget = kDefaultEnumerationBudget);
std::vector<Word> enumerate_words(unsigned q, std::size_t n,
                                  std::uint64_t budget = kDefaultEnumerationBudget);

std::uint64_t checked_pow(std::uint64_t base, std::size_t exp);

}  // namespace zimin

template <>
struct std::hash<zimin::Word> {
  std::size_t operator()(const zimin::Word& w) const noexcept;
};
