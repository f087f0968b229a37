#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zimin/word.hpp"

namespace zimin {

// Suffix-anchored Zimin orders of every factor of a growing word.
//
// For each start i the tracker keeps the border table of W[i..] and the
// largest n (capped) such that W[i, i+len) is a Z_n-instance.  Appending a
// letter updates every start in O(|W|) amortized; pop() undoes the last push,
// so the tracker doubles as the state of a depth-first search.
class ZiminTracker {
 public:
  explicit ZiminTracker(unsigned cap = 255);

  void push(Letter c);
  void pop();
  void clear();
  std::size_t size() const noexcept { return word_.size(); }
  std::span<const Letter> word() const noexcept { return word_; }

  // Zimin order of W[i, |W|), capped.
  unsigned suffix_level(std::size_t i) const;
  // Zimin order of W[i, i+len), capped.
  unsigned level(std::size_t i, std::size_t len) const;
  // Largest order over all suffixes of the current word.
  unsigned max_suffix_level() const;
  // Number of suffixes W[i, |W|) that are Z_n-instances.
  std::size_t suffixes_at_least(unsigned n) const;
  // Start of the longest suffix of order >= n, or size() if none.
  std::size_t first_suffix_at_least(unsigned n) const;

 private:
  struct Row {
    std::vector<std::uint32_t> fail;
    std::vector<std::uint8_t> level;
    std::vector<std::uint8_t> best;
  };
  unsigned cap_;
  std::vector<Letter> word_;
  std::vector<Row> rows_;
  std::vector<Row> spare_;
};

}  // namespace zimin
