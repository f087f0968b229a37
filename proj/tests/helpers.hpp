#pragma once

#include <string_view>
#include <vector>

#include "zimin/rational.hpp"
#include "zimin/word.hpp"

// Canonical a/b; the raw mpq constructor does not reduce.
inline zimin::Rational R(long a, long b) {
  zimin::Rational r(a, b);
  r.canonicalize();
  return r;
}

inline zimin::Word W(std::string_view s) { return zimin::Word::parse(s); }
inline zimin::Pattern P(std::string_view s) { return zimin::Pattern::parse(s); }

// Every canonical pattern (first occurrences in order) with at most `letters` letters and length in [1, max_len].
inline std::vector<zimin::Pattern> canonical_patterns(unsigned letters, std::size_t max_len) {
  std::vector<zimin::Pattern> out;
  std::vector<zimin::Letter> cur;
  auto rec = [&](auto&& self, unsigned used) -> void {
    if (!cur.empty()) out.emplace_back(zimin::Word(cur));
    if (cur.size() == max_len) return;
    for (unsigned c = 0; c <= used && c < letters; ++c) {
      cur.push_back(static_cast<zimin::Letter>(c));
      self(self, used + (c == used ? 1 : 0));
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}
