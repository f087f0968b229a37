#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "zimin/rational.hpp"
#include "zimin/word.hpp"

namespace zimin {

struct RationalEnclosure {
  Rational lower;
  Rational upper;
  unsigned N = 0;  // outer truncation (number of bifix lengths)
  unsigned M = 0;  // alternating-series truncation
  Rational width() const { return upper - lower; }
  bool contains(const Rational& x) const { return lower <= x && x <= upper; }
};

// a_0..a_N: number of bifix-free q-ary words of each length.
std::vector<Integer> bifix_free_counts(unsigned q, std::size_t N);
std::vector<Integer> bifix_free_bruteforce(unsigned q, std::size_t N);

// Alternating-series enclosure of the limiting Z_2-instance probability.
RationalEnclosure i_z2(unsigned q, const Rational& tolerance, unsigned max_terms = 16);

struct CdTables {
  unsigned q = 0;
  unsigned l = 0;
  std::vector<Integer> c;  // index m = 0..max_m
  std::vector<Integer> d;
  std::vector<Integer> b;  // c + d
};
CdTables cd_recursion(unsigned q, unsigned l, std::size_t max_m);
// Compares b = c + d with b_oracle for m <= max_m; throws disagreement naming the first divergent index.
void check_cd_against_oracle(unsigned q, unsigned l, std::size_t max_m);

// Lexicographically least bifix-free word of length l over [q].
Word least_bifix_free(unsigned q, unsigned l);
// Words L A L of length m (m > 2|L|) that are Z_2-bifix-free, by enumeration.
Integer b_oracle(unsigned q, const Word& L, std::size_t m, std::uint64_t budget = std::uint64_t{1} << 26);
Integer b_oracle(unsigned q, unsigned l, std::size_t m, std::uint64_t budget = std::uint64_t{1} << 26);

struct GhTerm {
  Rational g;
  Rational h;
};
// G(i), H(i) for i = 0..last, for one bifix length l.
std::vector<GhTerm> gh_terms(unsigned q, unsigned l, unsigned last);
// Enclosure of sum_m b_m^l q^{-2m} from the G/H partial sums.
RationalEnclosure inner_enclosure(unsigned q, unsigned l, unsigned M);
// The same inner sum from the c/d tables, truncated at m_max; the dropped tail is at most q^{-2l-m_max}/(q-1).
Rational inner_sum_truncated(unsigned q, unsigned l, std::size_t m_max);
RationalEnclosure i_z3(unsigned q, unsigned N = 30, unsigned M = 5, unsigned threads = 0);

// Overcount of Z_n-bifix-free words U A U; equals q^{m-2l} minus the U B U B U shapes whose U B U is itself counted.
std::vector<Integer> bhat_recursion(unsigned q, unsigned l, std::size_t max_m);
// The recursion with the additional "- bhat_k" terms; kept to document that it undercounts.
std::vector<Integer> bhat_recursion_uncorrected(unsigned q, unsigned l, std::size_t max_m);
// Recursive-semantics enumeration oracle for bhat_recursion.
Integer bhat_oracle(unsigned q, const Word& L, std::size_t m, std::uint64_t budget = std::uint64_t{1} << 24);
// L A L words of length m not of the form L B L B L with B nonempty.
Integer lal_not_lblbl(unsigned q, const Word& L, std::size_t m, std::uint64_t budget = std::uint64_t{1} << 24);

struct ZnUpperBound {
  Rational truncated;  // nested finite sum
  Rational tail;       // n q^{-N} / (q - 1)
  Rational value() const { return truncated + tail; }
};
ZnUpperBound i_zn_upper(unsigned n, unsigned q, unsigned N);

Rational iv_product_upper(std::span<const unsigned> multiplicities, unsigned q);
Rational iv_product_upper_zimin(unsigned n, unsigned q);
Rational nondoubled_lower(const Pattern& v, unsigned q);

struct DoubledRow {
  std::size_t n;
  Rational probability;  // I_n(V,q)
  double scaled;         // q^{n(1-1/r)} I_n(V,q), r = least multiplicity
};
std::vector<DoubledRow> doubled_table(const Pattern& v, unsigned q, std::size_t max_n);

}  // namespace zimin
