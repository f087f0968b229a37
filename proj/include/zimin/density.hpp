#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zimin/rational.hpp"
#include "zimin/word.hpp"

namespace zimin {

struct DensityValue {
  Integer numerator;
  Integer denominator;
  Rational as_rational() const { return make_rational(numerator, denominator); }
  double as_float() const { return to_double(as_rational()); }
};

Integer binomial(unsigned long n, unsigned long k);

DensityValue instance_density(const Pattern& v, const Word& w);
// Counts of Z_2- and Z_3-instance factors of w (every factor, with multiplicity).
std::pair<std::uint64_t, std::uint64_t> z2_z3_factor_counts(const Word& w);
// Number of factors of w that are Z_n-instances.
std::uint64_t zimin_factor_count(const Word& w, unsigned n);

Rational factor_density(const Word& v, const Word& w);

// |Inst_m(Z_n,[q])| for m = 0..max_len by one pass over the q-ary tree.
std::vector<Integer> zimin_instance_counts(unsigned n, unsigned q, std::size_t max_len,
                                           std::uint64_t budget = std::uint64_t{1} << 26);
Integer z2_instance_count_exact(std::size_t m, unsigned q);
Rational instance_probability_exact(const Pattern& v, unsigned q, std::size_t n,
                                    std::uint64_t budget = std::uint64_t{1} << 24);
Rational expected_density_exact(const Pattern& v, unsigned q, std::size_t n,
                                std::uint64_t budget = std::uint64_t{1} << 24);
// Average of instance_density over [q]^n by direct enumeration.
Rational average_density_bruteforce(const Pattern& v, unsigned q, std::size_t n);

struct MonteCarloEstimate {
  double mean = 0;
  double std_error = 0;
  std::size_t samples = 0;
};
MonteCarloEstimate monte_carlo_density(const Pattern& v, unsigned q, std::size_t n, std::size_t samples,
                                       std::uint64_t seed, unsigned threads = 0);

struct ScatterDataset {
  unsigned q = 0;
  std::size_t n = 0;
  Integer denominator;
  // Distinct (Z_2 count, Z_3 count) pairs over all words of length n; densities are count / denominator.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> points;
  std::uint64_t words = 0;
  std::string csv() const;
};
ScatterDataset scatter_z2_z3(unsigned q, std::size_t n, std::uint64_t budget = std::uint64_t{1} << 30,
                             unsigned threads = 0);

struct LiminfBoundReport {
  unsigned n = 0;
  unsigned q = 0;
  std::optional<Rational> z2_exact;       // n = 2: 1/q
  std::optional<Rational> spliced_form;        // 1/((f-2^{n-1}+2)^2 q^{f+1}), f = f(n-1,q)
  std::optional<Rational> minimal_count_form;  // 1/((f-2^{n-1}+2)^2 m(n-1,q))
  std::optional<Rational> simplified_form;     // 1/(f^2 q^{f+1})
  std::optional<Rational> z3_closed_form; // n = 3: 1/((2q-1)^2 q! 2^q)
  std::optional<Integer> f_prev;
  std::optional<Integer> m_prev;
};
LiminfBoundReport liminf_bound_report(unsigned n, unsigned q, std::optional<Integer> f_prev = std::nullopt,
                                      std::optional<Integer> m_prev = std::nullopt);

struct AkalFamily {
  Word word;
  Rational d_k;  // measured factor density of a^k
  Rational d_l;  // measured factor density of a^l
};
AkalFamily akal_density_family(unsigned k, unsigned l, const Rational& d_k, const Rational& d_l, unsigned r);

struct ExtremalFamily {
  Word word;
  DensityValue density;
  Integer formula_count;  // q (C(k,2) - (k-1))
};
ExtremalFamily extremal_z2_family(unsigned q, unsigned k);

}  // namespace zimin
