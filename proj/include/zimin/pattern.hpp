#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zimin/word.hpp"

namespace zimin {

struct EncounterWitness {
  std::size_t start = 0;
  std::size_t end = 0;
  std::vector<Word> images;  // indexed by pattern letter
};

struct ReductionStep {
  enum class Op { delete_free_letter, identify } op;
  Letter x = 0;
  Letter y = 0;  // identify: y -> x
  Word result;
};

struct ReductionTrace {
  Word start;
  std::vector<ReductionStep> steps;
  const Word& final_word() const { return steps.empty() ? start : steps.back().result; }
  bool certifies_unavoidable() const { return final_word().size() == 1; }
};

// W = phi(V) for a nonerasing phi, as a witness over the whole word.
std::optional<EncounterWitness> is_instance(std::span<const Letter> w, const Pattern& v);
inline std::optional<EncounterWitness> is_instance(const Word& w, const Pattern& v) {
  return is_instance(w.letters(), v);
}
// Number of nonerasing phi with phi(V) = W.
std::uint64_t count_morphisms(std::span<const Letter> w, const Pattern& v);

std::optional<EncounterWitness> find_encounter(const Pattern& v, const Word& w);
bool encounters(const Pattern& v, const Word& w);

Pattern zimin_word(unsigned n);
// Letter multiplicities of a word that is some Z_n?  Returns n when the canonical form is Z_n.
std::optional<unsigned> zimin_order_of(const Pattern& v);

bool is_zimin_instance(std::span<const Letter> w, unsigned n);
inline bool is_zimin_instance(const Word& w, unsigned n) { return is_zimin_instance(w.letters(), n); }
// Highest n with W a Z_n-instance (0 for the empty word).
unsigned zimin_order(std::span<const Letter> w);

std::uint64_t hom_count(const Pattern& v, const Word& w);

std::set<Letter> free_letters(const Word& w);
// Independent chain search used as an oracle: explicit alternating walks up to 2|L(W)|^2 steps.
std::set<Letter> free_letters_by_chains(const Word& w);

enum class UnavoidMethod { zimin, bem, both };

struct UnavoidabilityResult {
  bool unavoidable = false;
  std::optional<EncounterWitness> witness;  // zimin: an instance of V inside Z_k
  std::optional<ReductionTrace> trace;      // bem: reduction to length one
};

UnavoidabilityResult is_unavoidable(const Pattern& v, UnavoidMethod method = UnavoidMethod::both);
bool bem_unavoidable(const Pattern& v, ReductionTrace* trace = nullptr);

// Exhaustive verifier: first factor of length >= 2^n - 1 that is a Z_n-instance.
struct VerifyHit {
  std::size_t start;
  std::size_t end;
};
std::optional<VerifyHit> first_zimin_encounter(const Word& w, unsigned n);

}  // namespace zimin
