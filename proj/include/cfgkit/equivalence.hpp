#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cfgkit/derivation.hpp"
#include "cfgkit/grammar.hpp"

namespace cfgkit {

// ---------------------------------------------------------------------------
// Bounded language equivalence
// ---------------------------------------------------------------------------

enum class EquivStatus { equivalent_up_to_bound, inequivalent, inconclusive };

inline const char* equiv_status_name(EquivStatus s) {
  switch (s) {
    case EquivStatus::equivalent_up_to_bound: return "EQUIVALENT_UP_TO_BOUND";
    case EquivStatus::inequivalent: return "INEQUIVALENT";
    case EquivStatus::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

enum class Side { first, second };

// A word produced by exactly one grammar, with the derivation that proves
// membership on the producing side. The other side returned a cap-free NO.
struct Counterexample {
  Sentence word;
  Side produced_by{};
  DerivationTrace trace;
};

struct EquivVerdict {
  EquivStatus status{};
  std::size_t bound{};
  std::optional<Counterexample> counterexample;
  bool first_complete{};   // enumeration of the first grammar was exhaustive
  bool second_complete{};  // enumeration of the second grammar was exhaustive
};

// Compares the languages of g1 and g2 restricted to words of length at most
// max_len. Both grammars must declare the same terminal names. A word in one
// enumerated language but not the other becomes a counterexample only once
// membership is confirmed on one side and refuted without cap hits on the
// other; candidates that stay unresolved leave the verdict inconclusive, as
// do incomplete enumerations with no confirmed counterexample.
inline EquivVerdict bounded_equiv(const Grammar& g1, const Grammar& g2,
                                  std::size_t max_len, const SearchCaps& caps) {
  std::set<std::string> names1, names2;
  for (const Symbol& t : g1.terminals) names1.insert(t.name);
  for (const Symbol& t : g2.terminals) names2.insert(t.name);
  if (names1 != names2)
    throw Error(Errc::terminal_alphabet_mismatch,
                "grammars declare different terminal alphabets");

  const EnumerationResult lang1 = enumerate_language(g1, max_len, caps);
  const EnumerationResult lang2 = enumerate_language(g2, max_len, caps);

  EquivVerdict verdict;
  verdict.bound = max_len;
  verdict.first_complete = lang1.complete;
  verdict.second_complete = lang2.complete;

  const auto member = [](const EnumerationResult& lang, const Sentence& w) {
    return std::binary_search(lang.words.begin(), lang.words.end(), w, WordOrder{});
  };
  std::set<Sentence, WordOrder> candidates;
  for (const Sentence& w : lang1.words)
    if (!member(lang2, w)) candidates.insert(w);
  for (const Sentence& w : lang2.words)
    if (!member(lang1, w)) candidates.insert(w);

  bool unresolved = false;
  for (const Sentence& w : candidates) {
    const Side produced_by = member(lang1, w) ? Side::first : Side::second;
    const Grammar& holder = produced_by == Side::first ? g1 : g2;
    const Grammar& other = produced_by == Side::first ? g2 : g1;

    const ProduceResult pro = produces(holder, w, caps);
    if (pro.status != ProduceStatus::yes) {
      unresolved = true;  // enumeration found it, the cap-bounded recheck did not
      continue;
    }
    const ProduceResult con = produces(other, w, caps);
    if (con.status == ProduceStatus::no) {
      verdict.status = EquivStatus::inequivalent;
      verdict.counterexample = Counterexample{w, produced_by, *pro.trace};
      return verdict;
    }
    if (con.status == ProduceStatus::unknown) unresolved = true;
    // A yes on both sides means the enumeration missed the word on one side;
    // the word is not a counterexample.
  }

  verdict.status = !unresolved && lang1.complete && lang2.complete
                       ? EquivStatus::equivalent_up_to_bound
                       : EquivStatus::inconclusive;
  return verdict;
}

inline EquivVerdict bounded_equiv(const Grammar& g1, const Grammar& g2,
                                  std::size_t max_len) {
  return bounded_equiv(g1, g2, max_len, default_caps(max_len));
}

}  // namespace cfgkit
