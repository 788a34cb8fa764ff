#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cfgkit/analysis.hpp"
#include "cfgkit/grammar.hpp"

namespace cfgkit {

// ---------------------------------------------------------------------------
// Pass reports
// ---------------------------------------------------------------------------

enum class PassKind { empty, unit, useless, inaccessible };

inline const char* pass_name(PassKind kind) {
  switch (kind) {
    case PassKind::empty: return "empty";
    case PassKind::unit: return "unit";
    case PassKind::useless: return "useless";
    case PassKind::inaccessible: return "inaccessible";
  }
  return "?";
}

struct PassReport {
  PassKind pass{};
  std::size_t rules_in{};
  std::size_t rules_out{};
  std::vector<Rule> added;    // output rules absent from the input
  std::vector<Rule> removed;  // input rules absent from the output
  std::optional<Symbol> fresh_start;
};

struct PassResult {
  Grammar grammar;
  PassReport report;
};

namespace detail {

inline PassReport diff_report(PassKind kind, const Grammar& in, const Grammar& out,
                              std::optional<Symbol> fresh_start) {
  PassReport report;
  report.pass = kind;
  report.rules_in = in.rules.size();
  report.rules_out = out.rules.size();
  report.fresh_start = std::move(fresh_start);
  const std::set<Rule> in_set(in.rules.begin(), in.rules.end());
  const std::set<Rule> out_set(out.rules.begin(), out.rules.end());
  for (const Rule& r : in.rules)
    if (out_set.count(r) == 0) report.removed.push_back(r);
  for (const Rule& r : out.rules)
    if (in_set.count(r) == 0) report.added.push_back(r);
  return report;
}

// Appends r unless an equal rule is already present.
inline void push_rule(std::vector<Rule>& rules, std::set<Rule>& seen, Rule r) {
  if (seen.insert(r).second) rules.push_back(std::move(r));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Empty-rule elimination
// ---------------------------------------------------------------------------

// Occurrence positions of nullable nonterminals beyond this bound make the
// subset expansion intractable; such rules are rejected outright.
inline constexpr std::size_t max_nullable_occurrences = 16;

// Builds the lifted grammar with a fresh start symbol: every nonempty rule
// survives, every nonempty deletion of nullable occurrences is added, the
// fresh start maps to the old one, and an empty rule for the fresh start is
// added exactly when the old start is nullable. The subset expansion equals
// the closure of repeated single deletions.
inline PassResult eliminate_empty(const Grammar& g, const std::string& fresh_base = "S0") {
  const NullableSet nullable = nullable_set(g);
  const LiftedAlphabet alphabet = lift_alphabet(g, fresh_start_name(g, fresh_base));

  Grammar out;
  out.nonterminals = alphabet.nonterminals;
  out.terminals = alphabet.terminals;
  out.start = alphabet.fresh_start;

  std::set<Rule> seen;
  for (const Rule& r : g.rules) {
    if (r.is_empty()) continue;
    detail::push_rule(out.rules, seen, r);

    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < r.rhs.size(); ++i)
      if (r.rhs[i].is_nonterminal() && nullable.contains(r.rhs[i]))
        positions.push_back(i);
    if (positions.empty()) continue;
    if (positions.size() > max_nullable_occurrences)
      throw Error(Errc::nullable_expansion_too_large,
                  "rule '" + rule_to_string(r) + "' has " +
                      std::to_string(positions.size()) +
                      " nullable occurrences; the expansion bound is " +
                      std::to_string(max_nullable_occurrences));

    const std::size_t subsets = std::size_t{1} << positions.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      std::vector<Symbol> rhs;
      rhs.reserve(r.rhs.size());
      std::size_t next = 0;
      for (std::size_t i = 0; i < r.rhs.size(); ++i) {
        if (next < positions.size() && positions[next] == i) {
          const bool drop = (mask >> next) & 1u;
          ++next;
          if (drop) continue;
        }
        rhs.push_back(r.rhs[i]);
      }
      if (!rhs.empty()) detail::push_rule(out.rules, seen, Rule{r.lhs, std::move(rhs)});
    }
  }

  detail::push_rule(out.rules, seen, Rule{out.start, {g.start}});
  if (nullable.contains(g.start))
    detail::push_rule(out.rules, seen, Rule{out.start, {}});

  PassReport report = detail::diff_report(PassKind::empty, g, out, out.start);
  return {std::move(out), std::move(report)};
}

// ---------------------------------------------------------------------------
// Unit-rule elimination
// ---------------------------------------------------------------------------

// Keeps every non-unit rule and anticipates unit chains: for each unit pair
// (a, b), every non-unit rule of b is replicated onto a. Empty rules are not
// unit rules and survive verbatim.
inline PassResult eliminate_unit(const Grammar& g) {
  const UnitPairs pairs = unit_pairs(g);

  Grammar out;
  out.nonterminals = g.nonterminals;
  out.terminals = g.terminals;
  out.start = g.start;

  std::set<Rule> seen;
  for (const Rule& r : g.rules)
    if (!r.is_unit()) detail::push_rule(out.rules, seen, r);
  for (const Symbol& a : g.nonterminals) {
    for (const Symbol& b : g.nonterminals) {
      if (!pairs.contains(a, b)) continue;
      for (const Rule& r : g.rules)
        if (r.lhs == b && !r.is_unit())
          detail::push_rule(out.rules, seen, Rule{a, r.rhs});
    }
  }

  PassReport report = detail::diff_report(PassKind::unit, g, out, std::nullopt);
  return {std::move(out), std::move(report)};
}

// ---------------------------------------------------------------------------
// Useless-symbol elimination
// ---------------------------------------------------------------------------

// Keeps exactly the rules built from useful symbols. Defined only for
// grammars whose language is non-empty.
inline PassResult eliminate_useless(const Grammar& g) {
  const UsefulSet useful = useful_set(g);
  if (!useful.contains(g.start))
    throw Error(Errc::empty_language,
                "language is empty; useless-symbol elimination undefined");

  Grammar out;
  out.nonterminals = g.nonterminals;
  out.terminals = g.terminals;
  out.start = g.start;
  for (const Rule& r : g.rules) {
    if (!useful.contains(r.lhs)) continue;
    bool keep = true;
    for (const Symbol& s : r.rhs) {
      if (!useful.contains(s)) {
        keep = false;
        break;
      }
    }
    if (keep) out.rules.push_back(r);
  }

  PassReport report = detail::diff_report(PassKind::useless, g, out, std::nullopt);
  return {std::move(out), std::move(report)};
}

// ---------------------------------------------------------------------------
// Inaccessible-symbol elimination
// ---------------------------------------------------------------------------

// Keeps exactly the rules whose lhs is reachable from the start symbol; such
// rules only mention accessible symbols.
inline PassResult eliminate_inaccessible(const Grammar& g) {
  const AccessibleSet accessible = accessible_set(g);

  Grammar out;
  out.nonterminals = g.nonterminals;
  out.terminals = g.terminals;
  out.start = g.start;
  for (const Rule& r : g.rules)
    if (accessible.contains(r.lhs)) out.rules.push_back(r);

  PassReport report = detail::diff_report(PassKind::inaccessible, g, out, std::nullopt);
  return {std::move(out), std::move(report)};
}

// ---------------------------------------------------------------------------
// Unified pipeline
// ---------------------------------------------------------------------------

struct PipelineResult {
  Grammar grammar;
  std::vector<PassReport> reports;
};

// Empty, then unit, then useless, then inaccessible. Empty elimination can
// introduce unit rules; unit elimination introduces no empty rule once the
// start symbol is out of every rhs; the last two passes only remove rules.
// Useless runs before inaccessible so that both properties hold at the end.
inline PipelineResult simplify_pipeline(const Grammar& g) {
  if (!useful_set(g).contains(g.start))
    throw Error(Errc::empty_language,
                "language is empty; useless-symbol elimination undefined");

  PipelineResult result;
  PassResult pass = eliminate_empty(g);
  result.reports.push_back(std::move(pass.report));
  pass = eliminate_unit(pass.grammar);
  result.reports.push_back(std::move(pass.report));
  pass = eliminate_useless(pass.grammar);
  result.reports.push_back(std::move(pass.report));
  pass = eliminate_inaccessible(pass.grammar);
  result.reports.push_back(std::move(pass.report));
  result.grammar = std::move(pass.grammar);
  return result;
}

}  // namespace cfgkit
