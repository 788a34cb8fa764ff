#pragma once

#include <set>
#include <utility>

#include "cfgkit/derivation.hpp"
#include "cfgkit/grammar.hpp"

namespace cfgkit {

// ---------------------------------------------------------------------------
// Nullable symbols
// ---------------------------------------------------------------------------

struct NullableSet {
  std::set<Symbol> members;  // nonterminals from which the empty string derives
  std::size_t rounds{};

  bool contains(const Symbol& s) const { return members.count(s) != 0; }
};

// Least fixpoint: A joins once some rule A->b has every symbol of b already
// nullable (an empty rhs qualifies vacuously). Rules are scanned in insertion
// order; rounds counts the passes that changed the set.
inline NullableSet nullable_set(const Grammar& g) {
  NullableSet result;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules) {
      if (result.contains(r.lhs)) continue;
      bool all_nullable = true;
      for (const Symbol& s : r.rhs) {
        if (s.is_terminal() || !result.contains(s)) {
          all_nullable = false;
          break;
        }
      }
      if (all_nullable) {
        result.members.insert(r.lhs);
        changed = true;
      }
    }
    if (changed) result.rounds++;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Unit pairs
// ---------------------------------------------------------------------------

struct UnitPairs {
  std::set<std::pair<Symbol, Symbol>> pairs;  // (a, b): b reachable from a via >= 1 unit rules
  std::size_t rounds{};

  bool contains(const Symbol& a, const Symbol& b) const {
    return pairs.count({a, b}) != 0;
  }
};

// Transitive closure of the one-step relation {(a, b) : rule a -> b}. The
// relation needs at least one step, so (a, a) only appears via a cycle.
inline UnitPairs unit_pairs(const Grammar& g) {
  UnitPairs result;
  for (const Rule& r : g.rules)
    if (r.is_unit()) result.pairs.emplace(r.lhs, r.rhs[0]);
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<std::pair<Symbol, Symbol>> next = result.pairs;
    for (const auto& [a, b] : result.pairs)
      for (const auto& [c, d] : result.pairs)
        if (b == c && next.emplace(a, d).second) changed = true;
    result.pairs = std::move(next);
    if (changed) result.rounds++;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Useful symbols
// ---------------------------------------------------------------------------

struct UsefulSet {
  std::set<Symbol> members;  // all declared terminals plus generating nonterminals
  std::size_t rounds{};

  bool contains(const Symbol& s) const { return members.count(s) != 0; }
};

// Terminals are trivially useful; a nonterminal joins when some rule's rhs
// nonterminals are all already useful. Coincides with min_yield != infinity
// on nonterminals.
inline UsefulSet useful_set(const Grammar& g) {
  UsefulSet result;
  for (const Symbol& s : g.terminals) result.members.insert(s);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules) {
      if (result.contains(r.lhs)) continue;
      bool rhs_useful = true;
      for (const Symbol& s : r.rhs) {
        if (s.is_nonterminal() && !result.contains(s)) {
          rhs_useful = false;
          break;
        }
      }
      if (rhs_useful) {
        result.members.insert(r.lhs);
        changed = true;
      }
    }
    if (changed) result.rounds++;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Accessible symbols
// ---------------------------------------------------------------------------

struct AccessibleSet {
  std::set<Symbol> members;  // symbols occurring in some form derivable from [start]
  std::size_t rounds{};

  bool contains(const Symbol& s) const { return members.count(s) != 0; }
};

// Least fixpoint from {start}: whenever a rule's lhs is accessible, every
// symbol of its rhs is.
inline AccessibleSet accessible_set(const Grammar& g) {
  AccessibleSet result;
  result.members.insert(g.start);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules) {
      if (!result.contains(r.lhs)) continue;
      for (const Symbol& s : r.rhs)
        if (result.members.insert(s).second) changed = true;
    }
    if (changed) result.rounds++;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Grammar predicates
// ---------------------------------------------------------------------------

struct PredicateReport {
  bool has_no_empty_rules{};
  bool has_one_empty_rule{};   // exactly start -> eps and no other empty rule
  bool has_no_unit_rules{};
  bool has_no_useless_symbols{};
  bool has_no_inaccessible_symbols{};
  bool start_symbol_not_in_rhs{};
  bool non_empty{};            // the language contains at least one string
  bool generates_empty{};
};

// The useless/inaccessible predicates quantify over symbols occurring in
// rules plus the start symbol, not over the declared alphabets: transformations
// prune rules, never declarations.
inline PredicateReport predicates(const Grammar& g) {
  PredicateReport p;

  std::size_t empty_rules = 0;
  bool empty_lhs_is_start = true;
  bool unit_rule = false;
  bool start_in_rhs = false;
  std::set<Symbol> occurring{g.start};
  for (const Rule& r : g.rules) {
    occurring.insert(r.lhs);
    if (r.is_empty()) {
      empty_rules++;
      if (!(r.lhs == g.start)) empty_lhs_is_start = false;
    }
    if (r.is_unit()) unit_rule = true;
    for (const Symbol& s : r.rhs) {
      occurring.insert(s);
      if (s == g.start) start_in_rhs = true;
    }
  }
  p.has_no_empty_rules = empty_rules == 0;
  p.has_one_empty_rule = empty_rules == 1 && empty_lhs_is_start;
  p.has_no_unit_rules = !unit_rule;
  p.start_symbol_not_in_rhs = !start_in_rhs;

  const UsefulSet useful = useful_set(g);
  const AccessibleSet accessible = accessible_set(g);
  p.has_no_useless_symbols = true;
  p.has_no_inaccessible_symbols = true;
  for (const Symbol& s : occurring) {
    if (!useful.contains(s)) p.has_no_useless_symbols = false;
    if (!accessible.contains(s)) p.has_no_inaccessible_symbols = false;
  }
  p.non_empty = useful.contains(g.start);
  p.generates_empty = nullable_set(g).contains(g.start);
  return p;
}

}  // namespace cfgkit
