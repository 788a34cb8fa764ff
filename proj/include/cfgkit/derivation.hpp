#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "cfgkit/grammar.hpp"

namespace cfgkit {

// ---------------------------------------------------------------------------
// Derivation steps and traces
// ---------------------------------------------------------------------------

struct DerivationStep {
  std::size_t cut{};  // index of the rewritten nonterminal in the current form
  Rule rule;

  friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
};

struct DerivationTrace {
  SententialForm origin;
  std::vector<DerivationStep> steps;

  friend bool operator==(const DerivationTrace&, const DerivationTrace&) = default;
};

inline std::string form_to_string(const SententialForm& form) {
  if (form.empty()) return "(empty)";
  std::string out;
  for (const Symbol& s : form) {
    if (!out.empty()) out += ' ';
    out += s.name;
  }
  return out;
}

// Replaces the nonterminal at step.cut with the rule's rhs.
inline SententialForm apply_step(const Grammar& g, const SententialForm& form,
                                 const DerivationStep& step) {
  if (!g.has_rule(step.rule))
    throw Error(Errc::step_rule_not_in_grammar,
                "rule '" + rule_to_string(step.rule) + "' is not in the grammar");
  if (step.cut >= form.size())
    throw Error(Errc::step_cut_out_of_bounds,
                "cut " + std::to_string(step.cut) + " out of bounds in form '" +
                    form_to_string(form) + "'");
  if (form[step.cut] != step.rule.lhs)
    throw Error(Errc::step_symbol_mismatch,
                "symbol '" + form[step.cut].name + "' at cut " +
                    std::to_string(step.cut) + " does not match rule lhs '" +
                    step.rule.lhs.name + "'");
  SententialForm next;
  next.reserve(form.size() + step.rule.rhs.size() - 1);
  next.insert(next.end(), form.begin(), form.begin() + static_cast<std::ptrdiff_t>(step.cut));
  next.insert(next.end(), step.rule.rhs.begin(), step.rule.rhs.end());
  next.insert(next.end(), form.begin() + static_cast<std::ptrdiff_t>(step.cut) + 1, form.end());
  return next;
}

// Folds apply_step over the trace; an empty step list returns the origin.
inline SententialForm replay(const Grammar& g, const DerivationTrace& trace) {
  SententialForm form = trace.origin;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    try {
      form = apply_step(g, form, trace.steps[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "step " + std::to_string(i) + ": " + e.what());
    }
  }
  return form;
}

// ---------------------------------------------------------------------------
// Search caps and stats
// ---------------------------------------------------------------------------

struct SearchCaps {
  std::size_t max_form_len{};
  std::size_t max_visited{};
  std::size_t max_depth{};
};

inline SearchCaps default_caps(std::size_t max_len) {
  return SearchCaps{2 * max_len + 4, 200000, 10 * (max_len + 1)};
}

struct SearchStats {
  std::size_t explored{};
  std::size_t pruned{};
  std::size_t cap_hits{};
};

// ---------------------------------------------------------------------------
// Minimum terminal yield
// ---------------------------------------------------------------------------

inline constexpr std::uint64_t infinite_yield =
    std::numeric_limits<std::uint64_t>::max();

inline std::uint64_t yield_sum(std::uint64_t a, std::uint64_t b) {
  if (a == infinite_yield || b == infinite_yield) return infinite_yield;
  return a + b;
}

struct MinYield {
  std::map<Symbol, std::uint64_t> by_nonterminal;  // infinite_yield = no terminal string

  // Terminals implicitly yield 1.
  std::uint64_t of(const Symbol& s) const {
    if (s.is_terminal()) return 1;
    auto it = by_nonterminal.find(s);
    return it == by_nonterminal.end() ? infinite_yield : it->second;
  }

  std::uint64_t of(const SententialForm& form) const {
    std::uint64_t total = 0;
    for (const Symbol& s : form) total = yield_sum(total, of(s));
    return total;
  }
};

// Least fixpoint of min_yield(A) = min over rules A->b of the summed yields
// of b's symbols; infinite_yield marks nonterminals with no terminating
// derivation.
inline MinYield min_yield(const Grammar& g) {
  MinYield result;
  for (const Symbol& s : g.nonterminals)
    result.by_nonterminal.emplace(s, infinite_yield);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Rule& r : g.rules) {
      std::uint64_t cost = 0;
      for (const Symbol& s : r.rhs) cost = yield_sum(cost, result.of(s));
      auto it = result.by_nonterminal.find(r.lhs);
      if (it == result.by_nonterminal.end())
        it = result.by_nonterminal.emplace(r.lhs, infinite_yield).first;
      if (cost < it->second) {
        it->second = cost;
        changed = true;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Internal search helpers
// ---------------------------------------------------------------------------

namespace detail {

inline std::string form_key(const SententialForm& form) {
  std::string key;
  key.reserve(form.size() * 4);
  for (const Symbol& s : form) {
    key += s.is_terminal() ? 't' : 'n';
    key += s.name;
    key += '\x1f';
  }
  return key;
}

inline std::size_t leftmost_nonterminal(const SententialForm& form) {
  for (std::size_t i = 0; i < form.size(); ++i)
    if (form[i].is_nonterminal()) return i;
  return form.size();
}

// Unchecked single rewrite; callers guarantee form[cut] == r.lhs.
inline SententialForm rewrite_at(const SententialForm& form, std::size_t cut,
                                 const Rule& r) {
  SententialForm next;
  next.reserve(form.size() + r.rhs.size());
  next.insert(next.end(), form.begin(), form.begin() + static_cast<std::ptrdiff_t>(cut));
  next.insert(next.end(), r.rhs.begin(), r.rhs.end());
  next.insert(next.end(), form.begin() + static_cast<std::ptrdiff_t>(cut) + 1, form.end());
  return next;
}

// True when the terminals of `form`, in order, embed into `target`.
inline bool terminals_embed(const SententialForm& form, const SententialForm& target) {
  std::size_t pos = 0;
  for (const Symbol& s : form) {
    if (!s.is_terminal()) continue;
    while (pos < target.size() && !(target[pos] == s)) ++pos;
    if (pos == target.size()) return false;
    ++pos;
  }
  return true;
}

struct SearchNode {
  SententialForm form;
  std::size_t parent{};  // index into the node arena
  DerivationStep step;   // step that produced this node (unused for the root)
  std::size_t depth{};
};

inline DerivationTrace trace_from(const std::vector<SearchNode>& nodes,
                                  std::size_t index) {
  std::vector<DerivationStep> steps;
  while (index != 0) {
    steps.push_back(nodes[index].step);
    index = nodes[index].parent;
  }
  std::reverse(steps.begin(), steps.end());
  return DerivationTrace{nodes[0].form, std::move(steps)};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Bounded language enumeration
// ---------------------------------------------------------------------------

struct WordOrder {
  bool operator()(const Sentence& a, const Sentence& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].name != b[i].name) return a[i].name < b[i].name;
    return false;
  }
};

struct EnumerationResult {
  std::vector<Sentence> words;  // sorted by (length, lexicographic by name)
  bool complete{};
  SearchStats stats;

  bool contains(const Sentence& w) const {
    return std::find(words.begin(), words.end(), w) != words.end();
  }
};

// Breadth-first leftmost-derivation search from [start]; prunes forms whose
// summed min yield exceeds max_len and forms already visited. complete stays
// true only when no cap was hit.
inline EnumerationResult enumerate_language(const Grammar& g, std::size_t max_len,
                                            const SearchCaps& caps) {
  EnumerationResult result;
  result.complete = true;
  const MinYield yields = min_yield(g);

  std::set<Sentence, WordOrder> words;
  std::unordered_set<std::string> visited;
  std::deque<std::pair<SententialForm, std::size_t>> queue;

  SententialForm root{g.start};
  if (yields.of(root) > max_len) {
    result.stats.pruned++;
  } else {
    visited.insert(detail::form_key(root));
    queue.emplace_back(std::move(root), 0);
  }

  while (!queue.empty()) {
    auto [form, depth] = std::move(queue.front());
    queue.pop_front();
    result.stats.explored++;

    const std::size_t cut = detail::leftmost_nonterminal(form);
    if (cut == form.size()) {
      words.insert(form);  // summed yield of a sentence is its length
      continue;
    }
    if (depth >= caps.max_depth) {
      result.stats.cap_hits++;
      result.complete = false;
      continue;
    }
    for (const Rule& r : g.rules) {
      if (!(r.lhs == form[cut])) continue;
      SententialForm child = detail::rewrite_at(form, cut, r);
      // The yield prune is exact — no word within the bound descends from a
      // pruned child — so it runs before the capacity caps; only a cap that
      // skips a potentially relevant child may clear `complete`.
      if (yields.of(child) > max_len) {
        result.stats.pruned++;
        continue;
      }
      if (child.size() > caps.max_form_len) {
        result.stats.cap_hits++;
        result.complete = false;
        continue;
      }
      std::string key = detail::form_key(child);
      if (visited.count(key) != 0) {
        result.stats.pruned++;
        continue;
      }
      if (visited.size() >= caps.max_visited) {
        result.stats.cap_hits++;
        result.complete = false;
        continue;
      }
      visited.insert(std::move(key));
      queue.emplace_back(std::move(child), depth + 1);
    }
  }

  result.words.assign(words.begin(), words.end());
  return result;
}

inline EnumerationResult enumerate_language(const Grammar& g, std::size_t max_len) {
  return enumerate_language(g, max_len, default_caps(max_len));
}

// ---------------------------------------------------------------------------
// Membership
// ---------------------------------------------------------------------------

enum class ProduceStatus { yes, no, unknown };

struct ProduceResult {
  ProduceStatus status{ProduceStatus::unknown};
  std::optional<DerivationTrace> trace;  // set when status is yes
  SearchStats stats;
};

// Decides whether w is produced from [start]. NO is reported only when the
// pruned search space was exhausted without hitting a cap; UNKNOWN otherwise.
inline ProduceResult produces(const Grammar& g, const Sentence& w,
                              const SearchCaps& caps) {
  for (const Symbol& s : w) {
    if (!s.is_terminal() || !g.declares(s))
      throw Error(Errc::undeclared_terminal,
                  "sentence uses undeclared terminal '" + s.name + "'");
  }

  ProduceResult result;
  const MinYield yields = min_yield(g);
  bool capped = false;

  // Sound prunes for leftmost derivations toward w: the terminal prefix
  // before the leftmost nonterminal must be a prefix of w, all terminals in
  // the form must embed into w in order, and the summed min yield must fit.
  auto viable = [&](const SententialForm& form) {
    if (yields.of(form) > w.size()) return false;
    const std::size_t cut = detail::leftmost_nonterminal(form);
    if (cut > w.size()) return false;
    for (std::size_t i = 0; i < cut; ++i)
      if (!(form[i] == w[i])) return false;
    return detail::terminals_embed(form, w);
  };

  std::vector<detail::SearchNode> nodes;
  std::unordered_set<std::string> visited;
  std::deque<std::size_t> queue;

  SententialForm root{g.start};
  if (viable(root)) {
    visited.insert(detail::form_key(root));
    nodes.push_back({std::move(root), 0, {}, 0});
    queue.push_back(0);
  } else {
    result.stats.pruned++;
  }

  while (!queue.empty()) {
    const std::size_t index = queue.front();
    queue.pop_front();
    result.stats.explored++;

    const SententialForm form = nodes[index].form;
    const std::size_t depth = nodes[index].depth;
    const std::size_t cut = detail::leftmost_nonterminal(form);
    if (cut == form.size()) {
      if (form == w) {
        result.status = ProduceStatus::yes;
        result.trace = detail::trace_from(nodes, index);
        return result;
      }
      continue;
    }
    if (depth >= caps.max_depth) {
      result.stats.cap_hits++;
      capped = true;
      continue;
    }
    for (const Rule& r : g.rules) {
      if (!(r.lhs == form[cut])) continue;
      SententialForm child = detail::rewrite_at(form, cut, r);
      // viable() is exact for the target word, so it runs before the
      // capacity caps; only a cap that skips a viable child taints NO.
      if (!viable(child)) {
        result.stats.pruned++;
        continue;
      }
      if (child.size() > caps.max_form_len) {
        result.stats.cap_hits++;
        capped = true;
        continue;
      }
      std::string key = detail::form_key(child);
      if (visited.count(key) != 0) {
        result.stats.pruned++;
        continue;
      }
      if (visited.size() >= caps.max_visited) {
        result.stats.cap_hits++;
        capped = true;
        continue;
      }
      visited.insert(std::move(key));
      nodes.push_back({std::move(child), index, DerivationStep{cut, r}, depth + 1});
      queue.push_back(nodes.size() - 1);
    }
  }

  result.status = capped ? ProduceStatus::unknown : ProduceStatus::no;
  return result;
}

inline ProduceResult produces(const Grammar& g, const Sentence& w) {
  return produces(g, w, default_caps(w.size()));
}

// ---------------------------------------------------------------------------
// Derivation witness search
// ---------------------------------------------------------------------------

struct WitnessResult {
  std::optional<DerivationTrace> trace;
  bool complete{};  // when absent: true means the pruned space was exhausted
  SearchStats stats;
};

// Searches for a derivation of `to` from `from` with at most depth_cap steps,
// expanding cuts leftmost-first. Unlike enumeration this must consider every
// cut position: a target may keep a nonterminal to the left of one that has
// to be rewritten.
inline WitnessResult derives_witness(const Grammar& g, const SententialForm& from,
                                     const SententialForm& to, std::size_t depth_cap,
                                     const SearchCaps& caps) {
  WitnessResult result;
  const MinYield yields = min_yield(g);
  bool capped = false;

  // Lower bound on the length of any form derivable from s: only a nullable
  // nonterminal can vanish.
  auto low = [&](const Symbol& s) -> std::size_t {
    return (s.is_nonterminal() && yields.of(s) == 0) ? 0 : 1;
  };
  auto viable = [&](const SententialForm& form) {
    std::size_t bound = 0;
    for (const Symbol& s : form) bound += low(s);
    if (bound > to.size()) return false;
    return detail::terminals_embed(form, to);
  };

  std::vector<detail::SearchNode> nodes;
  std::unordered_set<std::string> visited;
  std::deque<std::size_t> queue;

  if (viable(from)) {
    visited.insert(detail::form_key(from));
    nodes.push_back({from, 0, {}, 0});
    queue.push_back(0);
  } else {
    result.stats.pruned++;
  }

  while (!queue.empty()) {
    const std::size_t index = queue.front();
    queue.pop_front();
    result.stats.explored++;

    const SententialForm form = nodes[index].form;
    const std::size_t depth = nodes[index].depth;
    if (form == to) {
      result.trace = detail::trace_from(nodes, index);
      result.complete = true;
      return result;
    }
    if (depth >= depth_cap) {
      capped = true;  // an unexplored deeper trace may still exist
      continue;
    }
    for (std::size_t cut = 0; cut < form.size(); ++cut) {
      if (!form[cut].is_nonterminal()) continue;
      for (const Rule& r : g.rules) {
        if (!(r.lhs == form[cut])) continue;
        SententialForm child = detail::rewrite_at(form, cut, r);
        // viable() is exact for the target form, so it runs before the
        // capacity caps; only a cap on a viable child taints completeness.
        if (!viable(child)) {
          result.stats.pruned++;
          continue;
        }
        if (child.size() > caps.max_form_len) {
          result.stats.cap_hits++;
          capped = true;
          continue;
        }
        std::string key = detail::form_key(child);
        if (visited.count(key) != 0) {
          result.stats.pruned++;
          continue;
        }
        if (visited.size() >= caps.max_visited) {
          result.stats.cap_hits++;
          capped = true;
          continue;
        }
        visited.insert(std::move(key));
        nodes.push_back({std::move(child), index, DerivationStep{cut, r}, depth + 1});
        queue.push_back(nodes.size() - 1);
      }
    }
  }

  result.complete = !capped;
  return result;
}

inline WitnessResult derives_witness(const Grammar& g, const SententialForm& from,
                                     const SententialForm& to, std::size_t depth_cap) {
  return derives_witness(g, from, to, depth_cap, default_caps(to.size()));
}

}  // namespace cfgkit
