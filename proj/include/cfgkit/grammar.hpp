#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace cfgkit {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class Errc {
  name_collision,
  step_cut_out_of_bounds,
  step_symbol_mismatch,
  step_rule_not_in_grammar,
  undeclared_terminal,
  empty_language,
  nullable_expansion_too_large,
  terminal_alphabet_mismatch,
  parse_error,
  undeclared_symbol,
  duplicate_rule,
  missing_header,
  bad_config,
  retry_exhausted,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

enum class SymbolKind { nonterminal, terminal };

struct Symbol {
  SymbolKind kind{SymbolKind::nonterminal};
  std::string name;

  static Symbol nt(std::string name) {
    return Symbol{SymbolKind::nonterminal, std::move(name)};
  }
  static Symbol t(std::string name) {
    return Symbol{SymbolKind::terminal, std::move(name)};
  }

  bool is_nonterminal() const { return kind == SymbolKind::nonterminal; }
  bool is_terminal() const { return kind == SymbolKind::terminal; }

  friend bool operator==(const Symbol&, const Symbol&) = default;

  // Name-major order so sorted symbol listings read alphabetically.
  friend bool operator<(const Symbol& a, const Symbol& b) {
    if (a.name != b.name) return a.name < b.name;
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  }
};

// A symbol name must be nonempty, whitespace-free, and must not contain the
// tokens reserved by the grammar file format: '|', '#', ':' and "->".
inline bool valid_symbol_name(std::string_view name) {
  if (name.empty()) return false;
  for (unsigned char c : name) {
    if (std::isspace(c) != 0) return false;
    if (c == '|' || c == '#' || c == ':') return false;
  }
  if (name.find("->") != std::string_view::npos) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Rules and sentential forms
// ---------------------------------------------------------------------------

struct Rule {
  Symbol lhs;                // always a nonterminal in a valid grammar
  std::vector<Symbol> rhs;   // empty rhs encodes an epsilon rule

  bool is_empty() const { return rhs.empty(); }
  bool is_unit() const { return rhs.size() == 1 && rhs[0].is_nonterminal(); }

  friend bool operator==(const Rule&, const Rule&) = default;
  friend bool operator<(const Rule& a, const Rule& b) {
    return std::tie(a.lhs, a.rhs) < std::tie(b.lhs, b.rhs);
  }
};

// Sequence of terminals and nonterminals; a Sentence holds terminals only.
using SententialForm = std::vector<Symbol>;
using Sentence = std::vector<Symbol>;

inline bool all_terminal(const SententialForm& form) {
  return std::all_of(form.begin(), form.end(),
                     [](const Symbol& s) { return s.is_terminal(); });
}

// ---------------------------------------------------------------------------
// Grammar
// ---------------------------------------------------------------------------

struct Grammar {
  std::vector<Symbol> nonterminals;  // declaration order, duplicate-free
  std::vector<Symbol> terminals;     // declaration order, duplicate-free
  Symbol start;
  std::vector<Rule> rules;           // insertion order, duplicate-free

  bool declares(const Symbol& s) const {
    const auto& pool = s.is_nonterminal() ? nonterminals : terminals;
    return std::find(pool.begin(), pool.end(), s) != pool.end();
  }

  bool has_rule(const Rule& r) const {
    return std::find(rules.begin(), rules.end(), r) != rules.end();
  }

  friend bool operator==(const Grammar&, const Grammar&) = default;
};

// The maximum rhs length over all rules; 0 for a rule-free grammar.
inline std::size_t max_rhs_len(const Grammar& g) {
  std::size_t n = 0;
  for (const Rule& r : g.rules) n = std::max(n, r.rhs.size());
  return n;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

enum class ViolationKind {
  bad_symbol_name,
  duplicate_declaration,
  alphabet_overlap,
  start_not_declared,
  lhs_not_nonterminal,
  lhs_undeclared,
  rhs_symbol_undeclared,
  duplicate_rule,
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(ViolationKind kind) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.kind == kind; });
  }
};

inline std::string rule_to_string(const Rule& r) {
  std::string out = r.lhs.name + " ->";
  for (const Symbol& s : r.rhs) {
    out += ' ';
    out += s.name;
  }
  return out;
}

// Structural validation; violations are data, not failures.
inline ValidationReport validate(const Grammar& g) {
  ValidationReport report;
  auto flag = [&](ViolationKind kind, std::string detail) {
    report.violations.push_back({kind, std::move(detail)});
  };

  std::set<std::string> nt_names;
  std::set<std::string> t_names;
  for (const Symbol& s : g.nonterminals) {
    if (!valid_symbol_name(s.name))
      flag(ViolationKind::bad_symbol_name, "nonterminal '" + s.name + "'");
    if (!s.is_nonterminal())
      flag(ViolationKind::bad_symbol_name,
           "terminal-tagged symbol '" + s.name + "' declared as nonterminal");
    if (!nt_names.insert(s.name).second)
      flag(ViolationKind::duplicate_declaration, "nonterminal '" + s.name + "'");
  }
  for (const Symbol& s : g.terminals) {
    if (!valid_symbol_name(s.name))
      flag(ViolationKind::bad_symbol_name, "terminal '" + s.name + "'");
    if (!s.is_terminal())
      flag(ViolationKind::bad_symbol_name,
           "nonterminal-tagged symbol '" + s.name + "' declared as terminal");
    if (!t_names.insert(s.name).second)
      flag(ViolationKind::duplicate_declaration, "terminal '" + s.name + "'");
    if (nt_names.count(s.name) != 0)
      flag(ViolationKind::alphabet_overlap, "'" + s.name + "'");
  }

  if (!g.start.is_nonterminal() || nt_names.count(g.start.name) == 0)
    flag(ViolationKind::start_not_declared, "start symbol '" + g.start.name + "'");

  std::set<Rule> seen;
  for (const Rule& r : g.rules) {
    const std::string where = "in rule '" + rule_to_string(r) + "'";
    if (!r.lhs.is_nonterminal())
      flag(ViolationKind::lhs_not_nonterminal, where);
    else if (nt_names.count(r.lhs.name) == 0)
      flag(ViolationKind::lhs_undeclared, "'" + r.lhs.name + "' " + where);
    for (const Symbol& s : r.rhs) {
      const auto& names = s.is_nonterminal() ? nt_names : t_names;
      if (names.count(s.name) == 0)
        flag(ViolationKind::rhs_symbol_undeclared, "'" + s.name + "' " + where);
    }
    if (!seen.insert(r).second) flag(ViolationKind::duplicate_rule, where);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Alphabet lifting
// ---------------------------------------------------------------------------

// The original nonterminals keep their names; the fresh start symbol is
// appended last and is guaranteed distinct from every lifted name.
struct LiftedAlphabet {
  std::vector<Symbol> nonterminals;
  std::vector<Symbol> terminals;
  Symbol fresh_start;
};

// Smallest fresh name in the sequence base, base_1, base_2, ...
inline std::string fresh_start_name(const Grammar& g, const std::string& base = "S0") {
  std::set<std::string> taken;
  for (const Symbol& s : g.nonterminals) taken.insert(s.name);
  for (const Symbol& s : g.terminals) taken.insert(s.name);
  if (taken.count(base) == 0) return base;
  for (std::size_t i = 1;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (taken.count(candidate) == 0) return candidate;
  }
}

inline LiftedAlphabet lift_alphabet(const Grammar& g, const std::string& fresh_start) {
  for (const Symbol& s : g.nonterminals) {
    if (s.name == fresh_start)
      throw Error(Errc::name_collision,
                  "fresh start symbol '" + fresh_start +
                      "' collides with nonterminal '" + s.name + "'");
  }
  for (const Symbol& s : g.terminals) {
    if (s.name == fresh_start)
      throw Error(Errc::name_collision,
                  "fresh start symbol '" + fresh_start +
                      "' collides with terminal '" + s.name + "'");
  }
  LiftedAlphabet out;
  out.nonterminals = g.nonterminals;
  out.fresh_start = Symbol::nt(fresh_start);
  out.nonterminals.push_back(out.fresh_start);
  out.terminals = g.terminals;
  return out;
}

}  // namespace cfgkit
