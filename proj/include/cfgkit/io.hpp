#pragma once

#include <cctype>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cfgkit/analysis.hpp"
#include "cfgkit/grammar.hpp"
#include "cfgkit/transform.hpp"

namespace cfgkit {

// ---------------------------------------------------------------------------
// Grammar text format
//
//   # full-line comments
//   start: S
//   terminals: a b
//   nonterminals: S A B
//   S -> a S
//   S -> b
//   A ->
//
// Tokens are whitespace-separated names. The three header lines appear once
// each, in any order, before the first rule. `|` splits alternatives on
// input; output is always one rule per line. An rhs of zero tokens is the
// empty word.
// ---------------------------------------------------------------------------

namespace detail {

struct LineToken {
  std::string text;
  std::size_t col{};  // 1-based
};

inline std::vector<LineToken> tokenize_line(const std::string& line) {
  std::vector<LineToken> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t begin = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    tokens.push_back({line.substr(begin, i - begin), begin + 1});
  }
  return tokens;
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& what) {
  throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ": " + what);
}

[[noreturn]] inline void parse_fail(std::size_t line_no, std::size_t col,
                                    const std::string& what) {
  throw Error(Errc::parse_error, "line " + std::to_string(line_no) + ", col " +
                                     std::to_string(col) + ": " + what);
}

}  // namespace detail

inline Grammar parse_grammar(std::istream& in) {
  using detail::LineToken;

  Grammar g;
  bool have_start = false, have_terminals = false, have_nonterminals = false;
  std::size_t start_line = 0;
  std::string start_name;
  std::set<std::string> declared_names;
  std::set<Rule> seen_rules;

  const auto require_headers = [&](std::size_t line_no, const std::string& where) {
    if (have_start && have_terminals && have_nonterminals) return;
    std::string missing;
    if (!have_start) missing = "start:";
    else if (!have_terminals) missing = "terminals:";
    else missing = "nonterminals:";
    throw Error(Errc::missing_header,
                "line " + std::to_string(line_no) + ": missing '" + missing +
                    "' header " + where);
  };

  const auto declare = [&](const LineToken& tok, std::size_t line_no, SymbolKind kind) {
    if (!valid_symbol_name(tok.text))
      detail::parse_fail(line_no, tok.col, "invalid symbol name '" + tok.text + "'");
    if (!declared_names.insert(tok.text).second)
      detail::parse_fail(line_no, tok.col, "duplicate declaration of '" + tok.text + "'");
    if (kind == SymbolKind::terminal)
      g.terminals.push_back(Symbol::t(tok.text));
    else
      g.nonterminals.push_back(Symbol::nt(tok.text));
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<LineToken> tokens = detail::tokenize_line(line);
    if (tokens.empty()) continue;
    if (tokens[0].text[0] == '#') continue;

    if (tokens[0].text == "start:") {
      if (have_start) detail::parse_fail(line_no, "duplicate 'start:' header");
      if (!g.rules.empty()) detail::parse_fail(line_no, "headers must precede rules");
      if (tokens.size() != 2)
        detail::parse_fail(line_no, "'start:' expects exactly one symbol name");
      if (!valid_symbol_name(tokens[1].text))
        detail::parse_fail(line_no, tokens[1].col,
                           "invalid symbol name '" + tokens[1].text + "'");
      start_name = tokens[1].text;
      start_line = line_no;
      have_start = true;
      continue;
    }
    if (tokens[0].text == "terminals:") {
      if (have_terminals) detail::parse_fail(line_no, "duplicate 'terminals:' header");
      if (!g.rules.empty()) detail::parse_fail(line_no, "headers must precede rules");
      for (std::size_t i = 1; i < tokens.size(); ++i)
        declare(tokens[i], line_no, SymbolKind::terminal);
      have_terminals = true;
      continue;
    }
    if (tokens[0].text == "nonterminals:") {
      if (have_nonterminals)
        detail::parse_fail(line_no, "duplicate 'nonterminals:' header");
      if (!g.rules.empty()) detail::parse_fail(line_no, "headers must precede rules");
      for (std::size_t i = 1; i < tokens.size(); ++i)
        declare(tokens[i], line_no, SymbolKind::nonterminal);
      have_nonterminals = true;
      continue;
    }

    // Anything else is a rule line.
    require_headers(line_no, "before first rule");
    if (tokens.size() < 2 || tokens[1].text != "->")
      detail::parse_fail(line_no, tokens[0].col,
                         "expected '<nonterminal> -> ...' rule syntax");
    const std::string& lhs_name = tokens[0].text;
    if (g.declares(Symbol::t(lhs_name)))
      detail::parse_fail(line_no, tokens[0].col,
                         "rule left-hand side '" + lhs_name + "' is a terminal");
    if (!g.declares(Symbol::nt(lhs_name)))
      throw Error(Errc::undeclared_symbol, "line " + std::to_string(line_no) +
                                               ": undeclared symbol '" + lhs_name + "'");
    const Symbol lhs = Symbol::nt(lhs_name);

    std::vector<std::vector<Symbol>> alternatives(1);
    for (std::size_t i = 2; i < tokens.size(); ++i) {
      const LineToken& tok = tokens[i];
      if (tok.text == "|") {
        alternatives.emplace_back();
        continue;
      }
      if (tok.text == "->")
        detail::parse_fail(line_no, tok.col, "unexpected '->' in rule right-hand side");
      if (g.declares(Symbol::t(tok.text)))
        alternatives.back().push_back(Symbol::t(tok.text));
      else if (g.declares(Symbol::nt(tok.text)))
        alternatives.back().push_back(Symbol::nt(tok.text));
      else
        throw Error(Errc::undeclared_symbol, "line " + std::to_string(line_no) +
                                                 ": undeclared symbol '" + tok.text + "'");
    }
    for (std::vector<Symbol>& rhs : alternatives) {
      Rule r{lhs, std::move(rhs)};
      if (!seen_rules.insert(r).second)
        throw Error(Errc::duplicate_rule, "line " + std::to_string(line_no) +
                                              ": duplicate rule '" + rule_to_string(r) +
                                              "'");
      g.rules.push_back(std::move(r));
    }
  }

  require_headers(line_no == 0 ? 1 : line_no, "before end of input");
  if (g.declares(Symbol::t(start_name)))
    detail::parse_fail(start_line, "start symbol '" + start_name +
                                       "' is declared as a terminal");
  if (!g.declares(Symbol::nt(start_name)))
    throw Error(Errc::undeclared_symbol, "line " + std::to_string(start_line) +
                                             ": undeclared symbol '" + start_name + "'");
  g.start = Symbol::nt(start_name);

  const ValidationReport report = validate(g);
  if (!report.ok())
    detail::parse_fail(start_line, "grammar failed validation after parse");
  return g;
}

inline Grammar parse_grammar(const std::string& text) {
  std::istringstream in(text);
  return parse_grammar(in);
}

inline std::string serialize_grammar(const Grammar& g) {
  std::string out = "start: " + g.start.name + "\n";
  out += "terminals:";
  for (const Symbol& t : g.terminals) out += " " + t.name;
  out += "\nnonterminals:";
  for (const Symbol& n : g.nonterminals) out += " " + n.name;
  out += "\n";
  for (const Rule& r : g.rules) out += rule_to_string(r) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Word and report rendering
// ---------------------------------------------------------------------------

inline constexpr const char* empty_word_token = "<eps>";

inline std::string render_word(const Sentence& w) {
  if (w.empty()) return empty_word_token;
  std::string out;
  for (const Symbol& s : w) {
    if (!out.empty()) out += ' ';
    out += s.name;
  }
  return out;
}

inline std::string render_symbol_names(const std::set<Symbol>& symbols) {
  std::string out;
  for (const Symbol& s : symbols) {
    if (!out.empty()) out += ' ';
    out += s.name;
  }
  return out;
}

inline std::string render_unit_pairs(const UnitPairs& pairs) {
  std::string out;
  for (const auto& [a, b] : pairs.pairs) {
    if (!out.empty()) out += ' ';
    out += "(" + a.name + "," + b.name + ")";
  }
  return out;
}

inline std::string render_predicates(const PredicateReport& p) {
  const auto line = [](const char* key, bool value) {
    return std::string(key) + ": " + (value ? "true" : "false") + "\n";
  };
  std::string out;
  out += line("has_no_empty_rules", p.has_no_empty_rules);
  out += line("has_one_empty_rule", p.has_one_empty_rule);
  out += line("has_no_unit_rules", p.has_no_unit_rules);
  out += line("has_no_useless_symbols", p.has_no_useless_symbols);
  out += line("has_no_inaccessible_symbols", p.has_no_inaccessible_symbols);
  out += line("start_symbol_not_in_rhs", p.start_symbol_not_in_rhs);
  out += line("non_empty", p.non_empty);
  out += line("generates_empty", p.generates_empty);
  return out;
}

inline std::string render_pass_report(const PassReport& report) {
  std::string out;
  out += std::string("pass: ") + pass_name(report.pass) + "\n";
  out += "rules_in: " + std::to_string(report.rules_in) + "\n";
  out += "rules_out: " + std::to_string(report.rules_out) + "\n";
  if (report.fresh_start) out += "fresh_start: " + report.fresh_start->name + "\n";
  for (const Rule& r : report.added) out += "added: " + rule_to_string(r) + "\n";
  for (const Rule& r : report.removed) out += "removed: " + rule_to_string(r) + "\n";
  return out;
}

}  // namespace cfgkit
