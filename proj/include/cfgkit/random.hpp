#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "cfgkit/analysis.hpp"
#include "cfgkit/grammar.hpp"

namespace cfgkit {

// ---------------------------------------------------------------------------
// Deterministic generator
//
// SplitMix64 with the standard constants:
//   state += 0x9E3779B97F4A7C15
//   z = state; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//   return z ^ (z >> 31)
// Fixed here by its recurrence so identical seeds replay identically on
// every platform.
// ---------------------------------------------------------------------------

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform-enough draw in [0, n); the modulo bias is irrelevant for test
  // corpora and keeps the draw sequence trivially reproducible.
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // True with probability p. Consumes exactly one draw either way.
  bool chance(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Random grammars
// ---------------------------------------------------------------------------

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_nonterminals = 6;
  std::size_t max_terminals = 4;
  std::size_t max_rules = 12;
  std::size_t max_rhs_len = 4;
  double empty_rule_bias = 0.15;
  double unit_rule_bias = 0.15;
};

inline void check_config(const GenConfig& cfg) {
  const auto bad = [](const std::string& what) {
    throw Error(Errc::bad_config, "generator config: " + what);
  };
  if (cfg.max_nonterminals < 1) bad("max_nonterminals must be at least 1");
  if (cfg.max_terminals < 1) bad("max_terminals must be at least 1");
  if (cfg.max_rules < 1) bad("max_rules must be at least 1");
  if (cfg.max_rhs_len < 1) bad("max_rhs_len must be at least 1");
  if (!(cfg.empty_rule_bias >= 0.0 && cfg.empty_rule_bias <= 1.0))
    bad("empty_rule_bias must lie in [0,1]");
  if (!(cfg.unit_rule_bias >= 0.0 && cfg.unit_rule_bias <= 1.0))
    bad("unit_rule_bias must lie in [0,1]");
}

namespace detail {

inline std::string gen_nonterminal_name(std::size_t index) {
  if (index == 0) return "S";
  // A, B, C, ... skipping S so the start name stays unique.
  std::size_t offset = index - 1;
  for (char c = 'A'; c <= 'Z'; ++c) {
    if (c == 'S') continue;
    if (offset == 0) return std::string(1, c);
    --offset;
  }
  return "N" + std::to_string(index);
}

inline std::string gen_terminal_name(std::size_t index) {
  if (index < 26) return std::string(1, static_cast<char>('a' + index));
  return "t" + std::to_string(index);
}

}  // namespace detail

// Draw order (part of the reproducibility contract): nonterminal count,
// terminal count, rule count, then per rule the lhs index (skipped for the
// first rule, which always belongs to the start symbol), the empty-rule
// coin, the unit-rule coin, and for a plain rule the length followed by a
// kind coin and a symbol index per slot. Duplicate draws are skipped, not
// redrawn, so rule count is an upper bound.
inline Grammar random_grammar(const GenConfig& cfg) {
  check_config(cfg);
  SplitMix64 rng(cfg.seed);

  const std::size_t nt_count = 1 + static_cast<std::size_t>(rng.below(cfg.max_nonterminals));
  const std::size_t t_count = 1 + static_cast<std::size_t>(rng.below(cfg.max_terminals));
  const std::size_t rule_count = 1 + static_cast<std::size_t>(rng.below(cfg.max_rules));

  Grammar g;
  for (std::size_t i = 0; i < nt_count; ++i)
    g.nonterminals.push_back(Symbol::nt(detail::gen_nonterminal_name(i)));
  for (std::size_t i = 0; i < t_count; ++i)
    g.terminals.push_back(Symbol::t(detail::gen_terminal_name(i)));
  const std::vector<Symbol>& nts = g.nonterminals;
  const std::vector<Symbol>& ts = g.terminals;
  g.start = nts[0];

  std::set<Rule> seen;
  for (std::size_t i = 0; i < rule_count; ++i) {
    const Symbol lhs = i == 0 ? g.start : nts[rng.below(nt_count)];
    Rule r{lhs, {}};
    if (!rng.chance(cfg.empty_rule_bias)) {
      if (rng.chance(cfg.unit_rule_bias)) {
        r.rhs.push_back(nts[rng.below(nt_count)]);
      } else {
        const std::size_t len = 1 + static_cast<std::size_t>(rng.below(cfg.max_rhs_len));
        for (std::size_t k = 0; k < len; ++k) {
          if (rng.chance(0.5))
            r.rhs.push_back(ts[rng.below(t_count)]);
          else
            r.rhs.push_back(nts[rng.below(nt_count)]);
        }
      }
    }
    if (seen.insert(r).second) g.rules.push_back(std::move(r));
  }
  return g;
}

inline constexpr std::size_t default_nonempty_retries = 64;

// Rejection-samples random_grammar until the start symbol is useful. The
// first attempt uses cfg.seed itself; later attempts draw fresh seeds from a
// SplitMix64 stream over cfg.seed.
inline Grammar random_nonempty_grammar(const GenConfig& cfg,
                                       std::size_t max_retries = default_nonempty_retries) {
  check_config(cfg);
  SplitMix64 seeder(cfg.seed);
  GenConfig attempt = cfg;
  for (std::size_t i = 0; i < max_retries; ++i) {
    if (i > 0) attempt.seed = seeder.next();
    const Grammar g = random_grammar(attempt);
    if (useful_set(g).contains(g.start)) return g;
  }
  throw Error(Errc::retry_exhausted,
              "no grammar with a non-empty language after " +
                  std::to_string(max_retries) + " attempts");
}

}  // namespace cfgkit
