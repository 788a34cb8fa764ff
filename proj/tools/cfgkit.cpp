// Command-line front end. Data goes to stdout (or --out files), diagnostics
// to stderr. Exit codes: 0 success or true verdict, 1 checked property false
// or INEQUIVALENT, 2 usage or input error, 3 INCONCLUSIVE.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfgkit/cfgkit.hpp"

namespace {

using namespace cfgkit;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::empty_language:
    case Errc::retry_exhausted:
      return 1;
    default:
      return 2;
  }
}

Grammar load_grammar(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot open '" + path + "'");
  return parse_grammar(in);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(Errc::parse_error, "cannot write '" + path + "'");
  out << text;
}

std::string render_trace(const Grammar& g, const DerivationTrace& trace) {
  std::string out = "  " + form_to_string(trace.origin) + "\n";
  SententialForm form = trace.origin;
  for (const DerivationStep& step : trace.steps) {
    form = apply_step(g, form, step);
    out += "  => " + form_to_string(form) + "\n";
  }
  return out;
}

struct SimplifyArgs {
  std::string input, passes, out, report;
};

int run_simplify(const SimplifyArgs& args) {
  const Grammar g = load_grammar(args.input);

  std::vector<PassReport> reports;
  Grammar result;
  if (args.passes.empty()) {
    PipelineResult pipeline = simplify_pipeline(g);
    result = std::move(pipeline.grammar);
    reports = std::move(pipeline.reports);
  } else {
    std::vector<PassKind> sequence;
    std::stringstream ss(args.passes);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name == "empty") sequence.push_back(PassKind::empty);
      else if (name == "unit") sequence.push_back(PassKind::unit);
      else if (name == "useless") sequence.push_back(PassKind::useless);
      else if (name == "inaccessible") sequence.push_back(PassKind::inaccessible);
      else throw Error(Errc::bad_config, "unknown pass '" + name + "'");
    }
    if (sequence.empty()) throw Error(Errc::bad_config, "--passes lists no passes");

    bool ordered = true;
    for (std::size_t i = 1; i < sequence.size(); ++i)
      if (static_cast<int>(sequence[i]) < static_cast<int>(sequence[i - 1])) ordered = false;
    if (!ordered)
      std::cerr << "warning: pass order deviates from the safe order "
                   "(empty, unit, useless, inaccessible); equivalence is "
                   "not guaranteed\n";

    result = g;
    for (PassKind kind : sequence) {
      PassResult pass;
      switch (kind) {
        case PassKind::empty: pass = eliminate_empty(result); break;
        case PassKind::unit: pass = eliminate_unit(result); break;
        case PassKind::useless: pass = eliminate_useless(result); break;
        case PassKind::inaccessible: pass = eliminate_inaccessible(result); break;
      }
      result = std::move(pass.grammar);
      reports.push_back(std::move(pass.report));
    }
  }

  write_text(args.out, serialize_grammar(result));

  std::string report_text;
  for (const PassReport& r : reports) report_text += render_pass_report(r) + "\n";
  report_text += render_predicates(predicates(result));
  if (args.report.empty())
    std::cerr << report_text;
  else
    write_text(args.report, report_text);
  return 0;
}

int run_analyze(const std::string& input, bool as_json) {
  const Grammar g = load_grammar(input);
  const NullableSet nullable = nullable_set(g);
  const UnitPairs pairs = unit_pairs(g);
  const UsefulSet useful = useful_set(g);
  const AccessibleSet accessible = accessible_set(g);
  const PredicateReport preds = predicates(g);

  if (as_json) {
    nlohmann::json j;
    auto names = [](const std::set<Symbol>& symbols) {
      std::vector<std::string> out;
      for (const Symbol& s : symbols) out.push_back(s.name);
      return out;
    };
    j["nullable"] = names(nullable.members);
    j["unit_pairs"] = nlohmann::json::array();
    for (const auto& [a, b] : pairs.pairs)
      j["unit_pairs"].push_back({a.name, b.name});
    j["useful"] = names(useful.members);
    j["accessible"] = names(accessible.members);
    j["predicates"] = {
        {"has_no_empty_rules", preds.has_no_empty_rules},
        {"has_one_empty_rule", preds.has_one_empty_rule},
        {"has_no_unit_rules", preds.has_no_unit_rules},
        {"has_no_useless_symbols", preds.has_no_useless_symbols},
        {"has_no_inaccessible_symbols", preds.has_no_inaccessible_symbols},
        {"start_symbol_not_in_rhs", preds.start_symbol_not_in_rhs},
        {"non_empty", preds.non_empty},
        {"generates_empty", preds.generates_empty},
    };
    std::cout << j.dump(2) << "\n";
    return 0;
  }

  std::cout << "nullable: " << render_symbol_names(nullable.members) << "\n";
  std::cout << "unit_pairs: " << render_unit_pairs(pairs) << "\n";
  std::cout << "useful: " << render_symbol_names(useful.members) << "\n";
  std::cout << "accessible: " << render_symbol_names(accessible.members) << "\n";
  std::cout << render_predicates(preds);
  return 0;
}

struct CapsArgs {
  std::size_t max_form_len = 0;
  std::size_t max_visited = 0;
  std::size_t max_depth = 0;

  SearchCaps resolve(std::size_t max_len) const {
    SearchCaps caps = default_caps(max_len);
    if (max_form_len) caps.max_form_len = max_form_len;
    if (max_visited) caps.max_visited = max_visited;
    if (max_depth) caps.max_depth = max_depth;
    return caps;
  }
};

int run_enumerate(const std::string& input, std::size_t max_len, const CapsArgs& caps) {
  const Grammar g = load_grammar(input);
  const EnumerationResult lang = enumerate_language(g, max_len, caps.resolve(max_len));
  for (const Sentence& w : lang.words) std::cout << render_word(w) << "\n";
  std::cerr << (lang.complete ? "complete" : "incomplete: search caps hit") << "\n";
  return 0;
}

int run_equiv(const std::string& first, const std::string& second, std::size_t max_len,
              const CapsArgs& caps) {
  const Grammar g1 = load_grammar(first);
  const Grammar g2 = load_grammar(second);
  const EquivVerdict verdict = bounded_equiv(g1, g2, max_len, caps.resolve(max_len));

  std::cout << equiv_status_name(verdict.status) << " (max_len=" << verdict.bound << ")\n";
  switch (verdict.status) {
    case EquivStatus::equivalent_up_to_bound:
      return 0;
    case EquivStatus::inequivalent: {
      const Counterexample& ce = *verdict.counterexample;
      const bool first_side = ce.produced_by == Side::first;
      std::cout << "counterexample: " << render_word(ce.word) << "\n";
      std::cout << "produced_by: " << (first_side ? first : second) << "\n";
      std::cout << "trace:\n" << render_trace(first_side ? g1 : g2, ce.trace);
      return 1;
    }
    case EquivStatus::inconclusive:
      std::cerr << "search caps hit before the languages could be separated\n";
      return 3;
  }
  return 2;
}

struct RandomArgs {
  GenConfig cfg;
  std::size_t retries = default_nonempty_retries;
  bool require_nonempty = false;
  std::string out;
};

int run_random(const RandomArgs& args) {
  const Grammar g = args.require_nonempty
                        ? random_nonempty_grammar(args.cfg, args.retries)
                        : random_grammar(args.cfg);
  write_text(args.out, serialize_grammar(g));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"context-free grammar simplification toolkit"};
  app.require_subcommand(1);

  SimplifyArgs simplify_args;
  CLI::App* simplify = app.add_subcommand(
      "simplify", "run simplification passes and report what changed");
  simplify->add_option("input", simplify_args.input, "grammar file")->required();
  simplify->add_option("--passes", simplify_args.passes,
                       "comma-separated subset of empty,unit,useless,inaccessible "
                       "(default: all four in that order)");
  simplify->add_option("--out", simplify_args.out, "write the grammar here instead of stdout");
  simplify->add_option("--report", simplify_args.report,
                       "write the pass report here instead of stderr");

  std::string analyze_input;
  bool analyze_json = false;
  CLI::App* analyze = app.add_subcommand(
      "analyze", "print nullable/unit/useful/accessible sets and predicates");
  analyze->add_option("input", analyze_input, "grammar file")->required();
  analyze->add_flag("--json", analyze_json, "emit JSON instead of key-value text");

  std::string enum_input;
  std::size_t enum_max_len = 0;
  CapsArgs enum_caps;
  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "list every producible word up to a length bound");
  enumerate->add_option("input", enum_input, "grammar file")->required();
  enumerate->add_option("--max-len", enum_max_len, "length bound")->required();
  enumerate->add_option("--max-form-len", enum_caps.max_form_len, "sentential form cap");
  enumerate->add_option("--max-visited", enum_caps.max_visited, "visited form cap");
  enumerate->add_option("--max-depth", enum_caps.max_depth, "derivation depth cap");

  std::string equiv_first, equiv_second;
  std::size_t equiv_max_len = 0;
  CapsArgs equiv_caps;
  CLI::App* equiv = app.add_subcommand(
      "equiv", "compare two grammars on all words up to a length bound");
  equiv->add_option("first", equiv_first, "grammar file")->required();
  equiv->add_option("second", equiv_second, "grammar file")->required();
  equiv->add_option("--max-len", equiv_max_len, "length bound")->required();
  equiv->add_option("--max-form-len", equiv_caps.max_form_len, "sentential form cap");
  equiv->add_option("--max-visited", equiv_caps.max_visited, "visited form cap");
  equiv->add_option("--max-depth", equiv_caps.max_depth, "derivation depth cap");

  RandomArgs random_args;
  CLI::App* random = app.add_subcommand("random", "generate a seeded random grammar");
  random->add_option("--seed", random_args.cfg.seed, "generator seed")->required();
  random->add_option("--max-nonterminals", random_args.cfg.max_nonterminals,
                     "nonterminal count bound");
  random->add_option("--max-terminals", random_args.cfg.max_terminals,
                     "terminal count bound");
  random->add_option("--max-rules", random_args.cfg.max_rules, "rule count bound");
  random->add_option("--max-rhs-len", random_args.cfg.max_rhs_len,
                     "rule right-hand side length bound");
  random->add_option("--empty-bias", random_args.cfg.empty_rule_bias,
                     "probability of an empty rule");
  random->add_option("--unit-bias", random_args.cfg.unit_rule_bias,
                     "probability of a unit rule");
  random->add_option("--retries", random_args.retries,
                     "attempts before --require-nonempty gives up");
  random->add_flag("--require-nonempty", random_args.require_nonempty,
                   "resample until the language is non-empty");
  random->add_option("--out", random_args.out, "write the grammar here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(simplify)) return run_simplify(simplify_args);
    if (app.got_subcommand(analyze)) return run_analyze(analyze_input, analyze_json);
    if (app.got_subcommand(enumerate))
      return run_enumerate(enum_input, enum_max_len, enum_caps);
    if (app.got_subcommand(equiv))
      return run_equiv(equiv_first, equiv_second, equiv_max_len, equiv_caps);
    if (app.got_subcommand(random)) return run_random(random_args);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
