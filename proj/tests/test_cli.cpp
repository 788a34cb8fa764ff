#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include <catch2/catch_amalgamated.hpp>

#include "json.hpp"

#include "cfgkit/cfgkit.hpp"

using namespace cfgkit;

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code{};
  std::string out;
  std::string err;
};

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("cfgkit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  const fs::path out = scratch_dir() / "stdout.txt";
  const fs::path err = scratch_dir() / "stderr.txt";
  const std::string cmd = std::string("\"") + CFGKIT_BIN + "\" " + args + " > " +
                          out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out);
  r.err = slurp(err);
  return r;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = scratch_dir() / name;
  std::ofstream out(p);
  out << text;
  return p;
}

std::string sample(const char* name) {
  return (fs::path(CFGKIT_SAMPLES_DIR) / name).string();
}

}  // namespace

TEST_CASE("enumerate lists words in order and certifies completeness") {
  const RunResult r = run("enumerate " + sample("astar_b.cfg") + " --max-len 3");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "b\na b\na a b\n");
  CHECK(r.err.find("complete") != std::string::npos);
}

TEST_CASE("enumerate prints the empty word token") {
  const RunResult r = run("enumerate " + sample("eps_only.cfg") + " --max-len 0");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "<eps>\n");
}

TEST_CASE("enumerate of an empty language prints nothing") {
  const RunResult r = run("enumerate " + sample("empty_language.cfg") + " --max-len 5");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(r.err.find("complete") != std::string::npos);
}

TEST_CASE("simplify emits the transformed grammar and a report") {
  const RunResult r = run("simplify " + sample("astar_b.cfg"));
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "start: S0\n"
        "terminals: a b\n"
        "nonterminals: S' A B S0\n"
        "S' -> a S'\n"
        "S' -> b\n"
        "S0 -> a S'\n"
        "S0 -> b\n");
  CHECK(r.err.find("pass: empty\n") != std::string::npos);
  CHECK(r.err.find("pass: inaccessible\n") != std::string::npos);
  CHECK(r.err.find("has_no_unit_rules: true\n") != std::string::npos);
  CHECK(r.err.find("non_empty: true\n") != std::string::npos);
}

TEST_CASE("simplify with a single pass canonicalizes an already-clean input") {
  const RunResult r = run("simplify --passes unit " + sample("astar_b.cfg"));
  CHECK(r.exit_code == 0);
  std::ifstream in(sample("astar_b.cfg"));
  const Grammar g = parse_grammar(in);
  CHECK(r.out == serialize_grammar(g));
  CHECK(r.err.find("warning") == std::string::npos);
}

TEST_CASE("simplify in useless-only mode fails on an empty language") {
  const RunResult r = run("simplify --passes useless " + sample("empty_language.cfg"));
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("error:") != std::string::npos);
  CHECK(r.err.find("language is empty") != std::string::npos);
}

TEST_CASE("simplify warns when passes run out of order") {
  const RunResult r = run("simplify --passes useless,empty " + sample("astar_b.cfg"));
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(r.err.find("deviates") != std::string::npos);
}

TEST_CASE("simplify writes --out and --report files") {
  const fs::path out = scratch_dir() / "simplified.cfg";
  const fs::path rep = scratch_dir() / "report.txt";
  const RunResult r = run("simplify " + sample("astar_b.cfg") + " --out " +
                          out.string() + " --report " + rep.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(out).find("start: S0\n") == 0);
  CHECK(slurp(rep).find("pass: empty\n") == 0);
}

TEST_CASE("analyze prints sets and predicates") {
  const RunResult r = run("analyze " + sample("astar_b.cfg"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("nullable: \n") != std::string::npos);
  CHECK(r.out.find("useful: S' a b\n") != std::string::npos);
  CHECK(r.out.find("accessible: S' a b\n") != std::string::npos);
  CHECK(r.out.find("has_no_useless_symbols: true\n") != std::string::npos);
  CHECK(r.out.find("start_symbol_not_in_rhs: false\n") != std::string::npos);
}

TEST_CASE("analyze emits machine-readable JSON on request") {
  const RunResult r = run("analyze --json " + sample("nullable_chain.cfg"));
  CHECK(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["nullable"] == nlohmann::json::array({"A", "B", "C"}));
  CHECK(j["predicates"]["non_empty"] == true);
  CHECK(j["predicates"]["generates_empty"] == false);
}

TEST_CASE("equiv exits zero on equivalent inputs") {
  const RunResult r = run("equiv " + sample("astar_b.cfg") + " " +
                          sample("astar_b.cfg") + " --max-len 4");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("EQUIVALENT_UP_TO_BOUND") == 0);
}

TEST_CASE("equiv reports a counterexample and exits one") {
  const fs::path b_only = write_file("b_only.cfg",
                                     "start: S\n"
                                     "terminals: a b\n"
                                     "nonterminals: S\n"
                                     "S -> b\n");
  const RunResult r = run("equiv " + sample("astar_b.cfg") + " " + b_only.string() +
                          " --max-len 3");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("INEQUIVALENT") == 0);
  CHECK(r.out.find("counterexample: a b\n") != std::string::npos);
  CHECK(r.out.find("trace:\n") != std::string::npos);
}

TEST_CASE("equiv rejects mismatched alphabets with a usage error") {
  const RunResult r = run("equiv " + sample("astar_b.cfg") + " " +
                          sample("eps_only.cfg") + " --max-len 2");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("random is reproducible and matches the golden seed") {
  const RunResult once = run("random --seed 42");
  const RunResult twice = run("random --seed 42");
  CHECK(once.exit_code == 0);
  CHECK(once.out == twice.out);
  CHECK(once.out.find("start: S\n") == 0);
  const Grammar g = parse_grammar(once.out);
  CHECK(g == random_grammar(GenConfig{.seed = 42}));
}

TEST_CASE("random rejects invalid configuration") {
  const RunResult r = run("random --seed 5 --empty-bias 1.5");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("random with nonempty requirement delivers or exits one") {
  const RunResult ok = run("random --seed 7 --require-nonempty");
  CHECK(ok.exit_code == 0);
  const Grammar g = parse_grammar(ok.out);
  CHECK(useful_set(g).contains(g.start));

  const RunResult exhausted =
      run("random --seed 3 --require-nonempty --empty-bias 0 --unit-bias 1 --retries 5");
  CHECK(exhausted.exit_code == 1);
}

TEST_CASE("usage and input errors exit two") {
  CHECK(run("no_such_command").exit_code == 2);
  CHECK(run("enumerate " + sample("astar_b.cfg")).exit_code == 2);
  CHECK(run("enumerate /no/such/file.cfg --max-len 2").exit_code == 2);
  CHECK(run("simplify --passes nonsense " + sample("astar_b.cfg")).exit_code == 2);
  const fs::path broken = write_file("broken.cfg", "start: S\nS -> a\n");
  CHECK(run("analyze " + broken.string()).exit_code == 2);
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("simplify then equiv against the original always exits zero") {
  for (int seed = 1; seed <= 10; ++seed) {
    const fs::path original = scratch_dir() / ("g" + std::to_string(seed) + ".cfg");
    const fs::path simplified = scratch_dir() / ("s" + std::to_string(seed) + ".cfg");
    REQUIRE(run("random --seed " + std::to_string(seed) + " --require-nonempty --out " +
                original.string())
                .exit_code == 0);
    REQUIRE(run("simplify " + original.string() + " --out " + simplified.string())
                .exit_code == 0);
    const RunResult v =
        run("equiv " + original.string() + " " + simplified.string() + " --max-len 6");
    CAPTURE(seed, v.out, v.err);
    CHECK(v.exit_code == 0);
  }
}
