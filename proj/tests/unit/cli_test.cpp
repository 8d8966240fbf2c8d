#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lri/cli/commands.hpp"
#include "lri/cli/kb_file.hpp"
#include "lri/cli/repl.hpp"

using namespace lri;
using namespace lri::cli;

namespace {

constexpr const char* kPermit =
    "axioms:\n"
    "  act.\n"
    "hypotheses:\n"
    "  act -> perm.\n"
    "  ex.\n"
    "  ex -> -perm.\n"
    "queries:\n"
    "  perm.\n"
    "  -perm.\n";

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("lri_cli_test_" + name);
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "lri");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

Json json_of(const Outcome& o) { return Json::parse(o.out); }

Session permit_session() { return Session(parse_knowledge_base(kPermit), Options{}); }

}  // namespace

TEST_SUITE("kb_file") {

TEST_CASE("sections and order") {
  const auto kb = parse_knowledge_base(kPermit);
  CHECK(kb.axioms.size() == 1);
  REQUIRE(kb.hypotheses.size() == 3);
  CHECK(to_string(kb.hypotheses[2]) == "ex -> -perm");
  CHECK(kb.queries.size() == 2);
  CHECK_FALSE(kb.declared_constants);
}

TEST_CASE("schemas ground over the constants") {
  const auto kb = parse_knowledge_base(
      "constants: a, b\n"
      "axioms:\n  holds(a).\n"
      "hypotheses:\n  holds(X) -> legal(X).\n");
  CHECK(kb.declared_constants);
  REQUIRE(kb.hypotheses.size() == 2);
  CHECK(to_string(kb.hypotheses[0]) == "holds(a) -> legal(a)");
  CHECK(to_string(kb.hypotheses[1]) == "holds(b) -> legal(b)");
  CHECK_THROWS_AS(parse_knowledge_base("constants: a\naxioms:\n  holds(c).\n"), InputError);
}

TEST_CASE("constants default to first use") {
  const auto kb = parse_knowledge_base(
      "axioms:\n  r(b, a).\nhypotheses:\n  r(X, X).\n");
  CHECK(kb.signature.constants() == std::vector<std::string>{"b", "a"});
  REQUIRE(kb.hypotheses.size() == 2);
  CHECK(to_string(kb.hypotheses[0]) == "r(b,b)");
}

TEST_CASE("errors are located") {
  try {
    parse_knowledge_base("axioms:\n  act.\n  act -> .\n");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_knowledge_base("act.\n"), InputError);
  CHECK_THROWS_AS(parse_knowledge_base("axioms:\n  act\n"), InputError);
}

TEST_CASE("save and load round trip") {
  const auto kb = parse_knowledge_base(
      "constants: a b\n"
      "axioms:\n  holds(a).\n  act.\n"
      "hypotheses:\n  holds(X) -> legal(X).\n  -(p & q) | r.\n"
      "queries:\n  legal(b).\n");
  const auto path = std::filesystem::temp_directory_path() / "lri_cli_test_round.kb";
  save_knowledge_base(kb, path);
  const auto back = load_knowledge_base(path);
  CHECK(back.axioms == kb.axioms);
  CHECK(back.hypotheses == kb.hypotheses);
  CHECK(back.queries == kb.queries);
  CHECK(back.signature.constants() == kb.signature.constants());
  CHECK(format_knowledge_base(back) == format_knowledge_base(kb));
  std::filesystem::remove(path);
}

}  // TEST_SUITE

TEST_SUITE("cli") {

TEST_CASE("check") {
  const auto path = temp_file("permit.kb", kPermit);
  auto o = run_cli({"check", path.string()});
  CHECK(o.code == 0);
  auto j = json_of(o);
  CHECK(j["command"] == "check");
  CHECK(j["verdict"]["axioms_consistent"] == true);
  CHECK(j["verdict"]["domain_consistent"] == false);
  CHECK(j["verdict"]["maximal_positions"] == 3);
  for (const char* key : {"command", "input", "verdict", "positions", "justifications",
                          "contexts", "diagnostics"}) {
    CHECK(j.contains(key));
  }

  const auto empty = temp_file("empty.kb", "");
  j = json_of(run_cli({"check", empty.string()}));
  CHECK(j["verdict"]["domain_consistent"] == true);
  CHECK(j["verdict"]["maximal_positions"] == 1);

  const auto bad = temp_file("bad.kb", "axioms:\n  p.\n  -p.\n");
  o = run_cli({"check", bad.string()});
  CHECK(o.code == 3);
  CHECK(json_of(o)["diagnostics"]["error"] == "InconsistentAxioms");

  const auto broken = temp_file("broken.kb", "axioms:\n  p &.\n");
  CHECK(run_cli({"check", broken.string()}).code == 2);
  CHECK(run_cli({"check", "/nonexistent/file.kb"}).code == 2);
}

TEST_CASE("infer") {
  const auto path = temp_file("permit.kb", kPermit);
  auto j = json_of(run_cli({"infer", path.string(), "perm"}));
  CHECK(j["verdict"]["reasonable"] == true);
  CHECK(j["verdict"]["witness"]["hypotheses"] == Json::array({0, 1}));
  REQUIRE(j["justifications"].size() == 1);
  CHECK(j["justifications"][0]["formulas"] == Json::array({"act -> perm"}));

  j = json_of(run_cli({"infer", path.string(), "perm & -perm"}));
  CHECK(j["verdict"]["reasonable"] == false);
  CHECK(j["justifications"].empty());

  j = json_of(run_cli({"infer", path.string(), "act"}));
  CHECK(j["verdict"]["reasonable"] == true);
  REQUIRE(j["justifications"].size() == 1);
  CHECK(j["justifications"][0]["hypotheses"].empty());

  CHECK(run_cli({"infer", path.string(), "perm &"}).code == 2);
  const auto schema = temp_file("schema.kb", "constants: a b\nhypotheses:\n  r(a).\n");
  CHECK(run_cli({"infer", schema.string(), "r(X)"}).code == 5);
  CHECK(run_cli({"infer", schema.string(), "r(a)"}).code == 0);
}

TEST_CASE("positions, context and compat") {
  const auto path = temp_file("permit.kb", kPermit);
  auto j = json_of(run_cli({"positions", path.string()}));
  REQUIRE(j["positions"].size() == 3);
  CHECK(j["positions"][2]["hypotheses"] == Json::array({1, 2}));

  j = json_of(run_cli({"context", path.string()}));
  CHECK(j["contexts"].size() == 2);
  j = json_of(run_cli({"context", path.string(), "perm", "ex"}));
  CHECK(j["contexts"].size() == 1);

  auto o = run_cli({"compat", path.string(), "0", "1"});
  CHECK(o.code == 0);
  CHECK(json_of(o)["verdict"]["compatible"] == false);
  CHECK(json_of(run_cli({"compat", path.string(), "0"}))["verdict"]["compatible"] == true);
  CHECK(run_cli({"compat", path.string(), "0", "9"}).code == 6);
  CHECK(run_cli({"compat", path.string(), "x"}).code == 6);
}

TEST_CASE("variety, witness and partition") {
  const auto path = temp_file("permit.kb", kPermit);
  const auto dot = std::filesystem::temp_directory_path() / "lri_cli_test_overlap.dot";
  auto o = run_cli({"variety", path.string(), "--dot", dot.string()});
  REQUIRE(o.code == 0);
  auto j = json_of(o);
  CHECK(j["verdict"]["components"].size() == 3);
  CHECK(j["verdict"]["connected"] == true);
  CHECK(j["verdict"]["discrete"] == false);
  CHECK(j["verdict"]["compatible"] == false);
  for (const auto& d : j["verdict"]["depth"]) CHECK(d["ok"] == true);
  CHECK(std::filesystem::file_size(dot) > 0);

  j = json_of(run_cli({"witness", "3"}));
  CHECK(j["verdict"]["holds"] == true);
  CHECK(j["verdict"]["matrix"].size() == 3);
  CHECK(run_cli({"witness", "1"}).code != 0);

  const auto parts = temp_file("parts.kb", "hypotheses:\n  p -> q.\n  q -> r.\n  s -> t.\n");
  j = json_of(run_cli({"partition", parts.string()}));
  CHECK(j["verdict"]["partitions"].size() == 2);
}

TEST_CASE("output is deterministic and pretty output goes to stderr") {
  const auto path = temp_file("permit.kb", kPermit);
  const auto a = run_cli({"infer", path.string(), "-perm"});
  const auto b = run_cli({"infer", path.string(), "-perm"});
  CHECK(a.out == b.out);
  CHECK(a.err.empty());
  const auto p = run_cli({"infer", path.string(), "-perm", "--pretty"});
  CHECK(p.out == a.out);
  CHECK_FALSE(p.err.empty());
}

TEST_CASE("negated formulas are positional arguments") {
  const auto path = temp_file("permit.kb", kPermit);
  const auto plain = run_cli({"infer", path.string(), "-perm"});
  CHECK(plain.code == 0);
  CHECK(json_of(plain)["input"]["formula"] == "-perm");
  CHECK(run_cli({"infer", path.string(), "--", "-perm"}).out == plain.out);
  CHECK(run_cli({"--pretty", "infer", path.string(), "-perm"}).out == plain.out);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({"infer"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"--help"}).code == 0);
}

TEST_CASE("resource limit exit code") {
  std::string text = "hypotheses:\n";
  for (int p = 0; p < 6; ++p) {
    text += " ";
    for (int h = 0; h < 5; ++h) text += (h ? " | x" : " x") + std::to_string(p) + "_" + std::to_string(h);
    text += ".\n";
  }
  text += "axioms:\n";
  for (int h = 0; h < 5; ++h) {
    for (int p = 0; p < 6; ++p) {
      for (int q = p + 1; q < 6; ++q) {
        text += "  -(x" + std::to_string(p) + "_" + std::to_string(h) + " & x" +
                std::to_string(q) + "_" + std::to_string(h) + ").\n";
      }
    }
  }
  const auto path = temp_file("php.kb", text);
  CHECK(run_cli({"check", path.string(), "--max-decisions", "5"}).code == 4);
}

}  // TEST_SUITE

TEST_SUITE("repl") {

TEST_CASE("query commands match the batch surface") {
  std::ostringstream out;
  Repl repl(parse_knowledge_base(kPermit), Options{}, out);
  repl.execute("infer perm.");
  CHECK(out.str() == render(cmd_infer(permit_session(), "perm")));
  out.str("");
  repl.execute("positions");
  CHECK(out.str() == render(cmd_positions(permit_session())));
  out.str("");
  repl.execute("context perm. -perm.");
  CHECK(out.str() == render(cmd_context(permit_session(), {"perm. -perm."})));
  CHECK(out.str() == render(cmd_context(permit_session(), {"perm", "-perm"})));
}

TEST_CASE("assert-hyp then infer matches a fresh batch run") {
  std::ostringstream out;
  Repl repl(parse_knowledge_base("axioms:\n  act.\n"), Options{}, out);
  repl.execute("assert-hyp act -> perm.");
  CHECK(out.str() == "hypotheses:\n  [0] act -> perm\n");
  out.str("");
  repl.execute("infer perm.");
  const Session batch(parse_knowledge_base("axioms:\n  act.\nhypotheses:\n  act -> perm.\n"),
                      Options{});
  CHECK(out.str() == render(cmd_infer(batch, "perm")));
}

TEST_CASE("retracting a hypothesis") {
  std::ostringstream out;
  Repl repl(parse_knowledge_base(kPermit), Options{}, out);
  repl.execute("retract-hyp 2");
  CHECK(out.str() == "hypotheses:\n  [0] act -> perm\n  [1] ex\n");
  out.str("");
  repl.execute("infer -perm.");
  CHECK(Json::parse(out.str())["verdict"]["reasonable"] == false);
}

TEST_CASE("inconsistent axioms are refused") {
  std::ostringstream out;
  Repl repl(parse_knowledge_base(kPermit), Options{}, out);
  repl.execute("assert-ax -act.");
  CHECK(out.str() == "refused: axioms would become inconsistent; conflict: {act, -act}\n");
  CHECK(repl.kb().axioms.size() == 1);
}

TEST_CASE("user errors never end the session") {
  std::ostringstream out;
  Repl repl(parse_knowledge_base(kPermit), Options{}, out);
  CHECK(repl.execute("infer perm &"));
  CHECK(out.str().rfind("error:", 0) == 0);
  CHECK(repl.execute("retract-hyp 9"));
  CHECK(repl.execute("frobnicate"));
  CHECK(repl.execute("assert-hyp ex."));
  CHECK_FALSE(repl.execute("quit"));
}

TEST_CASE("run reads a script") {
  std::istringstream in("# comment\npositions\nquit\ninfer perm.\n");
  std::ostringstream out;
  Repl repl(parse_knowledge_base(kPermit), Options{}, out);
  repl.run(in);
  CHECK(out.str() == render(cmd_positions(permit_session())));
}

TEST_CASE("save from the session") {
  const auto path = std::filesystem::temp_directory_path() / "lri_cli_test_saved.kb";
  std::ostringstream out;
  Repl repl(parse_knowledge_base(kPermit), Options{}, out);
  repl.execute("assert-hyp q.");
  repl.execute("save " + path.string());
  const auto back = load_knowledge_base(path);
  CHECK(back.hypotheses == repl.kb().hypotheses);
  CHECK(back.axioms == repl.kb().axioms);
  std::filesystem::remove(path);
}

}  // TEST_SUITE
