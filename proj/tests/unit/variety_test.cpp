#include <doctest.h>

#include "lri/error.hpp"
#include "lri/variety.hpp"
#include "support/oracle.hpp"
#include "support/random_formulas.hpp"

using namespace lri;

namespace {

Formula parse(std::string_view text) { return parse_formula(text, Signature{}); }

std::vector<Formula> parse_all(std::initializer_list<const char*> texts) {
  std::vector<Formula> out;
  for (const char* t : texts) out.push_back(parse(t));
  return out;
}

DomainOfRules permit() {
  return new_domain(parse_all({"act"}), parse_all({"act -> perm", "ex", "ex -> -perm"}));
}

Variety of(std::initializer_list<std::initializer_list<const char*>> comps) {
  std::vector<Calculus> cs;
  for (auto c : comps) cs.emplace_back(parse_all(c));
  return Variety(std::move(cs));
}

}  // namespace

TEST_SUITE("variety") {

TEST_CASE("variety of a domain") {
  const auto single = variety_of(new_domain(parse_all({"a", "b"}), {}));
  REQUIRE(single.size() == 1);
  CHECK(std::vector<Formula>(single.component(0).axioms().begin(),
                             single.component(0).axioms().end()) == parse_all({"a", "b"}));

  const auto v = variety_of(permit());
  REQUIRE(v.size() == 3);
  auto axioms = [&](std::size_t i) {
    const auto a = v.component(i).axioms();
    return std::vector<Formula>(a.begin(), a.end());
  };
  CHECK(axioms(0) == parse_all({"act", "act -> perm", "ex"}));
  CHECK(axioms(1) == parse_all({"act", "act -> perm", "ex -> -perm"}));
  CHECK(axioms(2) == parse_all({"act", "ex", "ex -> -perm"}));

  const auto shared = variety_of(new_domain(parse_all({"q"}), parse_all({"p", "-p"})));
  REQUIRE(shared.size() == 2);
  CHECK(shared.component(0).has_axiom(parse("q")));
  CHECK(shared.component(1).has_axiom(parse("q")));
}

TEST_CASE("theorem membership") {
  CHECK(theorem_in(Calculus(parse_all({"p"})), parse("p")));
  CHECK(theorem_in(Calculus(parse_all({"act", "act -> perm"})), parse("perm")));
  CHECK_FALSE(theorem_in(Calculus(parse_all({"act"})), parse("perm")));
}

TEST_CASE("upper level") {
  const auto probe_pq = ProbeUniverse(parse_all({"p", "q"}));
  CHECK(upper_level(of({{"p"}}), probe_pq) == parse_all({"p"}));
  const auto v = variety_of(permit());
  const auto probe = ProbeUniverse(parse_all({"perm", "-perm", "act"}));
  CHECK(upper_level(v, probe) == parse_all({"perm", "-perm", "act"}));
  CHECK(upper_level(v, ProbeUniverse{}).empty());
}

TEST_CASE("discrete and connected") {
  CHECK(is_discrete(of({{"p", "q"}})));
  const auto v = variety_of(permit());
  CHECK_FALSE(is_discrete(v));
  CHECK(is_discrete(discretize(v)));
  CHECK_FALSE(is_connected(of({{"p"}, {"q"}})));
  CHECK(is_connected(v));
  CHECK(is_connected(compatibility_witness(3)));
  CHECK_FALSE(is_connected(discretize(v)));
}

TEST_CASE("discretize keeps axioms and attaches labels") {
  const auto v = of({{"p"}, {"q"}});
  const auto dv = discretize(v);
  REQUIRE(dv.size() == 2);
  CHECK(dv.component(0) == v.component(0));
  CHECK(dv.label(0) == "c0");
  CHECK(dv.label(1) == "c1");

  const auto pv = variety_of(permit());
  const auto probe = ProbeUniverse(parse_all({"perm", "-perm", "act"}));
  CHECK(upper_level(discretize(pv), probe) == upper_level(pv, probe));
}

TEST_CASE("compatibility") {
  const auto v = variety_of(permit());
  CHECK(is_compatible(v, IndexSet{0}));
  CHECK_FALSE(is_compatible(v));
  CHECK_FALSE(is_compatible(v, {0, 1}));
  CHECK_THROWS_AS(is_compatible(v, IndexSet{7}), InvalidIndex);
  CHECK_THROWS_AS(is_compatible(v, IndexSet{}), InvalidIndex);
  const auto w = compatibility_witness(4);
  CHECK(is_compatible(w, {0, 1, 2}));
  CHECK(is_compatible(w, {1, 2, 3}));
  CHECK_FALSE(is_compatible(w));
}

TEST_CASE("depth") {
  const auto disjoint = of({{"p"}, {"q"}});
  CHECK(check_variety_depth(disjoint, 2, ProbeUniverse(parse_all({"p", "q"}))).ok());

  const auto v = of({{"p", "q"}, {"p", "p -> q"}});
  const auto report = check_variety_depth(v, 2, ProbeUniverse(parse_all({"p", "q"})));
  REQUIRE_FALSE(report.ok());
  CHECK(report.failure->components == std::vector<std::size_t>{0, 1});
  CHECK(report.failure->formula == parse("q"));
  // q holds in both components but not under the shared axiom p alone.
  CHECK_FALSE(oracle::entails(parse_all({"p"}), parse("q")));
  CHECK(oracle::entails(parse_all({"p", "p -> q"}), parse("q")));

  CHECK_THROWS_AS(check_variety_depth(v, 3, ProbeUniverse{}), InvalidIndex);
  CHECK_THROWS_AS(check_variety_depth(v, 0, ProbeUniverse{}), InvalidIndex);

  const auto d = permit();
  const auto pv = variety_of(d);
  auto probe = parse_all({"act", "act -> perm", "ex", "ex -> -perm"});
  for (std::size_t k = 1; k <= pv.size(); ++k) {
    CHECK(check_variety_depth(pv, k, ProbeUniverse(probe)).ok());
  }
}

TEST_CASE("witness family") {
  const auto w2 = compatibility_witness(2);
  REQUIRE(w2.size() == 2);
  const auto c0 = w2.component(0).axioms();
  CHECK(std::vector<Formula>(c0.begin(), c0.end()) == parse_all({"q", "p1", "-(p1 & p2)"}));
  CHECK(oracle::satisfiable(parse_all({"q", "p1", "-(p1 & p2)"})));
  CHECK_FALSE(oracle::satisfiable(parse_all({"q", "p1", "p2", "-(p1 & p2)"})));

  const auto w3 = compatibility_witness(3);
  CHECK(is_compatible(w3, {1, 2}));
  CHECK_FALSE(is_compatible(w3));
  // Explicit model for components 1 and 2: p3 false.
  CHECK(oracle::satisfiable(parse_all({"q", "p2", "p3", "-((p1 & p2) & p3)", "-p1"})));

  for (std::size_t n = 2; n <= 5; ++n) {
    const auto report = verify_witness(compatibility_witness(n));
    CAPTURE(n);
    CHECK(report.holds());
    CHECK(report.classical);
    CHECK(report.connected);
    CHECK_FALSE(report.full_compatible);
  }
  CHECK_FALSE(verify_witness(of({{"p"}, {"-p"}})).holds());
}

TEST_CASE("partition graph") {
  auto g = partition_graph(parse_all({"p -> q", "q -> r", "s -> t"}));
  REQUIRE(g.nodes.size() == 2);
  CHECK(g.nodes[0].formulas == parse_all({"p -> q", "q -> r"}));
  CHECK(g.nodes[1].formulas == parse_all({"s -> t"}));
  CHECK(g.nodes[1].atoms == std::set<Atom>{{"s", {}}, {"t", {}}});
  CHECK(g.edges.empty());

  CHECK(partition_graph(std::vector<Formula>{}).nodes.empty());

  g = partition_graph(std::vector<std::vector<Formula>>{parse_all({"p -> q"}), parse_all({"q -> r"})});
  REQUIRE(g.nodes.size() == 2);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].from == 0);
  CHECK(g.edges[0].to == 1);
  CHECK(g.edges[0].shared == std::set<Atom>{{"q", {}}});

  const std::string dot = to_dot(g);
  CHECK(dot.rfind("graph", 0) == 0);
  CHECK(dot.find("n0 -- n1") != std::string::npos);
}

TEST_CASE("renaming") {
  const Calculus c(parse_all({"act -> perm"}));
  CHECK(apply_renaming(identity_renaming(c.axioms()), c) == c);
  const RenamingMap m({{"act", "act"}, {"perm", "vergunning"}}, {});
  CHECK(apply_renaming(m, c) == Calculus(parse_all({"act -> vergunning"})));
  CHECK_THROWS_AS(apply_renaming(RenamingMap({{"act", "act"}}, {}), c), IncompleteRenaming);
  CHECK_THROWS_AS(RenamingMap({{"a", "x"}, {"b", "x"}}, {}), InvalidRenaming);
  CHECK(m.inverse().apply(m.apply(parse("act -> perm"))) == parse("act -> perm"));

  const RenamingMap consts({{"r", "s"}}, {{"a", "b"}, {"b", "a"}});
  Signature sig;
  CHECK(consts.apply(parse_formula("r(a, b)", sig)) == parse_formula("s(b, a)", sig));
}

TEST_CASE("renaming commutes with theorem membership") {
  const auto v = variety_of(permit());
  gen::FormulaGen g(17, 3);
  const std::vector<std::string> names{"act", "perm", "ex"};
  for (int round = 0; round < 20; ++round) {
    std::vector<std::string> targets{"x", "y", "z"};
    std::shuffle(targets.begin(), targets.end(), g.rng());
    std::map<std::string, std::string> preds;
    for (std::size_t i = 0; i < names.size(); ++i) preds[names[i]] = targets[i];
    const RenamingMap m(preds, {});
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Calculus renamed = apply_renaming(m, v.component(i));
      for (const char* q : {"perm", "-perm", "act & ex", "ex -> perm", "perm | ex"}) {
        const Formula phi = parse(q);
        CHECK(theorem_in(renamed, m.apply(phi)) == theorem_in(v.component(i), phi));
      }
    }
  }
}

TEST_CASE("renamed images in a variety") {
  const RenamingMap m({{"perm", "vergunning"}, {"act", "act"}}, {});
  const Variety v({Calculus(parse_all({"act", "act -> perm"})), Calculus(parse_all({"act"}))},
                  {m, std::nullopt});
  CHECK(v.image(0) == Calculus(parse_all({"act", "act -> vergunning"})));
  CHECK(v.generators() == parse_all({"act", "act -> vergunning"}));
  CHECK(upper_level(v, ProbeUniverse(parse_all({"vergunning", "perm"}))) ==
        parse_all({"vergunning"}));
}

TEST_CASE("overlap graph") {
  const auto v = variety_of(permit());
  const auto edges = overlap_edges(v);
  REQUIRE(edges.size() == 3);
  CHECK(edges[0].from == 0);
  CHECK(edges[0].to == 1);
  CHECK(edges[0].shared == 2);
  CHECK(overlap_edges(discretize(v)).empty());
  CHECK(overlap_dot(v).find("label=\"2\"") != std::string::npos);
}

}  // TEST_SUITE
