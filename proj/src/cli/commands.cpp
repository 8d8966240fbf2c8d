#include "lri/cli/commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iostream>
#include <set>

#include <unistd.h>

#include "lri/cli/repl.hpp"
#include "lri/variety.hpp"

namespace lri::cli {

namespace {

SolverConfig solver_config(const Options& options) {
  SolverConfig cfg;
  cfg.max_decisions = options.max_decisions;
  cfg.registry = std::make_shared<AtomRegistry>();
  return cfg;
}

Formula single_formula(const Session& s, const std::string& text) {
  auto instances = parse_ground(s.kb(), text);
  if (instances.size() != 1) {
    throw MultipleInstances("'" + text + "' stands for " +
                            std::to_string(instances.size()) +
                            " formulas; give a single ground formula");
  }
  return instances.front();
}

void write_dot(const Options& options, const std::string& dot) {
  if (!options.dot_path) return;
  std::ofstream out(*options.dot_path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + *options.dot_path);
  out << dot;
}

// Formulas such as "-perm" look like short options to the argument parser.
// Known options stay in front; every other token after the subcommand goes
// behind a "--" so it is read positionally.
std::vector<std::string> normalize_args(int argc, const char* const* argv) {
  static const std::set<std::string> flags{"--pretty", "--debug", "-h", "--help"};
  static const std::set<std::string> valued{"--dot", "--max-decisions", "--probe"};
  std::vector<std::string> front;
  std::vector<std::string> positional;
  bool have_subcommand = false;
  bool rest_positional = false;
  for (int i = 0; i < argc; ++i) {
    const std::string arg = argv[i];
    if (i == 0) {
      front.push_back(arg);
    } else if (rest_positional) {
      positional.push_back(arg);
    } else if (arg == "--") {
      rest_positional = true;
    } else if (flags.contains(arg) || valued.contains(arg.substr(0, arg.find('=')))) {
      front.push_back(arg);
      if (valued.contains(arg) && i + 1 < argc) front.emplace_back(argv[++i]);
    } else if (!have_subcommand) {
      front.push_back(arg);
      have_subcommand = true;
    } else {
      positional.push_back(arg);
    }
  }
  if (!positional.empty()) {
    front.emplace_back("--");
    front.insert(front.end(), positional.begin(), positional.end());
  }
  return front;
}

std::size_t parse_index(const std::string& text) {
  std::size_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw InvalidIndex("'" + text + "' is not a component index");
  }
  return value;
}

}  // namespace

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const InconsistentAxioms*>(&e)) return 3;
  if (dynamic_cast<const ResourceLimit*>(&e)) return 4;
  if (dynamic_cast<const MultipleInstances*>(&e)) return 5;
  if (dynamic_cast<const InvalidIndex*>(&e)) return 6;
  if (dynamic_cast<const InputError*>(&e) || dynamic_cast<const SyntaxError*>(&e) ||
      dynamic_cast<const UnknownSymbol*>(&e) ||
      dynamic_cast<const ArityMismatch*>(&e) ||
      dynamic_cast<const EmptyDomain*>(&e) ||
      dynamic_cast<const NotGround*>(&e) ||
      dynamic_cast<const DuplicateHypothesis*>(&e) ||
      dynamic_cast<const AxiomHypothesisOverlap*>(&e)) {
    return 2;
  }
  return 1;
}

std::string error_kind(const std::exception& e) {
  switch (exit_code_for(e)) {
    case 2:
      if (dynamic_cast<const DuplicateHypothesis*>(&e)) return "DuplicateHypothesis";
      if (dynamic_cast<const AxiomHypothesisOverlap*>(&e)) return "AxiomHypothesisOverlap";
      return "ParseError";
    case 3: return "InconsistentAxioms";
    case 4: return "ResourceLimit";
    case 5: return "MultipleInstances";
    case 6: return "InvalidIndex";
    default: break;
  }
  if (dynamic_cast<const QueryLimit*>(&e)) return "QueryLimit";
  return "Error";
}

Json error_report(const std::string& command, const std::exception& e) {
  Json r = make_report(command, Json::object());
  r["verdict"] = "error";
  r["diagnostics"]["error"] = error_kind(e);
  r["diagnostics"]["message"] = e.what();
  r["diagnostics"]["exit_code"] = exit_code_for(e);
  return r;
}

Session::Session(KnowledgeBase kb, const Options& options)
    : kb_(std::move(kb)),
      options_(options),
      domain_(kb_.domain(solver_config(options))) {}

Json cmd_check(const Session& s) {
  const auto& d = s.domain();
  Json r = make_report("check", Json::object());
  r["verdict"] = {
      {"axioms_consistent", true},
      {"domain_consistent", d.consistent(d.all_hypotheses())},
      {"maximal_positions", d.maximal_sets().size()},
      {"axioms", d.axioms().size()},
      {"hypotheses", d.hypothesis_count()},
  };
  return r;
}

Json cmd_positions(const Session& s) {
  Json r = make_report("positions", Json::object());
  for (const auto& p : maximal_positions(s.domain())) {
    r["positions"].push_back(position_json(p));
  }
  r["verdict"] = {{"count", r["positions"].size()}};
  return r;
}

Json cmd_infer(const Session& s, const std::string& text) {
  const Formula phi = single_formula(s, text);
  Json r = make_report("infer", {{"formula", to_string(phi)}});
  const auto witness = reasonably_infers(s.domain(), phi);
  r["verdict"] = {{"reasonable", witness.has_value()},
                  {"witness", witness ? position_json(*witness) : Json(nullptr)}};
  if (witness) r["positions"].push_back(position_json(*witness));
  for (const auto& j : justifications(s.domain(), phi)) {
    r["justifications"].push_back(justification_json(j));
  }
  return r;
}

Json cmd_justify(const Session& s, const std::string& text) {
  const Formula phi = single_formula(s, text);
  Json r = make_report("justify", {{"formula", to_string(phi)}});
  for (const auto& j : justifications(s.domain(), phi)) {
    r["justifications"].push_back(justification_json(j));
  }
  r["verdict"] = {{"reasonable", !r["justifications"].empty()},
                  {"count", r["justifications"].size()}};
  return r;
}

Json cmd_context(const Session& s, const std::vector<std::string>& texts) {
  std::vector<Formula> queries;
  if (texts.empty()) {
    queries = s.kb().queries;
  } else {
    for (const auto& t : texts) {
      for (auto& f : parse_ground(s.kb(), t)) queries.push_back(std::move(f));
    }
  }
  Json r = make_report("context", {{"queries", formula_list(queries)}});
  for (const auto& c : maximal_consistent_contexts(s.domain(), queries)) {
    r["contexts"].push_back(context_json(c));
  }
  r["verdict"] = {{"count", r["contexts"].size()}};
  return r;
}

Json cmd_variety(const Session& s) {
  const auto& d = s.domain();
  const auto& cfg = d.solver();
  const Variety v = variety_of(d);

  std::vector<Formula> probe_formulas;
  if (s.options().probe_path) {
    probe_formulas = load_formula_file(s.kb(), *s.options().probe_path);
  } else {
    probe_formulas.assign(d.axioms().begin(), d.axioms().end());
    probe_formulas.insert(probe_formulas.end(), d.hypotheses().begin(),
                          d.hypotheses().end());
    probe_formulas.insert(probe_formulas.end(), s.kb().queries.begin(),
                          s.kb().queries.end());
  }
  const ProbeUniverse probe(std::move(probe_formulas));

  Json input = Json::object();
  input["probe"] = formula_list(probe.formulas());
  Json r = make_report("variety", std::move(input));

  const auto positions = maximal_positions(d);
  Json components = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    r["positions"].push_back(position_json(positions[i]));
    components.push_back({{"index", i},
                          {"hypotheses", indices(positions[i].chosen())},
                          {"axioms", formula_list(v.component(i).axioms())}});
  }
  Json depth = Json::array();
  for (std::size_t k = 1; k <= v.size(); ++k) {
    const auto report = check_variety_depth(v, k, probe, cfg);
    Json entry = {{"k", k}, {"ok", report.ok()}};
    if (!report.ok()) {
      entry["counterexample"] = {{"components", report.failure->components},
                                 {"formula", to_string(report.failure->formula)}};
    }
    depth.push_back(std::move(entry));
  }
  Json overlaps = Json::array();
  for (const auto& e : overlap_edges(v)) {
    overlaps.push_back({{"from", e.from}, {"to", e.to}, {"shared", e.shared}});
  }
  r["verdict"] = {
      {"components", std::move(components)},
      {"discrete", is_discrete(v)},
      {"connected", is_connected(v)},
      {"compatible", is_compatible(v, cfg)},
      {"upper_level", formula_list(upper_level(v, probe, cfg))},
      {"depth", std::move(depth)},
      {"overlaps", std::move(overlaps)},
  };
  write_dot(s.options(), overlap_dot(v));
  return r;
}

Json cmd_compat(const Session& s, const std::vector<std::string>& texts) {
  std::vector<std::size_t> picked;
  for (const auto& t : texts) {
    // Accept "0,1" as well as "0 1".
    std::size_t start = 0;
    while (start <= t.size()) {
      const std::size_t comma = t.find(',', start);
      const std::string piece =
          t.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      picked.push_back(parse_index(piece));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  }
  if (picked.empty()) throw InvalidIndex("compat needs at least one component index");
  const Variety v = variety_of(s.domain());
  for (std::size_t i : picked) {
    if (i >= v.size()) {
      throw InvalidIndex("component " + std::to_string(i) + " out of range (" +
                         std::to_string(v.size()) + " components)");
    }
  }
  const IndexSet subset(picked);
  Json r = make_report("compat", {{"components", indices(subset)}});
  const auto positions = maximal_positions(s.domain());
  for (std::size_t i : subset) r["positions"].push_back(position_json(positions[i]));
  r["verdict"] = {{"compatible", is_compatible(v, subset, s.domain().solver())}};
  return r;
}

Json cmd_witness(std::size_t n, const Options& options) {
  const SolverConfig cfg = solver_config(options);
  const Variety v = compatibility_witness(n);
  const WitnessReport w = verify_witness(v, cfg);
  Json components = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i) {
    components.push_back(formula_list(v.component(i).axioms()));
  }
  Json r = make_report("witness", {{"n", n}});
  r["verdict"] = {
      {"components", std::move(components)},
      {"classical", w.classical},
      {"connected", w.connected},
      {"component_consistent", w.component_consistent},
      {"leave_one_out_compatible", w.leave_one_out},
      {"full_compatible", w.full_compatible},
      {"matrix", w.matrix},
      {"holds", w.holds()},
  };
  write_dot(options, overlap_dot(v));
  return r;
}

Json cmd_partition(const Session& s) {
  std::vector<Formula> all(s.domain().axioms().begin(), s.domain().axioms().end());
  all.insert(all.end(), s.domain().hypotheses().begin(), s.domain().hypotheses().end());
  const PartitionGraph g = partition_graph(all);
  Json partitions = Json::array();
  for (const auto& node : g.nodes) {
    Json atoms = Json::array();
    for (const auto& a : node.atoms) atoms.push_back(to_string(a));
    partitions.push_back({{"formulas", formula_list(node.formulas)},
                          {"atoms", std::move(atoms)}});
  }
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    Json shared = Json::array();
    for (const auto& a : e.shared) shared.push_back(to_string(a));
    edges.push_back({{"from", e.from}, {"to", e.to}, {"shared", std::move(shared)}});
  }
  Json r = make_report("partition", Json::object());
  r["verdict"] = {{"count", g.nodes.size()},
                  {"partitions", std::move(partitions)},
                  {"edges", std::move(edges)}};
  write_dot(s.options(), to_dot(g));
  return r;
}

int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Reasoning over inconsistent rule bases with consistent positions"};
  app.require_subcommand(1);
  Options options;
  app.add_flag("--pretty", options.pretty, "Also write a readable rendering to stderr");
  app.add_flag("--debug", options.debug, "Dump the DIMACS clause set of A and H to stderr");
  app.add_option("--dot", options.dot_path, "Write a DOT graph to this path");
  app.add_option("--max-decisions", options.max_decisions,
                 "Branching-decision budget per satisfiability call");
  app.add_option("--probe", options.probe_path, "Probe formulas for `variety`");

  std::string file;
  std::string formula;
  std::vector<std::string> list;
  std::size_t witness_n = 0;

  auto with_file = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("file", file, "Knowledge-base file")->required();
    return sub;
  };
  auto* check = with_file("check", "Consistency summary");
  auto* positions = with_file("positions", "Maximal consistent positions");
  auto* infer = with_file("infer", "Reasonable inference with witness and justifications");
  infer->add_option("formula", formula)->required();
  auto* justify = with_file("justify", "All minimal justifications");
  justify->add_option("formula", formula)->required();
  auto* context = with_file("context", "Maximal consistent contexts");
  context->add_option("queries", list, "Query formulas (default: the file's queries)");
  auto* variety = with_file("variety", "Variety of logically closed positions");
  auto* compat = with_file("compat", "Compatibility of components of the variety");
  compat->add_option("indices", list, "Component indices")->required();
  auto* partition = with_file("partition", "Atom-sharing partition of the rules");
  auto* witness = app.add_subcommand("witness", "Connected variety whose n-1 subsets are compatible but the whole is not");
  witness->fallthrough();
  witness->add_option("n", witness_n)->required()->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  auto* repl = app.add_subcommand("repl", "Interactive session");
  repl->fallthrough();
  repl->add_option("file", file, "Knowledge-base file (default: empty)");

  const std::vector<std::string> args = normalize_args(argc, argv);
  std::vector<const char*> normalized;
  for (const auto& a : args) normalized.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(normalized.size()), normalized.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string command = chosen->get_name();
  try {
    if (chosen == repl) {
      KnowledgeBase kb = file.empty() ? KnowledgeBase{} : load_knowledge_base(file);
      Repl session(std::move(kb), options, out);
      session.run(in, &in == &std::cin && isatty(STDIN_FILENO) != 0);
      return 0;
    }
    Json report;
    if (chosen == witness) {
      report = cmd_witness(witness_n, options);
    } else {
      const Session s(load_knowledge_base(file), options);
      if (options.debug) {
        std::vector<Formula> all(s.domain().axioms().begin(), s.domain().axioms().end());
        all.insert(all.end(), s.domain().hypotheses().begin(),
                   s.domain().hypotheses().end());
        err << to_dimacs(clausify(all));
      }
      if (chosen == check) report = cmd_check(s);
      else if (chosen == positions) report = cmd_positions(s);
      else if (chosen == infer) report = cmd_infer(s, formula);
      else if (chosen == justify) report = cmd_justify(s, formula);
      else if (chosen == context) report = cmd_context(s, list);
      else if (chosen == variety) report = cmd_variety(s);
      else if (chosen == compat) report = cmd_compat(s, list);
      else if (chosen == partition) report = cmd_partition(s);
    }
    out << render(report);
    if (options.pretty) err << render_human(report);
    return 0;
  } catch (const std::exception& e) {
    out << render(error_report(command, e));
    err << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}

}  // namespace lri::cli
