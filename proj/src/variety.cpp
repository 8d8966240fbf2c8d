#include "lri/variety.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lri/error.hpp"

namespace lri {

namespace {

std::vector<Formula> dedupe(std::vector<Formula> fs) {
  std::set<Formula> seen;
  std::vector<Formula> out;
  out.reserve(fs.size());
  for (auto& f : fs) {
    if (seen.insert(f).second) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

Calculus::Calculus(std::vector<Formula> axioms, Ruleset ruleset)
    : axioms_(dedupe(std::move(axioms))), ruleset_(ruleset) {
  for (const auto& a : axioms_) {
    if (!a.is_ground()) throw NotGround("axiom " + to_string(a) + " is not ground");
  }
}

bool Calculus::has_axiom(const Formula& f) const {
  return std::find(axioms_.begin(), axioms_.end(), f) != axioms_.end();
}

namespace {

void check_injective(const std::map<std::string, std::string>& m,
                     const char* what) {
  std::set<std::string> images;
  for (const auto& [from, to] : m) {
    if (to.empty()) throw InvalidRenaming(std::string(what) + " renamed to empty name");
    if (!images.insert(to).second) {
      throw InvalidRenaming(std::string(what) + " renaming is not injective: '" +
                            to + "' has two preimages");
    }
  }
}

void collect_symbols(const Formula& f, std::set<std::string>& preds,
                     std::set<std::string>& consts) {
  if (f.is_atom()) {
    preds.insert(f.predicate());
    for (const auto& t : f.terms()) consts.insert(t.name);
    return;
  }
  collect_symbols(f.lhs(), preds, consts);
  if (f.connective() != Connective::Not) collect_symbols(f.rhs(), preds, consts);
}

}  // namespace

RenamingMap::RenamingMap(std::map<std::string, std::string> predicates,
                         std::map<std::string, std::string> constants)
    : predicates_(std::move(predicates)), constants_(std::move(constants)) {
  check_injective(predicates_, "predicate");
  check_injective(constants_, "constant");
}

bool RenamingMap::covers(const Formula& f) const {
  std::set<std::string> preds, consts;
  collect_symbols(f, preds, consts);
  return std::all_of(preds.begin(), preds.end(),
                     [&](const auto& p) { return predicates_.count(p) != 0; }) &&
         std::all_of(consts.begin(), consts.end(),
                     [&](const auto& c) { return constants_.count(c) != 0; });
}

Formula RenamingMap::apply(const Formula& f) const {
  switch (f.connective()) {
    case Connective::Atom: {
      auto p = predicates_.find(f.predicate());
      if (p == predicates_.end()) {
        throw IncompleteRenaming("no image for predicate '" + f.predicate() + "'");
      }
      std::vector<Term> terms;
      for (const auto& t : f.terms()) {
        if (t.variable) {
          terms.push_back(t);
          continue;
        }
        auto c = constants_.find(t.name);
        if (c == constants_.end()) {
          throw IncompleteRenaming("no image for constant '" + t.name + "'");
        }
        terms.push_back(Term{c->second, false});
      }
      return Formula::atom(p->second, std::move(terms));
    }
    case Connective::Not: return neg(apply(f.lhs()));
    default:
      return Formula::binary(f.connective(), apply(f.lhs()), apply(f.rhs()));
  }
}

RenamingMap RenamingMap::inverse() const {
  std::map<std::string, std::string> preds, consts;
  for (const auto& [from, to] : predicates_) preds.emplace(to, from);
  for (const auto& [from, to] : constants_) consts.emplace(to, from);
  return RenamingMap(std::move(preds), std::move(consts));
}

RenamingMap identity_renaming(std::span<const Formula> fs) {
  std::set<std::string> preds, consts;
  for (const auto& f : fs) collect_symbols(f, preds, consts);
  std::map<std::string, std::string> p, c;
  for (const auto& s : preds) p.emplace(s, s);
  for (const auto& s : consts) c.emplace(s, s);
  return RenamingMap(std::move(p), std::move(c));
}

Variety::Variety(std::vector<Calculus> components,
                 std::vector<std::optional<RenamingMap>> maps,
                 std::vector<std::optional<std::string>> labels)
    : components_(std::move(components)),
      maps_(std::move(maps)),
      labels_(std::move(labels)) {
  if (components_.empty()) {
    throw std::invalid_argument("a variety needs at least one component");
  }
  if (maps_.empty()) maps_.resize(components_.size());
  if (labels_.empty()) labels_.resize(components_.size());
  if (maps_.size() != components_.size() ||
      labels_.size() != components_.size()) {
    throw std::invalid_argument("variety: one map and label slot per component");
  }
}

const Calculus& Variety::component(std::size_t i) const {
  if (i >= size()) throw InvalidIndex("component " + std::to_string(i) + " out of range");
  return components_[i];
}

const std::optional<RenamingMap>& Variety::map(std::size_t i) const {
  if (i >= size()) throw InvalidIndex("component " + std::to_string(i) + " out of range");
  return maps_[i];
}

const std::optional<std::string>& Variety::label(std::size_t i) const {
  if (i >= size()) throw InvalidIndex("component " + std::to_string(i) + " out of range");
  return labels_[i];
}

Calculus Variety::image(std::size_t i) const {
  const auto& m = map(i);
  if (!m) return component(i);
  return apply_renaming(*m, component(i));
}

std::vector<Formula> Variety::generators() const {
  std::vector<Formula> all;
  for (std::size_t i = 0; i < size(); ++i) {
    auto img = image(i);
    all.insert(all.end(), img.axioms().begin(), img.axioms().end());
  }
  return dedupe(std::move(all));
}

ProbeUniverse::ProbeUniverse(std::vector<Formula> formulas)
    : formulas_(dedupe(std::move(formulas))) {}

ProbeUniverse ProbeUniverse::covering(const Variety& v,
                                      std::span<const Formula> extra) {
  std::vector<Formula> fs = v.generators();
  fs.insert(fs.end(), extra.begin(), extra.end());
  return ProbeUniverse(std::move(fs));
}

bool ProbeUniverse::covers(const Variety& v) const {
  const auto gens = v.generators();
  return std::all_of(gens.begin(), gens.end(), [&](const Formula& f) {
                       return std::find(formulas_.begin(), formulas_.end(), f) !=
                              formulas_.end();
                     });
}

Variety variety_of(const DomainOfRules& d) {
  std::vector<Calculus> components;
  for (const auto& s : d.maximal_sets()) {
    components.emplace_back(d.formulas(s), Ruleset::Classical);
  }
  return Variety(std::move(components));
}

bool theorem_in(const Calculus& c, const Formula& phi, const SolverConfig& cfg) {
  return entails(c.axioms(), phi, cfg);
}

std::vector<Formula> upper_level(const Variety& v, const ProbeUniverse& probe,
                                 const SolverConfig& cfg) {
  std::vector<Calculus> images;
  for (std::size_t i = 0; i < v.size(); ++i) images.push_back(v.image(i));
  std::vector<Formula> out;
  for (const auto& phi : probe.formulas()) {
    for (const auto& c : images) {
      if (theorem_in(c, phi, cfg)) {
        out.push_back(phi);
        break;
      }
    }
  }
  return out;
}

namespace {

std::vector<Formula> intersect(std::span<const Formula> a,
                               std::span<const Formula> b) {
  std::vector<Formula> out;
  for (const auto& f : a) {
    if (std::find(b.begin(), b.end(), f) != b.end()) out.push_back(f);
  }
  return out;
}

// Axiom intersection of two components with labels taken into account.
std::vector<Formula> shared_axioms(const Variety& v, std::size_t i,
                                   std::size_t j) {
  if (v.label(i) != v.label(j)) return {};
  const auto a = v.image(i);
  const auto b = v.image(j);
  return intersect(a.axioms(), b.axioms());
}

}  // namespace

bool is_discrete(const Variety& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (!shared_axioms(v, i, j).empty()) return false;
    }
  }
  return true;
}

bool is_connected(const Variety& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (shared_axioms(v, i, j).empty()) return false;
    }
  }
  return true;
}

bool is_compatible(const Variety& v, const IndexSet& subset,
                   const SolverConfig& cfg) {
  if (subset.empty()) throw InvalidIndex("compatibility needs at least one component");
  std::vector<Formula> all;
  for (std::size_t i : subset) {
    const auto img = v.image(i);
    all.insert(all.end(), img.axioms().begin(), img.axioms().end());
  }
  return is_consistent(all, cfg);
}

bool is_compatible(const Variety& v, const SolverConfig& cfg) {
  return is_compatible(v, IndexSet::range(v.size()), cfg);
}

Variety discretize(const Variety& v) {
  std::vector<Calculus> components;
  std::vector<std::optional<RenamingMap>> maps;
  std::vector<std::optional<std::string>> labels;
  for (std::size_t i = 0; i < v.size(); ++i) {
    components.push_back(v.component(i));
    maps.push_back(v.map(i));
    labels.emplace_back("c" + std::to_string(i));
  }
  return Variety(std::move(components), std::move(maps), std::move(labels));
}

DepthReport check_variety_depth(const Variety& v, std::size_t k,
                                const ProbeUniverse& probe,
                                const SolverConfig& cfg) {
  if (k == 0 || k > v.size()) {
    throw InvalidIndex("depth " + std::to_string(k) + " outside 1.." +
                       std::to_string(v.size()));
  }
  std::vector<Calculus> images;
  std::vector<std::vector<Formula>> theorems;
  for (std::size_t i = 0; i < v.size(); ++i) {
    images.push_back(v.image(i));
    std::vector<Formula> t;
    for (const auto& phi : probe.formulas()) {
      if (theorem_in(images.back(), phi, cfg)) t.push_back(phi);
    }
    theorems.push_back(std::move(t));
  }

  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  const std::size_t n = v.size();
  while (true) {
    // Components with different labels share nothing, theorems included.
    const bool same_label = std::all_of(pick.begin(), pick.end(), [&](std::size_t i) {
      return v.label(i) == v.label(pick.front());
    });
    if (same_label) {
      std::vector<Formula> axioms(images[pick[0]].axioms().begin(),
                                  images[pick[0]].axioms().end());
      std::vector<Formula> common = theorems[pick[0]];
      for (std::size_t j = 1; j < k; ++j) {
        axioms = intersect(axioms, images[pick[j]].axioms());
        common = intersect(common, theorems[pick[j]]);
      }
      if (!axioms.empty() || !common.empty()) {
        for (const auto& phi : common) {
          if (!entails(axioms, phi, cfg)) {
            return DepthReport{DepthFailure{pick, phi}};
          }
        }
      }
    }
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
  return DepthReport{};
}

Variety compatibility_witness(std::size_t n) {
  if (n < 2) throw std::invalid_argument("compatibility witness needs n >= 2");
  Formula all = prop("p1");
  for (std::size_t i = 2; i <= n; ++i) all = conj(all, prop("p" + std::to_string(i)));
  const Formula blocker = neg(all);
  std::vector<Calculus> components;
  for (std::size_t i = 1; i <= n; ++i) {
    components.emplace_back(
        std::vector<Formula>{prop("q"), prop("p" + std::to_string(i)), blocker},
        Ruleset::Classical);
  }
  return Variety(std::move(components));
}

bool WitnessReport::holds() const {
  auto all_true = [](const std::vector<bool>& v) {
    return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
  };
  return classical && connected && all_true(component_consistent) &&
         all_true(leave_one_out) && !full_compatible;
}

WitnessReport verify_witness(const Variety& v, const SolverConfig& cfg) {
  WitnessReport r;
  const std::size_t n = v.size();
  r.classical = true;
  for (std::size_t i = 0; i < n; ++i) {
    r.classical = r.classical && v.component(i).ruleset() == Ruleset::Classical;
  }
  r.connected = is_connected(v);
  for (std::size_t i = 0; i < n; ++i) {
    r.component_consistent.push_back(is_compatible(v, IndexSet{i}, cfg));
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) rest.push_back(j);
    }
    r.leave_one_out.push_back(rest.empty() ? true
                                           : is_compatible(v, IndexSet(rest), cfg));
  }
  r.full_compatible = is_compatible(v, cfg);
  r.matrix.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const bool c = is_compatible(v, IndexSet{i, j}, cfg);
      r.matrix[i][j] = c;
      r.matrix[j][i] = c;
    }
  }
  return r;
}

PartitionGraph partition_graph(std::span<const Formula> fs) {
  const std::size_t n = fs.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::map<Atom, std::size_t> owner;
  std::vector<std::set<Atom>> atoms(n);
  for (std::size_t i = 0; i < n; ++i) {
    atoms[i] = atoms_of(fs[i]);
    for (const auto& a : atoms[i]) {
      auto [it, inserted] = owner.emplace(a, i);
      if (!inserted) {
        const std::size_t x = find(i), y = find(it->second);
        if (x != y) parent[std::max(x, y)] = std::min(x, y);
      }
    }
  }
  PartitionGraph g;
  std::map<std::size_t, std::size_t> node_of_root;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    auto [it, inserted] = node_of_root.emplace(root, g.nodes.size());
    if (inserted) g.nodes.emplace_back();
    auto& node = g.nodes[it->second];
    node.formulas.push_back(fs[i]);
    node.atoms.insert(atoms[i].begin(), atoms[i].end());
  }
  return g;
}

PartitionGraph partition_graph(const std::vector<std::vector<Formula>>& groups) {
  PartitionGraph g;
  for (const auto& group : groups) {
    PartitionNode node;
    node.formulas = group;
    node.atoms = atoms_of(std::span<const Formula>(group));
    g.nodes.push_back(std::move(node));
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < g.nodes.size(); ++j) {
      std::set<Atom> shared;
      std::set_intersection(g.nodes[i].atoms.begin(), g.nodes[i].atoms.end(),
                            g.nodes[j].atoms.begin(), g.nodes[j].atoms.end(),
                            std::inserter(shared, shared.end()));
      if (!shared.empty()) g.edges.push_back(PartitionEdge{i, j, std::move(shared)});
    }
  }
  return g;
}

Calculus apply_renaming(const RenamingMap& m, const Calculus& c) {
  std::vector<Formula> renamed;
  renamed.reserve(c.axioms().size());
  for (const auto& a : c.axioms()) renamed.push_back(m.apply(a));
  return Calculus(std::move(renamed), c.ruleset());
}

std::vector<OverlapEdge> overlap_edges(const Variety& v) {
  std::vector<OverlapEdge> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      const auto shared = shared_axioms(v, i, j);
      if (!shared.empty()) out.push_back(OverlapEdge{i, j, shared.size()});
    }
  }
  return out;
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_dot(const PartitionGraph& g) {
  std::ostringstream os;
  os << "graph partitions {\n";
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    std::string label = "P" + std::to_string(i) + ":";
    for (const auto& a : g.nodes[i].atoms) label += " " + to_string(a);
    os << "  n" << i << " [label=" << quote(label) << "];\n";
  }
  for (const auto& e : g.edges) {
    std::string label;
    for (const auto& a : e.shared) {
      if (!label.empty()) label += ", ";
      label += to_string(a);
    }
    os << "  n" << e.from << " -- n" << e.to << " [label=" << quote(label) << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string overlap_dot(const Variety& v) {
  std::ostringstream os;
  os << "graph variety {\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::string label = "C" + std::to_string(i) + " (" +
                        std::to_string(v.component(i).axioms().size()) + " axioms)";
    os << "  c" << i << " [label=" << quote(label) << "];\n";
  }
  for (const auto& e : overlap_edges(v)) {
    os << "  c" << e.from << " -- c" << e.to << " [label=\"" << e.shared << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace lri
