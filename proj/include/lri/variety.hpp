#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "lri/domain.hpp"
#include "lri/formula.hpp"
#include "lri/sat.hpp"

namespace lri {

enum class Ruleset { Classical };

/// Axioms plus a deduction ruleset. Theorems are never materialized;
/// membership is decided on demand.
class Calculus {
 public:
  /// Repeated axioms collapse to their first occurrence.
  explicit Calculus(std::vector<Formula> axioms,
                    Ruleset ruleset = Ruleset::Classical);

  std::span<const Formula> axioms() const noexcept { return axioms_; }
  Ruleset ruleset() const noexcept { return ruleset_; }
  bool has_axiom(const Formula& f) const;

  friend bool operator==(const Calculus&, const Calculus&) = default;

 private:
  std::vector<Formula> axioms_;
  Ruleset ruleset_;
};

/// Bijective renaming of predicate and constant names. Arity is preserved
/// because only names change.
class RenamingMap {
 public:
  RenamingMap() = default;
  /// Throws InvalidRenaming if either map is not injective.
  RenamingMap(std::map<std::string, std::string> predicates,
              std::map<std::string, std::string> constants);

  const std::map<std::string, std::string>& predicates() const noexcept {
    return predicates_;
  }
  const std::map<std::string, std::string>& constants() const noexcept {
    return constants_;
  }

  /// Whether every predicate and constant of f is in the map's domain.
  bool covers(const Formula& f) const;
  /// Throws IncompleteRenaming for a symbol outside the domain.
  Formula apply(const Formula& f) const;
  RenamingMap inverse() const;

  friend bool operator==(const RenamingMap&, const RenamingMap&) = default;

 private:
  std::map<std::string, std::string> predicates_;
  std::map<std::string, std::string> constants_;
};

/// Identity map over every symbol of the given formulas.
RenamingMap identity_renaming(std::span<const Formula> fs);

/// Finite family of components. Each component may carry a renaming into
/// the shared language (none means inclusion) and a label that qualifies its
/// formula occurrences.
class Variety {
 public:
  /// Throws std::invalid_argument on an empty component list or mismatched
  /// map/label counts (empty vectors mean "none for every component").
  explicit Variety(std::vector<Calculus> components,
                   std::vector<std::optional<RenamingMap>> maps = {},
                   std::vector<std::optional<std::string>> labels = {});

  std::size_t size() const noexcept { return components_.size(); }
  const Calculus& component(std::size_t i) const;
  const std::optional<RenamingMap>& map(std::size_t i) const;
  const std::optional<std::string>& label(std::size_t i) const;

  /// The component as seen in the shared language (its renamed image).
  Calculus image(std::size_t i) const;
  /// Union of the renamed component axiom sets, first occurrence order.
  std::vector<Formula> generators() const;

 private:
  std::vector<Calculus> components_;
  std::vector<std::optional<RenamingMap>> maps_;
  std::vector<std::optional<std::string>> labels_;
};

/// Finite window onto infinite theorem sets.
class ProbeUniverse {
 public:
  ProbeUniverse() = default;
  explicit ProbeUniverse(std::vector<Formula> formulas);
  /// Every generator of v followed by `extra`.
  static ProbeUniverse covering(const Variety& v,
                                std::span<const Formula> extra = {});

  std::span<const Formula> formulas() const noexcept { return formulas_; }
  bool covers(const Variety& v) const;

 private:
  std::vector<Formula> formulas_;
};

/// One component per maximal position, in maximal_positions order.
Variety variety_of(const DomainOfRules& d);

/// Theorem membership: the component's own axioms classically entail phi.
bool theorem_in(const Calculus& c, const Formula& phi,
                const SolverConfig& cfg = {});

/// Probe formulas that are theorems of at least one component image, in
/// probe order.
std::vector<Formula> upper_level(const Variety& v, const ProbeUniverse& probe,
                                 const SolverConfig& cfg = {});

/// Label-qualified component axiom sets are pairwise disjoint.
bool is_discrete(const Variety& v);

/// Every pair of components shares a (label-qualified) axiom.
bool is_connected(const Variety& v);

/// The union of the selected component images is consistent. Throws
/// InvalidIndex for an empty or out-of-range selection.
bool is_compatible(const Variety& v, const IndexSet& subset,
                   const SolverConfig& cfg = {});
bool is_compatible(const Variety& v, const SolverConfig& cfg = {});

/// Gives component i the label "c<i>", which makes components pairwise
/// disjoint without changing any theorem.
Variety discretize(const Variety& v);

struct DepthFailure {
  std::vector<std::size_t> components;
  Formula formula;
};

/// Empty optional when the variety has depth k over the probe; otherwise the
/// first failing k-subset (lexicographic) and the probe formula common to all
/// their theorem sets that the axiom intersection does not entail.
struct DepthReport {
  std::optional<DepthFailure> failure;
  bool ok() const noexcept { return !failure.has_value(); }
};

DepthReport check_variety_depth(const Variety& v, std::size_t k,
                                const ProbeUniverse& probe,
                                const SolverConfig& cfg = {});

/// Component i has axioms {q, p<i>, -(p1 & ... & pn)}: connected, every n-1
/// components compatible, all n together not.
Variety compatibility_witness(std::size_t n);

/// Properties of a witness family as decided by the solver.
struct WitnessReport {
  bool classical = false;
  bool connected = false;
  std::vector<bool> component_consistent;
  /// leave_one_out[i]: compatibility of every component except i.
  std::vector<bool> leave_one_out;
  bool full_compatible = true;
  /// Pairwise compatibility.
  std::vector<std::vector<bool>> matrix;

  bool holds() const;
};

WitnessReport verify_witness(const Variety& v, const SolverConfig& cfg = {});

struct PartitionNode {
  std::vector<Formula> formulas;
  std::set<Atom> atoms;
};

struct PartitionEdge {
  std::size_t from;
  std::size_t to;
  std::set<Atom> shared;
};

struct PartitionGraph {
  std::vector<PartitionNode> nodes;
  std::vector<PartitionEdge> edges;
};

/// Connected components of the formula/atom co-occurrence graph, ordered by
/// their first formula. Edges are empty by construction.
PartitionGraph partition_graph(std::span<const Formula> fs);

/// Nodes are the given groups; an edge joins two groups sharing atoms.
PartitionGraph partition_graph(const std::vector<std::vector<Formula>>& groups);

/// Throws IncompleteRenaming if m misses a symbol of c.
Calculus apply_renaming(const RenamingMap& m, const Calculus& c);

struct OverlapEdge {
  std::size_t from;
  std::size_t to;
  std::size_t shared;
};

/// Pairs of components with nonempty label-qualified axiom intersections.
std::vector<OverlapEdge> overlap_edges(const Variety& v);

std::string to_dot(const PartitionGraph& g);
std::string overlap_dot(const Variety& v);

}  // namespace lri
