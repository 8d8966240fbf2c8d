#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "lri/formula.hpp"
#include "lri/sat.hpp"

namespace lri {

/// Set of hypothesis indices, stored sorted and duplicate-free.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> items);
  explicit IndexSet(std::vector<std::size_t> items);
  static IndexSet range(std::size_t n);

  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }
  const std::vector<std::size_t>& items() const noexcept { return items_; }

  bool contains(std::size_t i) const;
  bool is_subset_of(const IndexSet& other) const;
  IndexSet with(std::size_t i) const;
  IndexSet unite(const IndexSet& other) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend auto operator<=>(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> items_;
};

/// Deterministic output order for index sets: index 0 is the most
/// significant bit and larger encodings come first, i.e. of two sets the one
/// holding the lowest index where they differ comes first.
bool position_order(const IndexSet& a, const IndexSet& b);

struct IndexSetHash {
  std::size_t operator()(const IndexSet& s) const noexcept;
};

/// Domain of rules: a consistent axiom set A and an indexed hypothesis
/// sequence H. Immutable; copies share state (including the consistency
/// memo and the cached maximal positions).
class DomainOfRules {
 public:
  /// An empty domain.
  DomainOfRules();

  /// Throws InconsistentAxioms, DuplicateHypothesis, AxiomHypothesisOverlap,
  /// NotGround. Repeated axioms are collapsed to their first occurrence.
  DomainOfRules(std::vector<Formula> axioms, std::vector<Formula> hypotheses,
                SolverConfig cfg = {});

  std::span<const Formula> axioms() const noexcept;
  std::span<const Formula> hypotheses() const noexcept;
  const Formula& hypothesis(std::size_t i) const;
  std::size_t hypothesis_count() const noexcept;
  IndexSet all_hypotheses() const { return IndexSet::range(hypothesis_count()); }

  /// A together with the chosen hypotheses, axioms first.
  std::vector<Formula> formulas(const IndexSet& chosen) const;

  /// Memoized consistency of A ∪ H'.
  bool consistent(const IndexSet& chosen) const;
  bool entails(const IndexSet& chosen, const Formula& phi) const;

  /// Inclusion-maximal consistent hypothesis sets in position_order,
  /// computed once per domain value.
  const std::vector<IndexSet>& maximal_sets() const;

  const SolverConfig& solver() const noexcept;

  /// Identity of the underlying value, not logical equality.
  bool same_as(const DomainOfRules& other) const noexcept {
    return state_ == other.state_;
  }

 private:
  struct State;
  std::shared_ptr<State> state_;
};

DomainOfRules new_domain(std::vector<Formula> axioms,
                         std::vector<Formula> hypotheses,
                         SolverConfig cfg = {});

/// A ∪ H' for a consistent choice H'.
class Position {
 public:
  /// Throws InconsistentPosition or InvalidIndex.
  Position(DomainOfRules domain, IndexSet chosen);

  const DomainOfRules& domain() const noexcept { return domain_; }
  const IndexSet& chosen() const noexcept { return chosen_; }
  std::vector<Formula> formulas() const { return domain_.formulas(chosen_); }

  /// Compares hypothesis index sets over the same domain value.
  friend bool operator==(const Position& a, const Position& b) {
    return a.domain_.same_as(b.domain_) && a.chosen_ == b.chosen_;
  }

 private:
  DomainOfRules domain_;
  IndexSet chosen_;
};

/// A position entailing `conclusion` no proper hypothesis subset of which
/// does.
class Justification {
 public:
  /// Checks entailment and minimality; throws InvalidJustification.
  Justification(Formula conclusion, Position position);

  const Formula& conclusion() const noexcept { return conclusion_; }
  const Position& position() const noexcept { return position_; }

  friend bool operator==(const Justification&, const Justification&) = default;

 private:
  struct Trusted {};
  friend std::vector<Justification> justifications(const DomainOfRules&,
                                                   const Formula&);
  Justification(Trusted, Formula conclusion, Position position)
      : conclusion_(std::move(conclusion)), position_(std::move(position)) {}

  Formula conclusion_;
  Position position_;
};

/// Simultaneously derived conclusions with their justifications.
struct Context {
  std::vector<Justification> pairs;

  /// Union of the hypothesis parts of all justifications.
  IndexSet hypotheses() const;
  friend bool operator==(const Context&, const Context&) = default;
};

/// Every inclusion-maximal consistent hypothesis set, in position_order.
/// Every consistent H' is contained in one of them.
std::vector<Position> maximal_positions(const DomainOfRules& d);

/// First maximal position (in output order) entailing phi, if any. This
/// decides Δ ⊨r φ.
std::optional<Position> reasonably_infers(const DomainOfRules& d,
                                          const Formula& phi);

/// All minimal consistent H' with A ∪ H' ⊨ phi, in position_order.
std::vector<Justification> justifications(const DomainOfRules& d,
                                          const Formula& phi);

/// Whether the union of all justifications is consistent. Throws
/// MixedDomains when the pairs come from different domains.
bool is_consistent_context(const Context& ctx);

inline constexpr std::size_t kMaxContextQueries = 12;

/// Consistent contexts over `queries` that cannot be extended by any further
/// query with any of its justifications. Throws QueryLimit past
/// kMaxContextQueries queries and std::invalid_argument on duplicates.
std::vector<Context> maximal_consistent_contexts(
    const DomainOfRules& d, std::span<const Formula> queries);

/// Membership in the reasonable theory Th Δ.
bool in_reasonable_theory(const DomainOfRules& d, const Formula& phi);

}  // namespace lri
