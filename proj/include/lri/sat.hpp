#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>

#include "lri/clause.hpp"
#include "lri/formula.hpp"

namespace lri {

/// Model restricted to the non-auxiliary atoms of the solved clause set.
using Assignment = std::map<Atom, bool>;

class SatResult {
 public:
  static SatResult unsatisfiable() { return SatResult{}; }
  static SatResult satisfiable(Assignment model) {
    SatResult r;
    r.model_ = std::move(model);
    return r;
  }

  bool is_satisfiable() const noexcept { return model_.has_value(); }
  explicit operator bool() const noexcept { return is_satisfiable(); }
  /// Only valid when satisfiable.
  const Assignment& model() const { return model_.value(); }

  friend bool operator==(const SatResult&, const SatResult&) = default;

 private:
  std::optional<Assignment> model_;
};

inline constexpr std::uint64_t kDefaultMaxDecisions = 10'000'000;

/// How satisfiability questions are answered. The registry, when set, fixes
/// the branching order across calls.
struct SolverConfig {
  std::uint64_t max_decisions = kDefaultMaxDecisions;
  std::shared_ptr<AtomRegistry> registry;
};

/// DPLL with unit propagation and chronological backtracking. Branches on
/// the unassigned variable with the lowest index, false first, so results
/// (models included) are reproducible. Throws ResourceLimit once more than
/// `max_decisions` branching decisions have been made.
SatResult solve(const ClauseSet& cs,
                std::uint64_t max_decisions = kDefaultMaxDecisions);

bool is_consistent(std::span<const Formula> fs, const SolverConfig& cfg = {});

/// Classical consequence: gamma together with NOT(phi) is unsatisfiable.
/// An inconsistent gamma entails every formula.
bool entails(std::span<const Formula> gamma, const Formula& phi,
             const SolverConfig& cfg = {});

/// Exhaustive truth-table decision procedure, independent of the clause
/// translation and of DPLL. Limited to 24 distinct atoms.
namespace truth_table {

bool satisfiable(std::span<const Formula> fs);
bool entails(std::span<const Formula> gamma, const Formula& phi);

}  // namespace truth_table

}  // namespace lri
