#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "lri/formula.hpp"

namespace lri {

/// DIMACS-style literal: +v or -v for variable v >= 1.
using Literal = std::int32_t;

/// Literals sorted by variable; never contains both v and -v.
using Clause = std::vector<Literal>;

/// Append-only mapping from atoms to dense indices in first-seen order.
/// Lookups may run concurrently; registration is serialized internally.
class AtomRegistry {
 public:
  AtomRegistry() = default;
  AtomRegistry(const AtomRegistry&) = delete;
  AtomRegistry& operator=(const AtomRegistry&) = delete;

  std::size_t intern(const Atom& atom);
  void intern_all(const Formula& f);
  std::optional<std::size_t> find(const Atom& atom) const;
  std::size_t size() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<Atom, std::size_t> index_;
};

/// Clauses plus the variable table they range over. Variables
/// 1..atoms.size() stand for atoms of the input; the remaining
/// auxiliary_count variables were introduced by clausification.
struct ClauseSet {
  std::vector<Atom> atoms;
  std::size_t auxiliary_count = 0;
  std::vector<Clause> clauses;

  std::size_t variable_count() const noexcept {
    return atoms.size() + auxiliary_count;
  }
  bool is_auxiliary(std::size_t var) const noexcept {
    return var > atoms.size();
  }
  /// Name of a variable; auxiliaries live in the reserved "$t<k>" namespace.
  Atom atom_of(std::size_t var) const;
  std::vector<Atom> auxiliary_atoms() const;

  /// Normalizes and appends a clause unless it is tautologous or already
  /// present.
  void add_clause(Clause clause);
};

/// Tseitin translation. Each binary subformula gets a fresh auxiliary with
/// its full definition; negations are folded into literals; each input's top
/// literal is asserted as a unit clause. The result is satisfiable iff the
/// input set is.
///
/// Atom variables are ordered by their index in `registry` when one is given
/// (new atoms are registered), otherwise by first occurrence in the input.
ClauseSet clausify(std::span<const Formula> formulas,
                   AtomRegistry* registry = nullptr);

/// "p cnf" listing with a comment line per named variable.
std::string to_dimacs(const ClauseSet& cs);

}  // namespace lri
