#pragma once

// Brute-force reference implementation used by the unit and acceptance
// suites. Evaluation, consistency and entailment are decided by enumerating
// truth-table rows directly; nothing here goes through the clause translation,
// the solver or the domain code.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "lri/formula.hpp"

namespace oracle {

using Mask = std::uint32_t;
using Subset = std::vector<std::size_t>;

inline std::vector<std::size_t> to_indices(Mask m) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < 32; ++i) {
    if (m & (Mask{1} << i)) out.push_back(i);
  }
  return out;
}

inline bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

/// Dense atom numbering for a fixed set of formulas.
class AtomIndex {
 public:
  void add(const lri::Formula& f) {
    switch (f.connective()) {
      case lri::Connective::Atom: {
        const auto a = f.as_atom();
        if (!index_.contains(a)) {
          const std::size_t next = index_.size();
          index_.emplace(a, next);
        }
        return;
      }
      case lri::Connective::Not:
        add(f.lhs());
        return;
      default:
        add(f.lhs());
        add(f.rhs());
    }
  }
  std::size_t size() const { return index_.size(); }
  std::size_t at(const lri::Atom& a) const { return index_.at(a); }

 private:
  std::map<lri::Atom, std::size_t> index_;
};

/// Truth value under the row whose bit i gives atom i.
inline bool eval(const lri::Formula& f, const AtomIndex& idx, std::uint64_t row) {
  switch (f.connective()) {
    case lri::Connective::Atom:
      return (row >> idx.at(f.as_atom())) & 1U;
    case lri::Connective::Not:
      return !eval(f.lhs(), idx, row);
    case lri::Connective::And:
      return eval(f.lhs(), idx, row) && eval(f.rhs(), idx, row);
    case lri::Connective::Or:
      return eval(f.lhs(), idx, row) || eval(f.rhs(), idx, row);
    case lri::Connective::Implies:
      return !eval(f.lhs(), idx, row) || eval(f.rhs(), idx, row);
    case lri::Connective::Iff:
      return eval(f.lhs(), idx, row) == eval(f.rhs(), idx, row);
  }
  return false;
}

inline bool satisfiable(const std::vector<lri::Formula>& fs) {
  AtomIndex idx;
  for (const auto& f : fs) idx.add(f);
  if (idx.size() > 22) throw std::length_error("too many atoms for the oracle");
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << idx.size()); ++row) {
    if (std::all_of(fs.begin(), fs.end(),
                    [&](const lri::Formula& f) { return eval(f, idx, row); })) {
      return true;
    }
  }
  return false;
}

inline bool entails(std::vector<lri::Formula> gamma, const lri::Formula& phi) {
  gamma.push_back(lri::neg(phi));
  return !satisfiable(gamma);
}

/// Truth table of A ∪ H. Each row where every axiom holds is kept as the
/// mask of hypotheses true on it. A hypothesis set S is consistent iff some
/// kept row covers S, and S entails phi iff phi holds on every kept row
/// covering S.
class DomainTable {
 public:
  DomainTable(std::vector<lri::Formula> axioms,
              std::vector<lri::Formula> hypotheses,
              const std::vector<lri::Formula>& extra = {})
      : axioms_(std::move(axioms)), hypotheses_(std::move(hypotheses)) {
    if (hypotheses_.size() > 16) throw std::length_error("too many hypotheses");
    for (const auto& f : axioms_) idx_.add(f);
    for (const auto& f : hypotheses_) idx_.add(f);
    for (const auto& f : extra) idx_.add(f);
    if (idx_.size() > 20) throw std::length_error("too many atoms for the oracle");
    const std::uint64_t rows = std::uint64_t{1} << idx_.size();
    for (std::uint64_t row = 0; row < rows; ++row) {
      bool ok = true;
      for (const auto& a : axioms_) {
        if (!eval(a, idx_, row)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Mask m = 0;
      for (std::size_t i = 0; i < hypotheses_.size(); ++i) {
        if (eval(hypotheses_[i], idx_, row)) m |= Mask{1} << i;
      }
      rows_.push_back(row);
      masks_.push_back(m);
    }
    consistent_.assign(std::size_t{1} << hypotheses_.size(), false);
    for (Mask s = 0; s < consistent_.size(); ++s) {
      consistent_[s] = std::any_of(masks_.begin(), masks_.end(),
                                   [&](Mask m) { return subset_of(s, m); });
    }
  }

  std::size_t hypothesis_count() const { return hypotheses_.size(); }
  bool axioms_consistent() const { return !rows_.empty(); }
  bool consistent(Mask s) const { return consistent_[s]; }
  Mask full() const { return static_cast<Mask>(consistent_.size() - 1); }

  /// phi must only mention atoms known to the table.
  bool entails(Mask s, const lri::Formula& phi) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (subset_of(s, masks_[r]) && !eval(phi, idx_, rows_[r])) return false;
    }
    return true;
  }

  /// Entailment of phi for every hypothesis subset at once.
  std::vector<bool> entailment_table(const lri::Formula& phi) const {
    std::vector<bool> ok(consistent_.size(), true);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (eval(phi, idx_, rows_[r])) continue;
      // Every subset of masks_[r] fails to entail phi.
      const Mask m = masks_[r];
      for (Mask s = m;; s = (s - 1) & m) {
        ok[s] = false;
        if (s == 0) break;
      }
    }
    return ok;
  }

  std::vector<Mask> maximal_sets() const {
    std::vector<Mask> out;
    for (Mask s = 0; s < consistent_.size(); ++s) {
      if (!consistent_[s]) continue;
      bool maximal = true;
      for (std::size_t i = 0; i < hypotheses_.size(); ++i) {
        const Mask bit = Mask{1} << i;
        if (!(s & bit) && consistent_[s | bit]) {
          maximal = false;
          break;
        }
      }
      if (maximal) out.push_back(s);
    }
    return out;
  }

  bool reasonable(const lri::Formula& phi) const {
    const auto ent = entailment_table(phi);
    for (Mask s = 0; s < consistent_.size(); ++s) {
      if (consistent_[s] && ent[s]) return true;
    }
    return false;
  }

  /// Minimal consistent hypothesis sets entailing phi.
  std::set<Subset> justifications(const lri::Formula& phi) const {
    const auto ent = entailment_table(phi);
    std::vector<Mask> good;
    for (Mask s = 0; s < consistent_.size(); ++s) {
      if (consistent_[s] && ent[s]) good.push_back(s);
    }
    std::set<Subset> out;
    for (Mask s : good) {
      const bool minimal = std::none_of(good.begin(), good.end(), [&](Mask t) {
        return t != s && subset_of(t, s);
      });
      if (minimal) out.insert(to_indices(s));
    }
    return out;
  }

 private:
  std::vector<lri::Formula> axioms_;
  std::vector<lri::Formula> hypotheses_;
  AtomIndex idx_;
  std::vector<std::uint64_t> rows_;
  std::vector<Mask> masks_;
  std::vector<bool> consistent_;
};

}  // namespace oracle
