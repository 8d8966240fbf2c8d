#include "lri/sat.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "lri/error.hpp"

namespace lri {

namespace {

class Dpll {
 public:
  Dpll(const ClauseSet& cs, std::uint64_t max_decisions)
      : cs_(cs),
        max_decisions_(max_decisions),
        value_(cs.variable_count() + 1, 0),
        watches_(2 * (cs.variable_count() + 1)) {}

  SatResult run() {
    if (!load()) return SatResult::unsatisfiable();
    while (true) {
      if (!propagate()) {
        if (!backtrack()) return SatResult::unsatisfiable();
        continue;
      }
      const std::size_t var = next_unassigned();
      if (var == 0) return SatResult::satisfiable(model());
      if (++decisions_ > max_decisions_) {
        throw ResourceLimit("solver exceeded " +
                            std::to_string(max_decisions_) +
                            " branching decisions");
      }
      levels_.push_back(Level{trail_.size(), -static_cast<Literal>(var), false});
      assign(-static_cast<Literal>(var));
    }
  }

 private:
  struct Level {
    std::size_t trail_start;
    Literal decision;
    bool flipped;
  };

  static std::size_t code(Literal l) {
    return 2 * static_cast<std::size_t>(std::abs(l)) + (l < 0 ? 1 : 0);
  }

  // +1 true, -1 false, 0 unassigned.
  int value(Literal l) const {
    const int v = value_[static_cast<std::size_t>(std::abs(l))];
    return l < 0 ? -v : v;
  }

  void assign(Literal l) {
    value_[static_cast<std::size_t>(std::abs(l))] = l < 0 ? -1 : 1;
    trail_.push_back(l);
  }

  bool load() {
    clauses_ = cs_.clauses;
    for (std::size_t i = 0; i < clauses_.size(); ++i) {
      const Clause& c = clauses_[i];
      if (c.empty()) return false;
      if (c.size() == 1) {
        const int v = value(c[0]);
        if (v < 0) return false;
        if (v == 0) assign(c[0]);
        continue;
      }
      watches_[code(c[0])].push_back(i);
      watches_[code(c[1])].push_back(i);
    }
    return true;
  }

  bool propagate() {
    while (head_ < trail_.size()) {
      const Literal falsified = -trail_[head_++];
      auto& list = watches_[code(falsified)];
      std::size_t keep = 0;
      bool conflict = false;
      for (std::size_t w = 0; w < list.size(); ++w) {
        const std::size_t ci = list[w];
        if (conflict) {
          list[keep++] = ci;
          continue;
        }
        Clause& c = clauses_[ci];
        if (c[0] == falsified) std::swap(c[0], c[1]);
        if (value(c[0]) > 0) {
          list[keep++] = ci;
          continue;
        }
        bool moved = false;
        for (std::size_t k = 2; k < c.size(); ++k) {
          if (value(c[k]) >= 0) {
            std::swap(c[1], c[k]);
            watches_[code(c[1])].push_back(ci);
            moved = true;
            break;
          }
        }
        if (moved) continue;
        list[keep++] = ci;
        if (value(c[0]) < 0) {
          conflict = true;
        } else {
          assign(c[0]);
        }
      }
      list.resize(keep);
      if (conflict) return false;
    }
    return true;
  }

  bool backtrack() {
    while (!levels_.empty()) {
      Level level = levels_.back();
      levels_.pop_back();
      undo_to(level.trail_start);
      if (!level.flipped) {
        levels_.push_back(Level{trail_.size(), -level.decision, true});
        assign(-level.decision);
        return true;
      }
    }
    return false;
  }

  void undo_to(std::size_t size) {
    while (trail_.size() > size) {
      const auto var = static_cast<std::size_t>(std::abs(trail_.back()));
      value_[var] = 0;
      cursor_ = std::min(cursor_, var);
      trail_.pop_back();
    }
    head_ = size;
  }

  // Lowest unassigned variable, or 0 when the assignment is total.
  std::size_t next_unassigned() {
    while (cursor_ <= cs_.variable_count() && value_[cursor_] != 0) ++cursor_;
    return cursor_ <= cs_.variable_count() ? cursor_ : 0;
  }

  Assignment model() const {
    Assignment out;
    for (std::size_t v = 1; v <= cs_.atoms.size(); ++v) {
      out.emplace(cs_.atoms[v - 1], value_[v] > 0);
    }
    return out;
  }

  const ClauseSet& cs_;
  std::uint64_t max_decisions_;
  std::uint64_t decisions_ = 0;
  std::vector<Clause> clauses_;
  std::vector<int> value_;
  std::vector<std::vector<std::size_t>> watches_;
  std::vector<Literal> trail_;
  std::size_t head_ = 0;
  std::vector<Level> levels_;
  std::size_t cursor_ = 1;
};

}  // namespace

SatResult solve(const ClauseSet& cs, std::uint64_t max_decisions) {
  return Dpll(cs, max_decisions).run();
}

bool is_consistent(std::span<const Formula> fs, const SolverConfig& cfg) {
  return solve(clausify(fs, cfg.registry.get()), cfg.max_decisions)
      .is_satisfiable();
}

bool entails(std::span<const Formula> gamma, const Formula& phi,
             const SolverConfig& cfg) {
  std::vector<Formula> query(gamma.begin(), gamma.end());
  query.push_back(neg(phi));
  return !is_consistent(query, cfg);
}

namespace truth_table {

namespace {

constexpr std::size_t kMaxAtoms = 24;

bool any_model(std::span<const Formula> fs, const Formula* must_fail) {
  std::vector<Formula> all(fs.begin(), fs.end());
  if (must_fail != nullptr) all.push_back(*must_fail);
  const std::set<Atom> atom_set = atoms_of(std::span<const Formula>(all));
  const std::vector<Atom> atoms(atom_set.begin(), atom_set.end());
  if (atoms.size() > kMaxAtoms) {
    throw std::invalid_argument("truth_table: too many atoms");
  }
  std::map<Atom, bool> valuation;
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << atoms.size()); ++row) {
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      valuation[atoms[i]] = ((row >> i) & 1U) != 0;
    }
    bool ok = true;
    for (const auto& f : fs) {
      if (!evaluate(f, valuation)) {
        ok = false;
        break;
      }
    }
    if (ok && must_fail != nullptr && evaluate(*must_fail, valuation)) ok = false;
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool satisfiable(std::span<const Formula> fs) { return any_model(fs, nullptr); }

bool entails(std::span<const Formula> gamma, const Formula& phi) {
  return !any_model(gamma, &phi);
}

}  // namespace truth_table

}  // namespace lri
