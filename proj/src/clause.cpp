#include "lri/clause.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <sstream>

#include "lri/error.hpp"

namespace lri {

std::size_t AtomRegistry::intern(const Atom& atom) {
  {
    std::shared_lock lock(mutex_);
    if (auto it = index_.find(atom); it != index_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  auto [it, inserted] = index_.emplace(atom, index_.size());
  return it->second;
}

void AtomRegistry::intern_all(const Formula& f) {
  if (f.is_atom()) {
    intern(f.as_atom());
    return;
  }
  intern_all(f.lhs());
  if (f.connective() != Connective::Not) intern_all(f.rhs());
}

std::optional<std::size_t> AtomRegistry::find(const Atom& atom) const {
  std::shared_lock lock(mutex_);
  if (auto it = index_.find(atom); it != index_.end()) return it->second;
  return std::nullopt;
}

std::size_t AtomRegistry::size() const {
  std::shared_lock lock(mutex_);
  return index_.size();
}

Atom ClauseSet::atom_of(std::size_t var) const {
  if (var == 0 || var > variable_count()) {
    throw std::out_of_range("ClauseSet::atom_of: no such variable");
  }
  if (!is_auxiliary(var)) return atoms[var - 1];
  return Atom{"$t" + std::to_string(var - atoms.size() - 1), {}};
}

std::vector<Atom> ClauseSet::auxiliary_atoms() const {
  std::vector<Atom> out;
  for (std::size_t v = atoms.size() + 1; v <= variable_count(); ++v) {
    out.push_back(atom_of(v));
  }
  return out;
}

void ClauseSet::add_clause(Clause clause) {
  std::sort(clause.begin(), clause.end(), [](Literal a, Literal b) {
    const auto va = std::abs(a), vb = std::abs(b);
    return va != vb ? va < vb : a < b;
  });
  clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
  for (std::size_t i = 1; i < clause.size(); ++i) {
    if (clause[i] == -clause[i - 1]) return;
  }
  if (std::find(clauses.begin(), clauses.end(), clause) != clauses.end()) return;
  clauses.push_back(std::move(clause));
}

namespace {

void collect_in_order(const Formula& f, std::vector<Atom>& order,
                      std::map<Atom, std::size_t>& seen) {
  if (f.is_atom()) {
    Atom a = f.as_atom();
    if (seen.emplace(a, order.size()).second) order.push_back(std::move(a));
    return;
  }
  collect_in_order(f.lhs(), order, seen);
  if (f.connective() != Connective::Not) collect_in_order(f.rhs(), order, seen);
}

class Tseitin {
 public:
  Tseitin(ClauseSet& out, const std::map<Atom, Literal>& vars)
      : out_(out), vars_(vars) {}

  Literal encode(const Formula& f) {
    switch (f.connective()) {
      case Connective::Atom: return vars_.at(f.as_atom());
      case Connective::Not: return -encode(f.lhs());
      default: break;
    }
    const Literal a = encode(f.lhs());
    const Literal b = encode(f.rhs());
    const Literal x = fresh();
    switch (f.connective()) {
      case Connective::And:
        out_.add_clause({-x, a});
        out_.add_clause({-x, b});
        out_.add_clause({x, -a, -b});
        break;
      case Connective::Or:
        out_.add_clause({-x, a, b});
        out_.add_clause({x, -a});
        out_.add_clause({x, -b});
        break;
      case Connective::Implies:
        out_.add_clause({-x, -a, b});
        out_.add_clause({x, a});
        out_.add_clause({x, -b});
        break;
      case Connective::Iff:
        out_.add_clause({-x, -a, b});
        out_.add_clause({-x, a, -b});
        out_.add_clause({x, a, b});
        out_.add_clause({x, -a, -b});
        break;
      default: break;
    }
    return x;
  }

 private:
  Literal fresh() {
    ++out_.auxiliary_count;
    return static_cast<Literal>(out_.variable_count());
  }

  ClauseSet& out_;
  const std::map<Atom, Literal>& vars_;
};

}  // namespace

ClauseSet clausify(std::span<const Formula> formulas, AtomRegistry* registry) {
  std::vector<Atom> order;
  std::map<Atom, std::size_t> seen;
  for (const auto& f : formulas) {
    if (!f.is_ground()) {
      throw NotGround("clausify: " + to_string(f) + " is not ground");
    }
    collect_in_order(f, order, seen);
  }
  if (registry != nullptr) {
    std::vector<std::pair<std::size_t, Atom>> ranked;
    ranked.reserve(order.size());
    for (auto& a : order) {
      const std::size_t idx = registry->intern(a);
      ranked.emplace_back(idx, std::move(a));
    }
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    order.clear();
    for (auto& [idx, a] : ranked) order.push_back(std::move(a));
  }

  ClauseSet out;
  std::map<Atom, Literal> vars;
  for (std::size_t i = 0; i < order.size(); ++i) {
    vars.emplace(order[i], static_cast<Literal>(i + 1));
  }
  out.atoms = std::move(order);

  Tseitin encoder(out, vars);
  for (const auto& f : formulas) {
    out.add_clause({encoder.encode(f)});
  }
  return out;
}

std::string to_dimacs(const ClauseSet& cs) {
  std::ostringstream os;
  for (std::size_t v = 1; v <= cs.atoms.size(); ++v) {
    os << "c " << v << ' ' << to_string(cs.atoms[v - 1]) << '\n';
  }
  os << "p cnf " << cs.variable_count() << ' ' << cs.clauses.size() << '\n';
  for (const auto& clause : cs.clauses) {
    for (Literal l : clause) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

}  // namespace lri
