#include "lri/formula.hpp"

#include <algorithm>
#include <functional>

#include "lri/error.hpp"

namespace lri {

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

struct Formula::Node {
  Connective connective = Connective::Atom;
  std::string predicate;
  std::vector<Term> terms;
  std::vector<Formula> children;
  bool ground = true;
  std::size_t hash = 0;
};

std::string to_string(const Atom& atom) {
  std::string out = atom.predicate;
  if (!atom.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < atom.args.size(); ++i) {
      if (i > 0) out += ',';
      out += atom.args[i];
    }
    out += ')';
  }
  return out;
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  auto node = std::make_shared<Node>();
  node->connective = Connective::Atom;
  std::size_t h = std::hash<std::string>{}(predicate);
  for (const auto& t : args) {
    if (t.variable) node->ground = false;
    h = mix(h, std::hash<std::string>{}(t.name) + (t.variable ? 1 : 0));
  }
  node->predicate = std::move(predicate);
  node->terms = std::move(args);
  node->hash = h;
  return Formula(std::move(node));
}

Formula Formula::atom(const Atom& a) {
  std::vector<Term> terms;
  terms.reserve(a.args.size());
  for (const auto& c : a.args) terms.push_back(Term{c, false});
  return atom(a.predicate, std::move(terms));
}

Formula Formula::negation(Formula operand) {
  auto node = std::make_shared<Node>();
  node->connective = Connective::Not;
  node->ground = operand.is_ground();
  node->hash = mix(static_cast<std::size_t>(Connective::Not), operand.hash());
  node->children.push_back(std::move(operand));
  return Formula(std::move(node));
}

Formula Formula::binary(Connective connective, Formula lhs, Formula rhs) {
  if (connective == Connective::Atom || connective == Connective::Not) {
    throw std::invalid_argument("Formula::binary: connective is not binary");
  }
  auto node = std::make_shared<Node>();
  node->connective = connective;
  node->ground = lhs.is_ground() && rhs.is_ground();
  node->hash = mix(mix(static_cast<std::size_t>(connective), lhs.hash()),
                   rhs.hash());
  node->children.push_back(std::move(lhs));
  node->children.push_back(std::move(rhs));
  return Formula(std::move(node));
}

Connective Formula::connective() const noexcept { return node_->connective; }

bool Formula::is_literal() const noexcept {
  return is_atom() ||
         (connective() == Connective::Not &&
          node_->children[0].is_atom());
}

bool Formula::is_ground() const noexcept { return node_->ground; }

const std::string& Formula::predicate() const {
  if (!is_atom()) throw std::logic_error("Formula::predicate on non-atom");
  return node_->predicate;
}

std::span<const Term> Formula::terms() const {
  if (!is_atom()) throw std::logic_error("Formula::terms on non-atom");
  return node_->terms;
}

Atom Formula::as_atom() const {
  if (!is_atom()) throw std::logic_error("Formula::as_atom on non-atom");
  if (!is_ground()) throw NotGround("atom " + to_string(*this) + " has variables");
  Atom a{node_->predicate, {}};
  a.args.reserve(node_->terms.size());
  for (const auto& t : node_->terms) a.args.push_back(t.name);
  return a;
}

const Formula& Formula::lhs() const {
  if (node_->children.empty()) throw std::logic_error("Formula::lhs on atom");
  return node_->children[0];
}

const Formula& Formula::rhs() const {
  if (node_->children.size() < 2) {
    throw std::logic_error("Formula::rhs on non-binary");
  }
  return node_->children[1];
}

std::size_t Formula::hash() const noexcept { return node_->hash; }

bool operator==(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return true;
  if (a.node_->hash != b.node_->hash) return false;
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.connective <=> y.connective; c != 0) return c;
  if (x.connective == Connective::Atom) {
    if (auto c = x.predicate <=> y.predicate; c != 0) return c;
    return x.terms <=> y.terms;
  }
  if (auto c = a.lhs() <=> b.lhs(); c != 0) return c;
  if (x.connective == Connective::Not) return std::strong_ordering::equal;
  return a.rhs() <=> b.rhs();
}

Formula neg(Formula f) { return Formula::negation(std::move(f)); }
Formula conj(Formula a, Formula b) {
  return Formula::binary(Connective::And, std::move(a), std::move(b));
}
Formula disj(Formula a, Formula b) {
  return Formula::binary(Connective::Or, std::move(a), std::move(b));
}
Formula implies(Formula a, Formula b) {
  return Formula::binary(Connective::Implies, std::move(a), std::move(b));
}
Formula iff(Formula a, Formula b) {
  return Formula::binary(Connective::Iff, std::move(a), std::move(b));
}
Formula prop(std::string name) { return Formula::atom(std::move(name)); }

namespace {

const char* symbol(Connective c) {
  switch (c) {
    case Connective::And: return " & ";
    case Connective::Or: return " | ";
    case Connective::Implies: return " -> ";
    case Connective::Iff: return " <-> ";
    default: return "";
  }
}

void print(const Formula& f, bool outer, std::string& out) {
  switch (f.connective()) {
    case Connective::Atom: {
      out += f.predicate();
      auto terms = f.terms();
      if (!terms.empty()) {
        out += '(';
        for (std::size_t i = 0; i < terms.size(); ++i) {
          if (i > 0) out += ',';
          out += terms[i].name;
        }
        out += ')';
      }
      return;
    }
    case Connective::Not:
      out += '-';
      print(f.lhs(), false, out);
      return;
    default:
      if (!outer) out += '(';
      print(f.lhs(), false, out);
      out += symbol(f.connective());
      print(f.rhs(), false, out);
      if (!outer) out += ')';
  }
}

void collect_atoms(const Formula& f, std::set<Atom>& out) {
  if (f.is_atom()) {
    out.insert(f.as_atom());
    return;
  }
  collect_atoms(f.lhs(), out);
  if (f.connective() != Connective::Not) collect_atoms(f.rhs(), out);
}

void collect_variables(const Formula& f, std::vector<std::string>& out) {
  if (f.is_atom()) {
    for (const auto& t : f.terms()) {
      if (t.variable && std::find(out.begin(), out.end(), t.name) == out.end()) {
        out.push_back(t.name);
      }
    }
    return;
  }
  collect_variables(f.lhs(), out);
  if (f.connective() != Connective::Not) collect_variables(f.rhs(), out);
}

}  // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print(f, true, out);
  return out;
}

std::set<Atom> atoms_of(const Formula& f) {
  if (!f.is_ground()) throw NotGround("atoms_of: " + to_string(f) + " is not ground");
  std::set<Atom> out;
  collect_atoms(f, out);
  return out;
}

std::set<Atom> atoms_of(std::span<const Formula> fs) {
  std::set<Atom> out;
  for (const auto& f : fs) {
    if (!f.is_ground()) throw NotGround("atoms_of: " + to_string(f) + " is not ground");
    collect_atoms(f, out);
  }
  return out;
}

std::vector<std::string> variables_of(const Formula& f) {
  std::vector<std::string> out;
  collect_variables(f, out);
  return out;
}

bool evaluate(const Formula& f, const std::map<Atom, bool>& valuation) {
  switch (f.connective()) {
    case Connective::Atom: {
      auto it = valuation.find(f.as_atom());
      return it != valuation.end() && it->second;
    }
    case Connective::Not: return !evaluate(f.lhs(), valuation);
    case Connective::And:
      return evaluate(f.lhs(), valuation) && evaluate(f.rhs(), valuation);
    case Connective::Or:
      return evaluate(f.lhs(), valuation) || evaluate(f.rhs(), valuation);
    case Connective::Implies:
      return !evaluate(f.lhs(), valuation) || evaluate(f.rhs(), valuation);
    case Connective::Iff:
      return evaluate(f.lhs(), valuation) == evaluate(f.rhs(), valuation);
  }
  return false;
}

void Signature::declare_predicate(const std::string& name, std::size_t arity) {
  auto [it, inserted] = predicates_.emplace(name, arity);
  if (!inserted && it->second != arity) {
    throw ArityMismatch("predicate '" + name + "' declared with arity " +
                        std::to_string(it->second) + ", used with arity " +
                        std::to_string(arity));
  }
}

void Signature::declare_constant(const std::string& name) {
  if (!has_constant(name)) constants_.push_back(name);
}

void Signature::declare_symbols_of(const Formula& f) {
  if (f.is_atom()) {
    declare_predicate(f.predicate(), f.terms().size());
    for (const auto& t : f.terms()) {
      if (!t.variable) declare_constant(t.name);
    }
    return;
  }
  declare_symbols_of(f.lhs());
  if (f.connective() != Connective::Not) declare_symbols_of(f.rhs());
}

std::optional<std::size_t> Signature::arity(const std::string& predicate) const {
  auto it = predicates_.find(predicate);
  if (it == predicates_.end()) return std::nullopt;
  return it->second;
}

bool Signature::has_constant(const std::string& name) const {
  return std::find(constants_.begin(), constants_.end(), name) !=
         constants_.end();
}

namespace {

Formula substitute(const Formula& f,
                   const std::map<std::string, std::string>& binding) {
  switch (f.connective()) {
    case Connective::Atom: {
      std::vector<Term> terms(f.terms().begin(), f.terms().end());
      for (auto& t : terms) {
        if (t.variable) t = Term{binding.at(t.name), false};
      }
      return Formula::atom(f.predicate(), std::move(terms));
    }
    case Connective::Not: return neg(substitute(f.lhs(), binding));
    default:
      return Formula::binary(f.connective(), substitute(f.lhs(), binding),
                             substitute(f.rhs(), binding));
  }
}

void check_constants(const Formula& f, const Signature& sig) {
  if (f.is_atom()) {
    for (const auto& t : f.terms()) {
      if (!t.variable && !sig.has_constant(t.name)) {
        throw UnknownSymbol("constant '" + t.name + "' is not declared");
      }
    }
    return;
  }
  check_constants(f.lhs(), sig);
  if (f.connective() != Connective::Not) check_constants(f.rhs(), sig);
}

}  // namespace

std::vector<Formula> ground(const Formula& schema, const Signature& sig) {
  check_constants(schema, sig);
  const auto vars = variables_of(schema);
  if (vars.empty()) return {schema};
  const auto& constants = sig.constants();
  if (constants.empty()) {
    throw EmptyDomain("cannot ground " + to_string(schema) +
                      ": no constants declared");
  }
  std::vector<Formula> out;
  std::vector<std::size_t> choice(vars.size(), 0);
  std::map<std::string, std::string> binding;
  while (true) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      binding[vars[i]] = constants[choice[i]];
    }
    out.push_back(substitute(schema, binding));
    // Odometer with the last variable fastest.
    std::size_t i = vars.size();
    while (i > 0) {
      --i;
      if (++choice[i] < constants.size()) break;
      choice[i] = 0;
      if (i == 0) return out;
    }
  }
}

}  // namespace lri
