#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lri {

/// Ground atom: a predicate applied to constants. Propositional atoms have no
/// arguments.
struct Atom {
  std::string predicate;
  std::vector<std::string> args;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

std::string to_string(const Atom& atom);

/// Argument of a schema atom. Variables start with an uppercase letter.
struct Term {
  std::string name;
  bool variable = false;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term&, const Term&) = default;
};

enum class Connective : std::uint8_t { Atom, Not, And, Or, Implies, Iff };

/// Immutable formula tree. A formula with variables is a schema; its free
/// variables are read as universally quantified over the whole formula. The
/// tree is shared between copies, so copying is cheap.
class Formula {
 public:
  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula atom(const Atom& atom);
  static Formula negation(Formula operand);
  static Formula binary(Connective connective, Formula lhs, Formula rhs);

  Connective connective() const noexcept;
  bool is_atom() const noexcept { return connective() == Connective::Atom; }
  /// Atom or negated atom.
  bool is_literal() const noexcept;
  bool is_ground() const noexcept;

  // Atom accessors; only valid when is_atom().
  const std::string& predicate() const;
  std::span<const Term> terms() const;
  Atom as_atom() const;

  /// Operand of NOT, or the left operand of a binary connective.
  const Formula& lhs() const;
  const Formula& rhs() const;

  std::size_t hash() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a,
                                          const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Formula neg(Formula f);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula iff(Formula a, Formula b);
/// Propositional atom shorthand.
Formula prop(std::string name);

/// Text form accepted back by parse_formula. Every binary subformula is
/// parenthesized except the outermost one.
std::string to_string(const Formula& f);

/// Atoms syntactically occurring in a ground formula.
std::set<Atom> atoms_of(const Formula& f);
std::set<Atom> atoms_of(std::span<const Formula> fs);

/// Distinct variables of a schema in order of first occurrence.
std::vector<std::string> variables_of(const Formula& f);

/// Classical truth value of a ground formula; atoms missing from the
/// valuation are false.
bool evaluate(const Formula& f, const std::map<Atom, bool>& valuation);

/// Predicates (with arity) and constants of the language.
///
/// An open signature accepts undeclared symbols during parsing (arity is
/// still checked against what is declared). Predicates and constants are
/// closed independently.
class Signature {
 public:
  Signature() = default;

  /// Declares or re-declares; throws ArityMismatch on a conflicting arity.
  void declare_predicate(const std::string& name, std::size_t arity);
  /// No-op if already declared; keeps declaration order.
  void declare_constant(const std::string& name);
  /// Declares every predicate and constant appearing in f.
  void declare_symbols_of(const Formula& f);

  std::optional<std::size_t> arity(const std::string& predicate) const;
  bool has_constant(const std::string& name) const;
  const std::vector<std::string>& constants() const noexcept {
    return constants_;
  }
  const std::map<std::string, std::size_t>& predicates() const noexcept {
    return predicates_;
  }

  bool predicates_closed() const noexcept { return predicates_closed_; }
  bool constants_closed() const noexcept { return constants_closed_; }
  void close_predicates(bool closed = true) { predicates_closed_ = closed; }
  void close_constants(bool closed = true) { constants_closed_ = closed; }

 private:
  std::map<std::string, std::size_t> predicates_;
  std::vector<std::string> constants_;
  bool predicates_closed_ = false;
  bool constants_closed_ = false;
};

/// Parses one formula (an optional trailing '.' is accepted).
///
/// Precedence from tightest: '-', '&', '|', '->', '<->'. '->' associates to
/// the right, the others to the left.
Formula parse_formula(std::string_view text, const Signature& sig);

/// Parses a sequence of '.'-terminated statements. Symbols declared by
/// earlier statements are visible to the arity checks of later ones.
std::vector<Formula> parse_statements(std::string_view text,
                                      const Signature& sig);

/// One instance per assignment of sig.constants() to the schema variables.
/// The first variable varies slowest. Throws EmptyDomain when the schema has
/// variables and there are no constants, UnknownSymbol when it mentions an
/// undeclared constant.
std::vector<Formula> ground(const Formula& schema, const Signature& sig);

}  // namespace lri

template <>
struct std::hash<lri::Formula> {
  std::size_t operator()(const lri::Formula& f) const noexcept {
    return f.hash();
  }
};
