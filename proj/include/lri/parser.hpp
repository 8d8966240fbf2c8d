#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lri/formula.hpp"

namespace lri {

enum class TokenKind {
  Ident,
  LParen,
  RParen,
  Comma,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Dot,
  Colon,
  End,
};

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  std::size_t offset = 0;
  std::size_t line = 1;
};

/// Splits formula text into tokens; '#' starts a comment running to the end
/// of the line. Characters outside the grammar raise SyntaxError, so
/// identifiers such as the solver's reserved "$t0" can never be produced.
std::vector<Token> tokenize(std::string_view text);

std::string describe(TokenKind kind);

/// Recursive-descent parser over a token vector. Used directly by readers of
/// sectioned files that interleave headers with statements.
class FormulaParser {
 public:
  FormulaParser(std::vector<Token> tokens, const Signature& sig);

  const Token& peek(std::size_t ahead = 0) const;
  const Token& next();
  bool at(TokenKind kind) const { return peek().kind == kind; }
  bool at_end() const { return at(TokenKind::End); }
  /// Consumes the token or throws SyntaxError naming what was expected.
  const Token& expect(TokenKind kind);

  /// Parses one formula; leaves the terminating token unconsumed.
  Formula parse_formula();

  /// Extends the arity context used for subsequent formulas.
  void declare(const Formula& f) { sig_.declare_symbols_of(f); }
  const Signature& signature() const noexcept { return sig_; }

  [[noreturn]] void fail(std::vector<std::string> expected) const;

 private:
  Formula parse_iff();
  Formula parse_implies();
  Formula parse_or();
  Formula parse_and();
  Formula parse_unary();
  Formula parse_primary();
  Formula parse_atom();

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  Signature sig_;
  // Predicate arities seen inside the formula being parsed.
  Signature local_;
};

}  // namespace lri
