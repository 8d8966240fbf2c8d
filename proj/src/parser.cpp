#include "lri/parser.hpp"

#include <cctype>

#include "lri/error.hpp"

namespace lri {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_variable_name(const std::string& name) {
  return !name.empty() && std::isupper(static_cast<unsigned char>(name[0]));
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += (i + 1 == items.size()) ? " or " : ", ";
    out += items[i];
  }
  return out;
}

}  // namespace

SyntaxError::SyntaxError(std::size_t offset, std::vector<std::string> expected,
                         std::string found)
    : Error("syntax error at offset " + std::to_string(offset) + ": expected " +
            join(expected) + ", found " + found),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

std::string describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::Ident: return "identifier";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Comma: return "','";
    case TokenKind::Not: return "'-'";
    case TokenKind::And: return "'&'";
    case TokenKind::Or: return "'|'";
    case TokenKind::Implies: return "'->'";
    case TokenKind::Iff: return "'<->'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::Colon: return "':'";
    case TokenKind::End: return "end of input";
  }
  return "?";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t line = 1;
  auto push = [&](TokenKind kind, std::size_t start, std::size_t len) {
    out.push_back(Token{kind, std::string(text.substr(start, len)), start, line});
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      push(TokenKind::Ident, i, j - i);
      i = j;
    } else if (c == '(') {
      push(TokenKind::LParen, i++, 1);
    } else if (c == ')') {
      push(TokenKind::RParen, i++, 1);
    } else if (c == ',') {
      push(TokenKind::Comma, i++, 1);
    } else if (c == '&') {
      push(TokenKind::And, i++, 1);
    } else if (c == '|') {
      push(TokenKind::Or, i++, 1);
    } else if (c == '.') {
      push(TokenKind::Dot, i++, 1);
    } else if (c == ':') {
      push(TokenKind::Colon, i++, 1);
    } else if (c == '-') {
      if (i + 1 < text.size() && text[i + 1] == '>') {
        push(TokenKind::Implies, i, 2);
        i += 2;
      } else {
        push(TokenKind::Not, i++, 1);
      }
    } else if (c == '<' && text.substr(i, 3) == "<->") {
      push(TokenKind::Iff, i, 3);
      i += 3;
    } else {
      throw SyntaxError(i, {"formula token"},
                        "'" + std::string(1, c) + "'");
    }
  }
  out.push_back(Token{TokenKind::End, "", text.size(), line});
  return out;
}

FormulaParser::FormulaParser(std::vector<Token> tokens, const Signature& sig)
    : tokens_(std::move(tokens)), sig_(sig) {
  if (tokens_.empty() || tokens_.back().kind != TokenKind::End) {
    tokens_.push_back(Token{TokenKind::End, "", 0, 1});
  }
}

const Token& FormulaParser::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

const Token& FormulaParser::next() {
  const Token& t = tokens_[pos_];
  if (pos_ + 1 < tokens_.size()) ++pos_;
  return t;
}

const Token& FormulaParser::expect(TokenKind kind) {
  if (!at(kind)) fail({describe(kind)});
  return next();
}

void FormulaParser::fail(std::vector<std::string> expected) const {
  const Token& t = peek();
  std::string found =
      t.kind == TokenKind::End ? describe(TokenKind::End) : "'" + t.text + "'";
  throw SyntaxError(t.offset, std::move(expected), std::move(found));
}

Formula FormulaParser::parse_formula() {
  local_ = Signature{};
  return parse_iff();
}

Formula FormulaParser::parse_iff() {
  Formula lhs = parse_implies();
  while (at(TokenKind::Iff)) {
    next();
    lhs = iff(std::move(lhs), parse_implies());
  }
  return lhs;
}

Formula FormulaParser::parse_implies() {
  Formula lhs = parse_or();
  if (at(TokenKind::Implies)) {
    next();
    return implies(std::move(lhs), parse_implies());
  }
  return lhs;
}

Formula FormulaParser::parse_or() {
  Formula lhs = parse_and();
  while (at(TokenKind::Or)) {
    next();
    lhs = disj(std::move(lhs), parse_and());
  }
  return lhs;
}

Formula FormulaParser::parse_and() {
  Formula lhs = parse_unary();
  while (at(TokenKind::And)) {
    next();
    lhs = conj(std::move(lhs), parse_unary());
  }
  return lhs;
}

Formula FormulaParser::parse_unary() {
  if (at(TokenKind::Not)) {
    next();
    return neg(parse_unary());
  }
  return parse_primary();
}

Formula FormulaParser::parse_primary() {
  if (at(TokenKind::LParen)) {
    next();
    Formula inner = parse_iff();
    expect(TokenKind::RParen);
    return inner;
  }
  if (at(TokenKind::Ident)) return parse_atom();
  fail({"'-'", "'('", "predicate"});
}

Formula FormulaParser::parse_atom() {
  const Token& name = peek();
  if (is_variable_name(name.text)) {
    // Variables may only appear in argument positions.
    fail({"predicate (lowercase identifier)"});
  }
  next();
  std::vector<Term> args;
  if (at(TokenKind::LParen)) {
    next();
    while (true) {
      if (!at(TokenKind::Ident)) fail({"constant or variable"});
      const Token& arg = next();
      const bool variable = is_variable_name(arg.text);
      if (!variable && sig_.constants_closed() && !sig_.has_constant(arg.text)) {
        throw UnknownSymbol("constant '" + arg.text + "' is not declared");
      }
      args.push_back(Term{arg.text, variable});
      if (at(TokenKind::Comma)) {
        next();
        continue;
      }
      expect(TokenKind::RParen);
      break;
    }
  }
  const auto declared = sig_.arity(name.text);
  if (!declared && sig_.predicates_closed()) {
    throw UnknownSymbol("predicate '" + name.text + "' is not declared");
  }
  if (declared && *declared != args.size()) {
    throw ArityMismatch("predicate '" + name.text + "' has arity " +
                        std::to_string(*declared) + ", used with " +
                        std::to_string(args.size()) + " arguments");
  }
  local_.declare_predicate(name.text, args.size());
  return Formula::atom(name.text, std::move(args));
}

Formula parse_formula(std::string_view text, const Signature& sig) {
  FormulaParser parser(tokenize(text), sig);
  if (parser.at_end()) parser.fail({"formula"});
  Formula f = parser.parse_formula();
  if (parser.at(TokenKind::Dot)) parser.next();
  if (!parser.at_end()) {
    parser.fail({"'&'", "'|'", "'->'", "'<->'", "'.'", "end of input"});
  }
  return f;
}

std::vector<Formula> parse_statements(std::string_view text,
                                      const Signature& sig) {
  FormulaParser parser(tokenize(text), sig);
  std::vector<Formula> out;
  while (!parser.at_end()) {
    Formula f = parser.parse_formula();
    parser.expect(TokenKind::Dot);
    parser.declare(f);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace lri
