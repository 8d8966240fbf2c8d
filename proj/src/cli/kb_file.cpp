#include "lri/cli/kb_file.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "lri/parser.hpp"

namespace lri::cli {

namespace {

std::pair<std::size_t, std::size_t> locate(std::string_view text,
                                           std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

// Converts parser errors into located InputErrors.
template <typename F>
auto located(std::string_view text, std::size_t fallback_offset, F&& body) {
  try {
    return body();
  } catch (const SyntaxError& e) {
    auto [line, col] = locate(text, e.offset());
    throw InputError(std::to_string(line) + ":" + std::to_string(col) + ": " +
                         e.what(),
                     line, col);
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    auto [line, col] = locate(text, fallback_offset);
    throw InputError(std::to_string(line) + ":" + std::to_string(col) + ": " +
                         e.what(),
                     line, col);
  }
}

enum class Section { None, Constants, Axioms, Hypotheses, Queries };

bool at_header(const FormulaParser& p) {
  return p.peek().kind == TokenKind::Ident &&
         p.peek(1).kind == TokenKind::Colon;
}

void append_ground(std::vector<Formula>& out, const Formula& schema,
                   const Signature& sig) {
  for (auto& g : ground(schema, sig)) out.push_back(std::move(g));
}

}  // namespace

DomainOfRules KnowledgeBase::domain(const SolverConfig& cfg) const {
  return DomainOfRules(axioms, hypotheses, cfg);
}

KnowledgeBase parse_knowledge_base(std::string_view text) {
  KnowledgeBase kb;
  std::vector<Formula> axiom_schemas, hypothesis_schemas, query_schemas;
  std::vector<std::size_t> axiom_at, hypothesis_at, query_at;

  located(text, 0, [&] {
    FormulaParser parser(tokenize(text), Signature{});
    Section section = Section::None;
    bool saw_constants = false;
    while (!parser.at_end()) {
      if (at_header(parser)) {
        const Token& name = parser.next();
        parser.next();
        if (name.text == "constants") {
          if (saw_constants) {
            throw InputError("constants declared twice");
          }
          saw_constants = true;
          section = Section::Constants;
        } else if (name.text == "axioms") {
          section = Section::Axioms;
        } else if (name.text == "hypotheses") {
          section = Section::Hypotheses;
        } else if (name.text == "queries") {
          section = Section::Queries;
        } else {
          throw SyntaxError(name.offset,
                            {"'constants:'", "'axioms:'", "'hypotheses:'",
                             "'queries:'"},
                            "'" + name.text + ":'");
        }
        if (section == Section::Constants) {
          Signature sig = parser.signature();
          while (parser.at(TokenKind::Ident) && !at_header(parser)) {
            const Token& c = parser.next();
            if (std::isupper(static_cast<unsigned char>(c.text[0]))) {
              throw SyntaxError(c.offset, {"lowercase constant name"},
                                "'" + c.text + "'");
            }
            sig.declare_constant(c.text);
            if (parser.at(TokenKind::Comma)) parser.next();
          }
          if (parser.at(TokenKind::Dot)) parser.next();
          if (!parser.at_end() && !at_header(parser)) {
            parser.fail({"constant name", "section header"});
          }
          sig.close_constants();
          kb.declared_constants = true;
          // Rebuild the parser state around the closed constant domain.
          std::vector<Token> rest;
          for (std::size_t i = 0;; ++i) {
            rest.push_back(parser.peek(i));
            if (rest.back().kind == TokenKind::End) break;
          }
          parser = FormulaParser(std::move(rest), sig);
        }
        continue;
      }
      if (section == Section::None || section == Section::Constants) {
        parser.fail({"section header"});
      }
      const std::size_t at = parser.peek().offset;
      Formula f = parser.parse_formula();
      parser.expect(TokenKind::Dot);
      parser.declare(f);
      switch (section) {
        case Section::Axioms:
          axiom_schemas.push_back(f);
          axiom_at.push_back(at);
          break;
        case Section::Hypotheses:
          hypothesis_schemas.push_back(f);
          hypothesis_at.push_back(at);
          break;
        default:
          query_schemas.push_back(f);
          query_at.push_back(at);
          break;
      }
    }
    kb.signature = parser.signature();
    return 0;
  });

  auto ground_all = [&](const std::vector<Formula>& schemas,
                        const std::vector<std::size_t>& offsets,
                        std::vector<Formula>& out) {
    for (std::size_t i = 0; i < schemas.size(); ++i) {
      located(text, offsets[i], [&] {
        append_ground(out, schemas[i], kb.signature);
        return 0;
      });
    }
  };
  ground_all(axiom_schemas, axiom_at, kb.axioms);
  ground_all(hypothesis_schemas, hypothesis_at, kb.hypotheses);
  ground_all(query_schemas, query_at, kb.queries);
  return kb;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

KnowledgeBase load_knowledge_base(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_knowledge_base(text);
  } catch (const InputError& e) {
    throw InputError(path.string() + ":" + e.what(), e.line(), e.column());
  }
}

std::string format_knowledge_base(const KnowledgeBase& kb) {
  std::ostringstream os;
  if (kb.declared_constants || !kb.signature.constants().empty()) {
    os << "constants:";
    for (const auto& c : kb.signature.constants()) os << ' ' << c;
    os << '\n';
  }
  auto section = [&](const char* name, const std::vector<Formula>& fs) {
    os << name << ":\n";
    for (const auto& f : fs) os << "  " << to_string(f) << ".\n";
  };
  section("axioms", kb.axioms);
  section("hypotheses", kb.hypotheses);
  if (!kb.queries.empty()) section("queries", kb.queries);
  return os.str();
}

void save_knowledge_base(const KnowledgeBase& kb,
                         const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << format_knowledge_base(kb);
  if (!out) throw InputError("write failed: " + path.string());
}

std::vector<Formula> parse_ground(const KnowledgeBase& kb,
                                  std::string_view text) {
  return located(text, 0, [&] {
    FormulaParser parser(tokenize(text), kb.signature);
    std::vector<Formula> schemas;
    while (!parser.at_end()) {
      Formula f = parser.parse_formula();
      if (parser.at(TokenKind::Dot)) {
        parser.next();
      } else if (!parser.at_end()) {
        parser.fail({"'.'", "end of input"});
      }
      parser.declare(f);
      schemas.push_back(std::move(f));
    }
    if (schemas.empty()) parser.fail({"formula"});
    // Constants first met here are fresh symbols, not domain members.
    Signature sig = kb.signature;
    if (!sig.constants_closed()) {
      for (const auto& s : schemas) {
        if (variables_of(s).empty()) sig.declare_symbols_of(s);
      }
    }
    std::vector<Formula> out;
    for (const auto& s : schemas) append_ground(out, s, sig);
    return out;
  });
}

std::vector<Formula> load_formula_file(const KnowledgeBase& kb,
                                       const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_ground(kb, text);
  } catch (const InputError& e) {
    throw InputError(path.string() + ":" + e.what(), e.line(), e.column());
  }
}

}  // namespace lri::cli
