#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lri/domain.hpp"
#include "lri/error.hpp"
#include "lri/formula.hpp"

namespace lri::cli {

/// Malformed input text, located by line and column.
class InputError : public Error {
 public:
  InputError(std::string message, std::size_t line = 0, std::size_t column = 0)
      : Error(std::move(message)), line_(line), column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Contents of a sectioned knowledge-base file, grounded.
///
///     constants: a b c        # optional; closes the constant domain
///     axioms:
///       holds(a).
///     hypotheses:
///       holds(X) -> legal(X).
///     queries:
///       legal(a).
///
/// Hypothesis order in the file (after grounding, first variable slowest)
/// is the hypothesis index order.
struct KnowledgeBase {
  Signature signature;
  bool declared_constants = false;
  std::vector<Formula> axioms;
  std::vector<Formula> hypotheses;
  std::vector<Formula> queries;

  DomainOfRules domain(const SolverConfig& cfg = {}) const;
};

KnowledgeBase parse_knowledge_base(std::string_view text);
KnowledgeBase load_knowledge_base(const std::filesystem::path& path);

std::string format_knowledge_base(const KnowledgeBase& kb);
void save_knowledge_base(const KnowledgeBase& kb,
                         const std::filesystem::path& path);

/// Parses formula statements against the KB's signature and grounds them
/// over its constants. A trailing '.' is optional on the last statement.
std::vector<Formula> parse_ground(const KnowledgeBase& kb, std::string_view text);

/// Reads a probe file: '.'-terminated statements, '#' comments.
std::vector<Formula> load_formula_file(const KnowledgeBase& kb,
                                       const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);

}  // namespace lri::cli
