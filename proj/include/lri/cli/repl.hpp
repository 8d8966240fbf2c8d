#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "lri/cli/commands.hpp"

namespace lri::cli {

/// Line-oriented interactive session over a mutable knowledge base. Every
/// mutation rebuilds the domain and echoes the hypothesis indices. User
/// errors produce an "error:" line and never end the session.
class Repl {
 public:
  Repl(KnowledgeBase kb, Options options, std::ostream& out);

  /// Runs one command line; returns false after `quit`.
  bool execute(std::string_view line);
  /// Reads lines until end of input or `quit`.
  void run(std::istream& in, bool prompt = false);

  const KnowledgeBase& kb() const noexcept { return session_->kb(); }

 private:
  void rebuild(KnowledgeBase kb);
  void echo_hypotheses();
  void assert_axiom(std::string_view text);
  void assert_hypothesis(std::string_view text);
  void retract_hypothesis(std::string_view text);

  Options options_;
  std::ostream& out_;
  std::optional<Session> session_;
};

}  // namespace lri::cli
