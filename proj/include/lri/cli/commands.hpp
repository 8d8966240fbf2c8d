#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lri/cli/kb_file.hpp"
#include "lri/cli/report.hpp"
#include "lri/domain.hpp"
#include "lri/sat.hpp"

namespace lri::cli {

struct Options {
  bool pretty = false;
  bool debug = false;
  std::optional<std::string> dot_path;
  std::optional<std::string> probe_path;
  std::uint64_t max_decisions = kDefaultMaxDecisions;
};

/// A query text that grounds to more than one formula.
class MultipleInstances : public Error {
 public:
  using Error::Error;
};

/// Exit status for an exception escaping a command.
int exit_code_for(const std::exception& e);
std::string error_kind(const std::exception& e);

/// A knowledge base together with the domain built from it.
class Session {
 public:
  Session(KnowledgeBase kb, const Options& options);

  const KnowledgeBase& kb() const noexcept { return kb_; }
  const DomainOfRules& domain() const noexcept { return domain_; }
  const Options& options() const noexcept { return options_; }

 private:
  KnowledgeBase kb_;
  Options options_;
  DomainOfRules domain_;
};

Json cmd_check(const Session& s);
Json cmd_positions(const Session& s);
Json cmd_infer(const Session& s, const std::string& formula);
Json cmd_justify(const Session& s, const std::string& formula);
/// Empty `queries` falls back to the file's queries section.
Json cmd_context(const Session& s, const std::vector<std::string>& queries);
Json cmd_variety(const Session& s);
Json cmd_compat(const Session& s, const std::vector<std::string>& indices);
Json cmd_witness(std::size_t n, const Options& options);
Json cmd_partition(const Session& s);

/// Error report with the schema fields intact.
Json error_report(const std::string& command, const std::exception& e);

/// Full command-line entry point. Returns the process exit status.
int run(int argc, const char* const* argv, std::istream& in, std::ostream& out,
        std::ostream& err);

}  // namespace lri::cli
