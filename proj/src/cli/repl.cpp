#include "lri/cli/repl.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <ostream>

namespace lri::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Deletion-based shrinking to a minimal inconsistent subset.
std::vector<Formula> conflict_set(std::vector<Formula> fs, const SolverConfig& cfg) {
  for (std::size_t i = 0; i < fs.size();) {
    std::vector<Formula> without = fs;
    without.erase(without.begin() + static_cast<std::ptrdiff_t>(i));
    if (!is_consistent(without, cfg)) {
      fs = std::move(without);
    } else {
      ++i;
    }
  }
  return fs;
}

constexpr const char* kHelp =
    "commands:\n"
    "  assert-ax <f>.        add an axiom\n"
    "  assert-hyp <f>.       add a hypothesis\n"
    "  retract-hyp <index>   remove a hypothesis\n"
    "  infer <f>.            reasonable inference\n"
    "  justify <f>.          minimal justifications\n"
    "  context <f1>. <f2>.   maximal consistent contexts\n"
    "  positions             maximal positions\n"
    "  check                 consistency summary\n"
    "  save <path>           write the knowledge base\n"
    "  quit\n";

}  // namespace

Repl::Repl(KnowledgeBase kb, Options options, std::ostream& out)
    : options_(std::move(options)), out_(out) {
  session_.emplace(std::move(kb), options_);
}

void Repl::rebuild(KnowledgeBase kb) {
  Session next(std::move(kb), options_);
  session_.reset();
  session_.emplace(std::move(next));
}

void Repl::echo_hypotheses() {
  const auto& hyps = session_->kb().hypotheses;
  out_ << "hypotheses:\n";
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    out_ << "  [" << i << "] " << to_string(hyps[i]) << "\n";
  }
}

void Repl::assert_axiom(std::string_view text) {
  KnowledgeBase kb = session_->kb();
  for (auto& f : parse_ground(kb, text)) {
    kb.signature.declare_symbols_of(f);
    kb.axioms.push_back(std::move(f));
  }
  SolverConfig cfg;
  cfg.max_decisions = options_.max_decisions;
  if (!is_consistent(kb.axioms, cfg)) {
    const auto conflict = conflict_set(kb.axioms, cfg);
    out_ << "refused: axioms would become inconsistent; conflict: {";
    for (std::size_t i = 0; i < conflict.size(); ++i) {
      out_ << (i > 0 ? ", " : "") << to_string(conflict[i]);
    }
    out_ << "}\n";
    return;
  }
  rebuild(std::move(kb));
  out_ << "axioms: " << session_->domain().axioms().size() << "\n";
  echo_hypotheses();
}

void Repl::assert_hypothesis(std::string_view text) {
  KnowledgeBase kb = session_->kb();
  for (auto& f : parse_ground(kb, text)) {
    kb.signature.declare_symbols_of(f);
    kb.hypotheses.push_back(std::move(f));
  }
  rebuild(std::move(kb));
  echo_hypotheses();
}

void Repl::retract_hypothesis(std::string_view text) {
  std::size_t index = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  KnowledgeBase kb = session_->kb();
  if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size() ||
      index >= kb.hypotheses.size()) {
    throw InvalidIndex("no hypothesis with index '" + std::string(text) + "'");
  }
  kb.hypotheses.erase(kb.hypotheses.begin() + static_cast<std::ptrdiff_t>(index));
  rebuild(std::move(kb));
  echo_hypotheses();
}

bool Repl::execute(std::string_view line) {
  line = trim(line);
  if (const auto hash = line.find('#'); hash != std::string_view::npos) {
    line = trim(line.substr(0, hash));
  }
  if (line.empty()) return true;
  const auto space = line.find_first_of(" \t");
  const std::string command(line.substr(0, space));
  const std::string_view rest =
      space == std::string_view::npos ? std::string_view{} : trim(line.substr(space));
  try {
    if (command == "quit" || command == "exit") return false;
    if (command == "help") {
      out_ << kHelp;
    } else if (command == "assert-ax") {
      assert_axiom(rest);
    } else if (command == "assert-hyp") {
      assert_hypothesis(rest);
    } else if (command == "retract-hyp") {
      retract_hypothesis(rest);
    } else if (command == "infer") {
      out_ << render(cmd_infer(*session_, std::string(rest)));
    } else if (command == "justify") {
      out_ << render(cmd_justify(*session_, std::string(rest)));
    } else if (command == "context") {
      std::vector<std::string> queries;
      if (!rest.empty()) queries.emplace_back(rest);
      out_ << render(cmd_context(*session_, queries));
    } else if (command == "positions") {
      out_ << render(cmd_positions(*session_));
    } else if (command == "check") {
      out_ << render(cmd_check(*session_));
    } else if (command == "save") {
      if (rest.empty()) throw InputError("save needs a path");
      save_knowledge_base(session_->kb(), std::string(rest));
      out_ << "saved " << rest << "\n";
    } else {
      out_ << "error: unknown command '" << command << "' (try help)\n";
    }
  } catch (const std::exception& e) {
    out_ << "error: " << e.what() << "\n";
  }
  return true;
}

void Repl::run(std::istream& in, bool prompt) {
  std::string line;
  while (true) {
    if (prompt) out_ << "lri> " << std::flush;
    if (!std::getline(in, line)) break;
    if (!execute(line)) break;
  }
}

}  // namespace lri::cli
