#include "lri/cli/report.hpp"

#include <sstream>

namespace lri::cli {

Json make_report(std::string_view command, Json input) {
  Json r = Json::object();
  r["command"] = std::string(command);
  r["input"] = std::move(input);
  r["verdict"] = nullptr;
  r["positions"] = Json::array();
  r["justifications"] = Json::array();
  r["contexts"] = Json::array();
  r["diagnostics"] = Json::object();
  return r;
}

Json formula_list(std::span<const Formula> fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(to_string(f));
  return out;
}

Json indices(const IndexSet& s) {
  Json out = Json::array();
  for (std::size_t i : s) out.push_back(i);
  return out;
}

Json position_json(const Position& p) {
  Json out = Json::object();
  out["hypotheses"] = indices(p.chosen());
  Json formulas = Json::array();
  for (std::size_t i : p.chosen()) {
    formulas.push_back(to_string(p.domain().hypothesis(i)));
  }
  out["formulas"] = std::move(formulas);
  return out;
}

Json justification_json(const Justification& j) {
  Json out = position_json(j.position());
  out["conclusion"] = to_string(j.conclusion());
  return out;
}

Json context_json(const Context& c) {
  Json out = Json::object();
  Json pairs = Json::array();
  for (const auto& j : c.pairs) pairs.push_back(justification_json(j));
  out["pairs"] = std::move(pairs);
  out["hypotheses"] = indices(c.hypotheses());
  return out;
}

std::string render(const Json& report) { return report.dump(2) + "\n"; }

namespace {

std::string brief(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string hypothesis_line(const Json& p) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < p["hypotheses"].size(); ++i) {
    if (i > 0) os << ", ";
    os << "[" << p["hypotheses"][i].get<std::size_t>() << "] "
       << p["formulas"][i].get<std::string>();
  }
  os << "}";
  return os.str();
}

}  // namespace

std::string render_human(const Json& report) {
  std::ostringstream os;
  os << report["command"].get<std::string>();
  if (!report["input"].empty()) os << " " << report["input"].dump();
  os << "\n";
  const Json& verdict = report["verdict"];
  if (verdict.is_object()) {
    for (const auto& [key, value] : verdict.items()) {
      os << "  " << key << ": " << brief(value) << "\n";
    }
  } else if (!verdict.is_null()) {
    os << "  verdict: " << brief(verdict) << "\n";
  }
  std::size_t n = 0;
  for (const auto& p : report["positions"]) {
    os << "  position " << n++ << ": " << hypothesis_line(p) << "\n";
  }
  for (const auto& j : report["justifications"]) {
    os << "  justification of " << j["conclusion"].get<std::string>() << ": "
       << hypothesis_line(j) << "\n";
  }
  n = 0;
  for (const auto& c : report["contexts"]) {
    os << "  context " << n++ << ":\n";
    for (const auto& j : c["pairs"]) {
      os << "    " << j["conclusion"].get<std::string>() << " <= "
         << hypothesis_line(j) << "\n";
    }
  }
  for (const auto& [key, value] : report["diagnostics"].items()) {
    os << "  " << key << ": " << brief(value) << "\n";
  }
  return os.str();
}

}  // namespace lri::cli
