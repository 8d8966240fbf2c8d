#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "lri/domain.hpp"
#include "lri/variety.hpp"

namespace lri::cli {

using Json = nlohmann::json;

/// Empty report with every schema field present.
Json make_report(std::string_view command, Json input);

Json formula_list(std::span<const Formula> fs);
Json indices(const IndexSet& s);
Json position_json(const Position& p);
Json justification_json(const Justification& j);
Json context_json(const Context& c);

/// Two-space indented JSON plus a trailing newline. Keys are sorted, so
/// equal reports render to identical bytes.
std::string render(const Json& report);

/// Plain-text rendering of a report for people.
std::string render_human(const Json& report);

}  // namespace lri::cli
