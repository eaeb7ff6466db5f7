#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "guioracle/core/model.hpp"

namespace guioracle::layout {

/// A capture that cannot be parsed; the step must be re-captured.
class MalformedDump : public std::runtime_error {
public:
    explicit MalformedDump(const std::string& what) : std::runtime_error(what) {}
};

struct ParsedDump {
    core::WidgetNode root;
    std::string package;  // first non-empty package attribute, document order
};

/// Parses a UIAutomator hierarchy dump. Accepts an optional XML declaration
/// and an optional <hierarchy> wrapper around the single root <node>.
/// Missing attributes default to empty string / false.
ParsedDump parse_document(std::string_view dump);
core::WidgetNode parse_hierarchy(std::string_view dump);

/// Stable content hash identifying a page: multiset of
/// (class_name, resource_id, rendered label) over all nodes.
std::string page_fingerprint(const core::WidgetNode& root);

/// Rendered-character budget for one state; other_texts, then
/// long_clickable, are tail-dropped past it with a visible marker.
inline constexpr std::size_t kStateCharBudget = 2000;

/// Builds the execution result of a captured page: pre-order traversal,
/// each node's label appended to every list whose flag is set, label-bearing
/// non-executable nodes go to other_texts.
core::GuiState extract_state(const core::WidgetNode& root,
                             std::optional<std::filesystem::path> screenshot = std::nullopt);

}  // namespace guioracle::layout
