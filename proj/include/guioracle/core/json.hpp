#pragma once

#include <nlohmann/json_fwd.hpp>

#include "guioracle/core/model.hpp"

namespace guioracle::core {

nlohmann::json to_json(const WidgetSelector& selector);
WidgetSelector selector_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Event& event);
Event event_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Provenance& provenance);
Provenance provenance_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GuiState& state);
GuiState state_from_json(const nlohmann::json& j);

/// Input sequence file: {app_id, provenance, steps:[{event}]}. Execution
/// results are attached at runtime and never stored here.
nlohmann::json sequence_file_json(const TestSequence& seq);
TestSequence sequence_from_file_json(const nlohmann::json& j);

/// Full-fidelity encoding including per-step states, used by audit records.
nlohmann::json to_json(const TestSequence& seq);
TestSequence sequence_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OracleVerdict& verdict);
OracleVerdict verdict_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BugRecord& record);
BugRecord record_from_json(const nlohmann::json& j);

std::vector<BugRecord> manifest_from_json(const nlohmann::json& j);
nlohmann::json manifest_to_json(const std::vector<BugRecord>& records);

}  // namespace guioracle::core
