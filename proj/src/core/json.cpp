#include "guioracle/core/json.hpp"

#include <nlohmann/json.hpp>
#include <stdexcept>

namespace guioracle::core {

using nlohmann::json;

json to_json(const WidgetSelector& selector) {
    switch (selector.kind) {
        case WidgetSelector::Kind::ResourceId: return {{"resource_id", selector.value}};
        case WidgetSelector::Kind::ContentDesc: return {{"content_desc", selector.value}};
        case WidgetSelector::Kind::Text: return {{"text", selector.value}};
        case WidgetSelector::Kind::Bounds:
            return {{"bounds", {selector.bounds.left, selector.bounds.top,
                                selector.bounds.right, selector.bounds.bottom}}};
    }
    throw std::logic_error("unreachable selector kind");
}

WidgetSelector selector_from_json(const json& j) {
    if (j.size() != 1) throw std::invalid_argument("selector must have exactly one variant");
    if (j.contains("resource_id")) return WidgetSelector::by_resource_id(j.at("resource_id"));
    if (j.contains("content_desc")) return WidgetSelector::by_content_desc(j.at("content_desc"));
    if (j.contains("text")) return WidgetSelector::by_text(j.at("text"));
    if (j.contains("bounds")) {
        const auto& b = j.at("bounds");
        return WidgetSelector::by_bounds(Rect{b.at(0), b.at(1), b.at(2), b.at(3)});
    }
    throw std::invalid_argument("unknown selector variant");
}

json to_json(const Event& event) {
    json j{{"kind", to_string(event.kind)}};
    if (event.target) j["target"] = to_json(*event.target);
    if (event.input_text) j["input_text"] = *event.input_text;
    if (event.gesture) {
        j["gesture"] = {{"start", {event.gesture->start.x, event.gesture->start.y}},
                        {"end", {event.gesture->end.x, event.gesture->end.y}}};
    }
    return j;
}

Event event_from_json(const json& j) {
    Event e;
    auto kind = event_kind_from_string(j.at("kind"));
    if (!kind) throw std::invalid_argument("unknown event kind: " + j.at("kind").get<std::string>());
    e.kind = *kind;
    if (j.contains("target")) e.target = selector_from_json(j.at("target"));
    if (j.contains("input_text")) e.input_text = j.at("input_text").get<std::string>();
    if (j.contains("gesture")) {
        const auto& g = j.at("gesture");
        e.gesture = Gesture{{g.at("start").at(0), g.at("start").at(1)},
                            {g.at("end").at(0), g.at("end").at(1)}};
    }
    return e;
}

json to_json(const Provenance& provenance) {
    if (provenance.kind == Provenance::Kind::Manual) return {{"kind", "manual"}};
    return {{"kind", "generated"}, {"seed", provenance.seed}};
}

Provenance provenance_from_json(const json& j) {
    const std::string kind = j.at("kind");
    if (kind == "manual") return Provenance::manual();
    if (kind == "generated") return Provenance::generated(j.at("seed").get<std::uint64_t>());
    throw std::invalid_argument("unknown provenance kind: " + kind);
}

namespace {

json labels_to_json(const std::vector<Label>& labels) {
    json arr = json::array();
    for (const Label& l : labels) arr.push_back(l.rendered);
    return arr;
}

std::vector<Label> labels_from_json(const json& j) {
    std::vector<Label> labels;
    for (const auto& item : j) labels.push_back(Label{item.get<std::string>()});
    return labels;
}

}  // namespace

json to_json(const GuiState& state) {
    json j{{"clickable", labels_to_json(state.clickable)},
           {"long_clickable", labels_to_json(state.long_clickable)},
           {"checkable", labels_to_json(state.checkable)},
           {"other_texts", labels_to_json(state.other_texts)},
           {"page_fingerprint", state.page_fingerprint}};
    if (state.screenshot) j["screenshot"] = state.screenshot->string();
    return j;
}

GuiState state_from_json(const json& j) {
    GuiState s;
    s.clickable = labels_from_json(j.at("clickable"));
    s.long_clickable = labels_from_json(j.at("long_clickable"));
    s.checkable = labels_from_json(j.at("checkable"));
    s.other_texts = labels_from_json(j.at("other_texts"));
    s.page_fingerprint = j.at("page_fingerprint").get<std::string>();
    if (j.contains("screenshot")) s.screenshot = std::filesystem::path(j.at("screenshot").get<std::string>());
    return s;
}

json sequence_file_json(const TestSequence& seq) {
    json steps = json::array();
    for (const Step& step : seq.steps) steps.push_back({{"event", to_json(step.event)}});
    return {{"app_id", seq.app_id}, {"provenance", to_json(seq.provenance)}, {"steps", steps}};
}

TestSequence sequence_from_file_json(const json& j) {
    TestSequence seq;
    seq.app_id = j.at("app_id").get<std::string>();
    seq.provenance = provenance_from_json(j.at("provenance"));
    for (const auto& step : j.at("steps")) {
        seq.steps.push_back(make_step(event_from_json(step.at("event")), GuiState{}));
    }
    return seq;
}

json to_json(const TestSequence& seq) {
    json steps = json::array();
    for (const Step& step : seq.steps) {
        steps.push_back({{"action", step.action_rendering},
                         {"event", to_json(step.event)},
                         {"result", to_json(step.result)}});
    }
    return {{"app_id", seq.app_id}, {"provenance", to_json(seq.provenance)}, {"steps", steps}};
}

TestSequence sequence_from_json(const json& j) {
    TestSequence seq;
    seq.app_id = j.at("app_id").get<std::string>();
    seq.provenance = provenance_from_json(j.at("provenance"));
    for (const auto& step : j.at("steps")) {
        Step s = make_step(event_from_json(step.at("event")), state_from_json(step.at("result")));
        seq.steps.push_back(std::move(s));
    }
    return seq;
}

json to_json(const OracleVerdict& verdict) {
    json j{{"bug", verdict.bug},
           {"raw_response", verdict.raw_response},
           {"prompt_kind", to_string(verdict.prompt_kind)},
           {"query_index", verdict.query_index},
           {"latency_ms", verdict.latency_ms}};
    if (verdict.reason) j["reason"] = *verdict.reason;
    return j;
}

OracleVerdict verdict_from_json(const json& j) {
    OracleVerdict v;
    v.bug = j.at("bug").get<bool>();
    v.raw_response = j.at("raw_response").get<std::string>();
    v.prompt_kind = prompt_kind_from_string(j.at("prompt_kind")).value();
    v.query_index = j.at("query_index").get<int>();
    v.latency_ms = j.value("latency_ms", 0.0);
    if (j.contains("reason")) v.reason = j.at("reason").get<std::string>();
    return v;
}

json to_json(const BugRecord& record) {
    return {{"id", record.id},
            {"category", to_string(record.category)},
            {"tc_count", record.tc_count},
            {"sequence_ref", record.sequence_ref.string()},
            {"expected_keywords", record.expected_keywords},
            {"notes", record.notes}};
}

BugRecord record_from_json(const json& j) {
    BugRecord r;
    r.id = j.at("id").get<std::string>();
    auto cat = bug_category_from_string(j.at("category"));
    if (!cat) throw std::invalid_argument("unknown bug category: " + j.at("category").get<std::string>());
    r.category = *cat;
    r.tc_count = j.at("tc_count").get<int>();
    r.sequence_ref = std::filesystem::path(j.at("sequence_ref").get<std::string>());
    if (j.contains("expected_keywords")) {
        r.expected_keywords =
            j.at("expected_keywords").get<std::vector<std::vector<std::string>>>();
    }
    r.notes = j.value("notes", "");
    return r;
}

std::vector<BugRecord> manifest_from_json(const json& j) {
    std::vector<BugRecord> records;
    for (const auto& item : j) records.push_back(record_from_json(item));
    return records;
}

json manifest_to_json(const std::vector<BugRecord>& records) {
    json arr = json::array();
    for (const BugRecord& r : records) arr.push_back(to_json(r));
    return arr;
}

}  // namespace guioracle::core
